#include <catch2/catch_amalgamated.hpp>

#include "chromahom/chromatic_oracle.hpp"
#include "chromahom/st_complex.hpp"
#include "test_support.hpp"

using namespace chromahom;
namespace ts = testsupport;

namespace {

long long total_states(const std::map<std::pair<int, int>, std::vector<EnhancedState>>& states,
                       int i) {
    long long total = 0;
    for (const auto& [key, list] : states)
        if (key.first == i) total += static_cast<long long>(list.size());
    return total;
}

}  // namespace

TEST_CASE("state counts for the single edge and the triangle") {
    auto k2_states = enumerate_states(ts::k2(), 2);
    REQUIRE(total_states(k2_states, 0) == 4);
    REQUIRE(total_states(k2_states, 1) == 2);

    auto tri = enumerate_states(ts::triangle(), 2);
    REQUIRE(total_states(tri, 0) == 8);
    REQUIRE(total_states(tri, 1) == 12);
    REQUIRE(total_states(tri, 2) == 6);
    REQUIRE(total_states(tri, 3) == 2);

    // NBC restriction drops {2,3} and {1,2,3}: six subsets remain.
    auto tri_nbc = enumerate_states(ts::triangle(), 2, true);
    std::set<std::uint64_t> masks;
    long long count = 0;
    for (const auto& [key, list] : tri_nbc)
        for (const EnhancedState& s : list) {
            masks.insert(s.mask);
            ++count;
        }
    REQUIRE(masks.size() == 6);
    REQUIRE(count == 8 + 3 * 4 + 2 * 2);  // 2^c summed over the six NBC subsets
}

TEST_CASE("state enumeration respects the guard") {
    REQUIRE_THROWS_AS(enumerate_states(ts::fig10(), 2, false, 4), GuardError);
    REQUIRE_NOTHROW(enumerate_states(ts::fig10(), 2, false, 4, /*force=*/true));
}

TEST_CASE("oracle differential on worked examples") {
    OrderedGraph k2 = ts::k2();
    EnhancedState s;
    s.mask = 0;
    s.coloring = {1, 0};
    auto terms = oracle_differential(k2, 2, s);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].second == 1);
    REQUIRE(terms[0].first.mask == 1);
    REQUIRE(terms[0].first.coloring == std::vector<std::uint8_t>{1});

    // Identity case: closing a cycle keeps the coloring, sign (-1)^2.
    OrderedGraph tri = ts::triangle();
    EnhancedState t;
    t.mask = EdgeSet::of({1, 2}).bits;
    t.coloring = {0};
    auto closing = oracle_differential(tri, 2, t);
    REQUIRE(closing.size() == 1);
    REQUIRE(closing[0].second == 1);
    REQUIRE(closing[0].first.coloring == std::vector<std::uint8_t>{0});

    // Annihilation: merging x with x dies at m = 2.
    EnhancedState all_x;
    all_x.mask = 0;
    all_x.coloring = {1, 1, 1};
    REQUIRE(oracle_differential(tri, 2, all_x).empty());
}

TEST_CASE("oracle complexes satisfy d^2 = 0") {
    for (const OrderedGraph& g : {ts::triangle(), ts::path_with_triangle(), ts::bowtie(), ts::cycle_n(5)})
        for (int m : {2, 3, 4}) {
            REQUIRE_NOTHROW(check_d_squared(assemble_oracle(g, m, false)));
            REQUIRE_NOTHROW(check_d_squared(assemble_oracle(g, m, true)));
        }
}

TEST_CASE("tree graphs concentrate in grading zero with rank m(m-1)^(v-1)") {
    for (const OrderedGraph& g : {ts::k2(), ts::path_n(3), ts::tree6()})
        for (int m : {2, 3, 4}) {
            HomologyTable table = homology(assemble_oracle(g, m, false));
            long long expected = m;
            for (int k = 1; k < g.vertex_count(); ++k) expected *= m - 1;
            auto by_i = table.by_grading();
            REQUIRE(by_i.size() == 1);
            REQUIRE(by_i.at(0).free_rank == expected);
            REQUIRE(by_i.at(0).torsion.empty());
        }
}

TEST_CASE("triangle oracle homology matches the spanning-tree model") {
    HomologyTable oracle = homology(assemble_oracle(ts::triangle(), 2, false));
    REQUIRE(oracle.at(0, 3).free_rank == 1);
    REQUIRE(oracle.at(1, 1).free_rank == 1);
    REQUIRE(oracle.at(1, 2).torsion == std::vector<long long>{2});
    HomologyTable st = homology(assemble_complex(ts::triangle(), 2, false));
    REQUIRE(oracle == st);
}

TEST_CASE("full and NBC-restricted oracles agree per (i, j)") {
    for (const OrderedGraph& g : {ts::triangle(), ts::path_with_triangle(), ts::cycle_n(4), ts::bowtie()})
        for (int m : {2, 3}) {
            HomologyTable full = homology(assemble_oracle(g, m, false));
            HomologyTable nbc = homology(assemble_oracle(g, m, true));
            REQUIRE(full == nbc);
        }
}

TEST_CASE("chain-level Euler characteristic is the chromatic polynomial") {
    for (const OrderedGraph& g : {ts::triangle(), ts::cycle_n(4), ts::path_with_triangle(), ts::bowtie()}) {
        IntPolynomial p = chromatic_poly_deletion_contraction(g);
        for (int m : {2, 3, 4}) {
            IntPolynomial chi = graded_euler_characteristic(assemble_oracle(g, m, false));
            REQUIRE(chi.eval(1) == p.eval(m));
        }
        // Bigraded refinement at m = 2: chi_q = P(G, 1+q).
        IntPolynomial chi_q = graded_euler_characteristic(assemble_oracle(g, 2, false));
        IntPolynomial one_plus_q;
        one_plus_q.coefficients = {1, 1};
        REQUIRE(chi_q == p.compose(one_plus_q));
    }
}

TEST_CASE("all three models agree on a mixed sample") {
    for (const OrderedGraph& g : {ts::triangle(), ts::cycle_n(5), ts::path_with_triangle(), ts::complete(4)})
        for (int m : {2, 3}) {
            HomologyTable st = homology(assemble_complex(g, m, false));
            HomologyTable full = homology(assemble_oracle(g, m, false));
            HomologyTable nbc = homology(assemble_oracle(g, m, true));
            CAPTURE(g.name(), m);
            REQUIRE(st == full);
            REQUIRE(full == nbc);
        }
}

TEST_CASE("enhanced state ids are deterministic") {
    EnhancedState s;
    s.mask = EdgeSet::of({1, 3}).bits;
    s.coloring = {0, 2};
    REQUIRE(s.id() == "H{1,3}^(0,2)");
    REQUIRE(s.i() == 2);
    REQUIRE(s.j() == 2);
}
