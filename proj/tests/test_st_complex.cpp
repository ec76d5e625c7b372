#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "chromahom/st_complex.hpp"
#include "test_support.hpp"

using namespace chromahom;
namespace ts = testsupport;

namespace {

// Signed-tree shorthand: +k / -k is the plus/minus generator of the tree
// with lex_rank k (m = 2). Plus = root exponent 0, minus = root exponent 1.
struct SignedTree {
    int rank;
    bool plus;
    friend bool operator<(const SignedTree& a, const SignedTree& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.plus < b.plus;
    }
    friend bool operator==(const SignedTree& a, const SignedTree& b) {
        return a.rank == b.rank && a.plus == b.plus;
    }
};

SignedTree plus(int rank) { return {rank, true}; }
SignedTree minus(int rank) { return {rank, false}; }

SignedTree classify(const STGenerator& gen) { return {gen.tree, gen.exponents[0] == 0}; }

// Generator placement of the two-pentagon fixture (28 generators, keyed by
// 0-based lex rank).
const std::map<std::pair<int, int>, std::vector<SignedTree>> kPlacement = {
    {{0, 7}, {minus(0)}},
    {{0, 6}, {plus(0)}},
    {{1, 6}, {minus(1), minus(2)}},
    {{1, 5}, {plus(1), plus(2)}},
    {{2, 5}, {minus(3), minus(4), minus(5)}},
    {{2, 4}, {plus(3), plus(4), plus(5)}},
    {{3, 4}, {minus(6), minus(7), minus(8), minus(12)}},
    {{3, 3}, {plus(6), plus(7), plus(8), plus(12)}},
    {{4, 3}, {minus(9), minus(10), minus(13)}},
    {{4, 2}, {plus(9), plus(10), plus(13)}},
    {{5, 2}, {minus(11)}},
    {{5, 1}, {plus(11)}},
};

// Incidence table: image of every plus generator under the m=2 differential.
const std::map<int, std::vector<std::pair<int, long long>>> kIncidences = {
    {0, {{1, -2}}},
    {1, {}},
    {2, {{5, 2}}},
    {3, {{6, 2}, {12, -2}}},
    {4, {{7, 2}, {12, 2}}},
    {5, {}},
    {6, {{13, 2}}},
    {7, {{13, -2}}},
    {8, {{10, 2}}},
    {9, {{11, 2}}},
    {10, {}},
    {11, {}},
    {12, {{13, 2}}},
    {13, {}},
};

}  // namespace

TEST_CASE("generators of the triangle") {
    STContext ctx(ts::triangle());
    std::vector<STGenerator> m2 = ctx.generators(2);
    REQUIRE(m2.size() == 4);
    REQUIRE(m2[0].id() == "T0^(0,1,1)");
    REQUIRE(m2[0].i == 0);
    REQUIRE(m2[0].j == 2);
    REQUIRE(m2[1].id() == "T0^(1,1,1)");
    REQUIRE(m2[1].j == 3);
    REQUIRE(m2[2].id() == "T1^(0,1)");
    REQUIRE(m2[2].i == 1);
    REQUIRE(m2[2].j == 1);
    REQUIRE(m2[3].id() == "T1^(1,1)");
    REQUIRE(m2[3].j == 2);

    // m = 3: 12 generators on the fully live tree (3 components), 6 on the
    // other (2 components).
    std::vector<STGenerator> m3 = ctx.generators(3);
    REQUIRE(m3.size() == 18);
    int on_first = 0;
    for (const STGenerator& g : m3)
        if (g.tree == 0) ++on_first;
    REQUIRE(on_first == 12);
}

TEST_CASE("generator count is m(m-1)^(c-1) per tree") {
    for (const OrderedGraph& g : {ts::triangle(), ts::fig10(), ts::bowtie(), ts::complete(4)}) {
        STContext ctx(g);
        for (int m : {2, 3, 4}) {
            std::map<int, long long> per_tree;
            for (const STGenerator& gen : ctx.generators(m)) ++per_tree[gen.tree];
            for (const TreeRecord& t : ctx.trees()) {
                long long expected = m;
                for (int k = 1; k < ctx.component_count(t.lex_rank); ++k) expected *= m - 1;
                REQUIRE(per_tree[t.lex_rank] == expected);
            }
        }
    }
}

TEST_CASE("fixture generators land per the frozen placement table") {
    STContext ctx(ts::fig10());
    std::vector<STGenerator> gens = ctx.generators(2);
    REQUIRE(gens.size() == 28);
    std::map<std::pair<int, int>, std::vector<SignedTree>> got;
    for (const STGenerator& g : gens) got[{g.i, g.j}].push_back(classify(g));
    for (auto& [key, val] : got) std::sort(val.begin(), val.end());
    std::map<std::pair<int, int>, std::vector<SignedTree>> expected = kPlacement;
    for (auto& [key, val] : expected) std::sort(val.begin(), val.end());
    REQUIRE(got == expected);
}

TEST_CASE("xi counts dead edges below") {
    STContext tri(ts::triangle());
    REQUIRE(tri.xi(tri.tree(0), 3) == 0);
    STContext ctx(ts::fig10());
    REQUIRE(ctx.xi(ctx.tree(1), 6) == 0);  // IN = {8}
    REQUIRE(ctx.xi(ctx.tree(3), 7) == 1);  // IN = {6, 8}
}

TEST_CASE("s_e on the worked examples") {
    STContext tri(ts::triangle());
    REQUIRE(tri.s_e(tri.tree(0), 3) == 1);

    // 5-cycle, tree omitting the closing edge: all four path edges live.
    OrderedGraph c5 = ts::cycle_n(5);
    STContext ctx5(c5);
    const TreeRecord& t0 = ctx5.tree(0);
    REQUIRE(t0.edges == EdgeSet::of({1, 2, 3, 4}));
    REQUIRE(ctx5.s_e(t0, 5) == 1);

    // A cycle with exactly one live edge kills the sign.
    STContext ctx10(ts::fig10());
    const TreeRecord& t12 = ctx10.tree(11);  // IA = {1}
    REQUIRE(t12.ia_set == EdgeSet::of({1}));
    REQUIRE(ctx10.s_e(t12, 2) == 0);
}

TEST_CASE("m=2 differential on the triangle") {
    STContext ctx(ts::triangle());
    std::vector<STGenerator> gens = ctx.generators(2);
    // d(T0+) = 2 T1-.
    std::vector<DifferentialTerm> terms = ctx.differential_m2(gens[0]);
    REQUIRE(terms.size() == 1);
    REQUIRE(terms[0].target.id() == "T1^(1,1)");
    REQUIRE(terms[0].coefficient == 2);
    // Everything else dies.
    REQUIRE(ctx.differential_m2(gens[1]).empty());
    REQUIRE(ctx.differential_m2(gens[2]).empty());
    REQUIRE(ctx.differential_m2(gens[3]).empty());
}

TEST_CASE("m=2 differential reproduces the frozen incidence table") {
    STContext ctx(ts::fig10());
    for (const STGenerator& gen : ctx.generators(2)) {
        std::vector<DifferentialTerm> terms = ctx.differential_m2(gen);
        if (gen.exponents[0] == 1) {
            REQUIRE(terms.empty());
            continue;
        }
        std::map<int, long long> got;
        for (const DifferentialTerm& term : terms) {
            REQUIRE(term.target.exponents[0] == 1);  // lands on minus generators
            got[term.target.tree] = term.coefficient;
        }
        std::map<int, long long> expected;
        for (auto [rank, coeff] : kIncidences.at(gen.tree)) expected[rank] = coeff;
        CAPTURE(gen.tree);
        REQUIRE(got == expected);
    }
}

TEST_CASE("general differential reduces to the m=2 closed form") {
    for (const OrderedGraph& g : ts::acceptance_corpus()) {
        STContext ctx(g);
        for (const STGenerator& gen : ctx.generators(2)) {
            std::vector<DifferentialTerm> closed = ctx.differential_m2(gen);
            std::vector<DifferentialTerm> general = ctx.differential_am(gen, 2);
            std::map<std::string, long long> a, b;
            for (const DifferentialTerm& t : closed) a[t.target.id()] = t.coefficient;
            for (const DifferentialTerm& t : general) b[t.target.id()] = t.coefficient;
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("triangle differential at m=3, derived by hand") {
    // Source T0^(0,1,1) over Z[x]/<x^3>: adding edge 3 merges the root with
    // component {c}. Merge term and the two-step transport both hit
    // T1^(1,1); the one-step transport along edge 2 shifts the product to
    // {b} and lands on T1^(0,2) with a negative sign.
    STContext ctx(ts::triangle());
    STGenerator src;
    src.tree = 0;
    src.exponents = {0, 1, 1};
    src.i = 0;
    src.j = 2;
    std::map<std::string, long long> got;
    for (const DifferentialTerm& term : ctx.differential_am(src, 3))
        got[term.target.id()] = term.coefficient;
    std::map<std::string, long long> expected = {{"T1^(1,1)", 2}, {"T1^(0,2)", -1}};
    REQUIRE(got == expected);
}

TEST_CASE("generators on the lex-max tree are cycles") {
    for (const OrderedGraph& g : ts::acceptance_corpus()) {
        STContext ctx(g);
        int last = static_cast<int>(ctx.trees().size()) - 1;
        for (int m : {2, 3}) {
            for (const STGenerator& gen : ctx.generators(m)) {
                if (gen.tree != last) continue;
                REQUIRE(ctx.differential_am(gen, m).empty());
            }
        }
    }
}

TEST_CASE("m=2 coefficients live in {-2, 0, 2}") {
    for (const OrderedGraph& g : ts::acceptance_corpus()) {
        STContext ctx(g);
        for (const STGenerator& gen : ctx.generators(2))
            for (const DifferentialTerm& t : ctx.differential_m2(gen)) {
                REQUIRE((t.coefficient == 2 || t.coefficient == -2));
                REQUIRE(t.target.i == gen.i + 1);
                REQUIRE(t.target.j == gen.j);
            }
    }
}

TEST_CASE("m=2 generators sit on the two diagonals") {
    for (const OrderedGraph& g : ts::acceptance_corpus()) {
        STContext ctx(g);
        const int n = g.vertex_count();
        for (const STGenerator& gen : ctx.generators(2))
            REQUIRE(gen.i + gen.j == (gen.exponents[0] == 0 ? n - 1 : n));
    }
}

TEST_CASE("assembled complexes satisfy d^2 = 0") {
    for (const OrderedGraph& g : ts::acceptance_corpus())
        for (int m : {2, 3, 4}) REQUIRE_NOTHROW(check_d_squared(assemble_complex(g, m, false)));
    // The general formula at m = 2 assembles to the same complex.
    for (const OrderedGraph& g : {ts::triangle(), ts::fig10(), ts::bowtie()}) {
        BigradedComplex closed = assemble_complex(g, 2, true);
        BigradedComplex general = assemble_complex(g, 2, true, true);
        REQUIRE(closed.stripes.size() == general.stripes.size());
        for (const auto& [j, stripe] : closed.stripes) {
            const Stripe& other = general.stripes.at(j);
            REQUIRE(stripe.dims == other.dims);
            for (std::size_t k = 0; k < stripe.matrices.size(); ++k)
                REQUIRE(stripe.matrices[k].col_entries == other.matrices[k].col_entries);
        }
    }
}

TEST_CASE("triangle stripe matrices match the worked example") {
    BigradedComplex c = assemble_complex(ts::triangle(), 2, true);
    // j = 2 stripe: [2] from <T0+> to <T1->.
    const Stripe& j2 = c.stripes.at(2);
    REQUIRE(j2.i_lo == 0);
    REQUIRE(j2.dims == std::vector<int>{1, 1});
    REQUIRE(j2.matrices[0].col_entries[0] ==
            std::vector<std::pair<int, std::int64_t>>{{0, 2}});
    REQUIRE(j2.labels[0] == std::vector<std::string>{"T0^(0,1,1)"});
    REQUIRE(j2.labels[1] == std::vector<std::string>{"T1^(1,1)"});
}

TEST_CASE("single-edge graph has an i=0 complex with zero differential") {
    for (int m : {2, 3, 5}) {
        BigradedComplex c = assemble_complex(ts::k2(), m, false);
        for (const auto& [j, stripe] : c.stripes) {
            REQUIRE(stripe.i_lo == 0);
            REQUIRE(stripe.dims.size() == 1);
            REQUIRE(stripe.matrices[0].nnz() == 0);
        }
    }
}

TEST_CASE("fixture homology matches the frozen table") {
    HomologyTable table = homology(assemble_complex(ts::fig10(), 2, false));
    auto by_i = table.by_grading();
    REQUIRE(by_i.size() == 6);
    auto expect = [&](int i, long long free, std::vector<long long> torsion) {
        REQUIRE(by_i.at(i).free_rank == free);
        REQUIRE(by_i.at(i).torsion == torsion);
    };
    expect(0, 1, {});
    expect(1, 2, {2});
    expect(2, 3, {2});
    expect(3, 4, {2, 2});
    expect(4, 3, {2, 2});
    expect(5, 1, {2});
}

TEST_CASE("triangle homology per (i, j)") {
    HomologyTable table = homology(assemble_complex(ts::triangle(), 2, false));
    REQUIRE(table.at(0, 3).free_rank == 1);
    REQUIRE(table.at(0, 2).trivial());
    REQUIRE(table.at(1, 1).free_rank == 1);
    REQUIRE(table.at(1, 2).torsion == std::vector<long long>{2});
    REQUIRE(table.groups.size() == 3);
}

TEST_CASE("a vanishing plus-differential above grading zero forces a Z_2 summand") {
    // Stronger form of the lex-max statement: whenever d(T+) = 0 with
    // |IN(T)| > 0, the homology at that grading carries invariant factor 2.
    for (const OrderedGraph& g : ts::acceptance_corpus()) {
        STContext ctx(g);
        HomologyTable table = homology(assemble_complex(g, 2, false));
        auto by_i = table.by_grading();
        for (const STGenerator& gen : ctx.generators(2)) {
            if (gen.exponents[0] != 0 || gen.i == 0) continue;
            if (!ctx.differential_m2(gen).empty()) continue;
            CAPTURE(g.name(), gen.tree, gen.i);
            REQUIRE(by_i.count(gen.i) == 1);
            const auto& torsion = by_i.at(gen.i).torsion;
            REQUIRE(std::find(torsion.begin(), torsion.end(), 2LL) != torsion.end());
        }
    }
}

TEST_CASE("homology does not depend on the root or the edge order") {
    std::mt19937_64 rng(777);
    for (const OrderedGraph& g :
         {ts::triangle(), ts::path_with_triangle(), ts::bowtie(), ts::cycle_n(5), ts::complete(4)}) {
        std::vector<std::pair<std::string, std::string>> edges;
        for (int e = 1; e <= g.edge_count(); ++e) {
            auto [u, v] = g.edge(e);
            edges.push_back({g.vertex_name(u), g.vertex_name(v)});
        }
        for (int m : {2, 3}) {
            HomologyTable base = homology(assemble_complex(g, m, false));
            // Every choice of root.
            for (int r = 0; r < g.vertex_count(); ++r) {
                OrderedGraph rerooted =
                    OrderedGraph::create(g.vertex_names(), edges, g.vertex_name(r));
                REQUIRE(homology(assemble_complex(rerooted, m, false)) == base);
            }
            // A few reshuffled edge orders.
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<int> order(static_cast<std::size_t>(g.edge_count()));
                std::iota(order.begin(), order.end(), 1);
                for (std::size_t k = order.size(); k > 1; --k)
                    std::swap(order[k - 1], order[static_cast<std::size_t>(rng() % k)]);
                OrderedGraph reordered = OrderedGraph::create(
                    g.vertex_names(), edges, g.vertex_name(g.root()), order);
                REQUIRE(homology(assemble_complex(reordered, m, false)) == base);
            }
        }
    }
}

TEST_CASE("cycle homology follows the parity rules") {
    for (int n = 3; n <= 6; ++n) {
        HomologyTable table = homology(assemble_complex(ts::cycle_n(n), 2, false));
        auto by_i = table.by_grading();
        REQUIRE(by_i.rbegin()->first == n - 2);
        for (const auto& [i, group] : by_i) {
            CAPTURE(n, i);
            if (i == 0) {
                REQUIRE(group.free_rank == (n % 2 == 0 ? 2 : 1));
                REQUIRE(group.torsion.empty());
            } else if ((n - i) % 2 == 0) {
                REQUIRE(group.free_rank == 1);
                REQUIRE(group.torsion == std::vector<long long>{2});
            } else {
                REQUIRE(group.free_rank == 1);
                REQUIRE(group.torsion.empty());
            }
        }
    }
}
