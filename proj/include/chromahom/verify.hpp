#ifndef CHROMAHOM_VERIFY_HPP
#define CHROMAHOM_VERIFY_HPP

#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chromahom/chromatic_oracle.hpp"
#include "chromahom/graph.hpp"
#include "chromahom/homology.hpp"
#include "chromahom/polynomial.hpp"
#include "chromahom/st_complex.hpp"

namespace chromahom {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string note;
    double ms = 0.0;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

struct VerifyOptions {
    int m = 2;
    int oracle_guard = -1;   // -1: default / CHROMAHOM_GUARD_EDGES
    int shelling_guard = 20;
    bool force = false;
    int threads = 1;
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names = {
        "euler",  "poly",      "span",     "torsion",  "oracle-eq",
        "diagonals", "partition", "dsquare", "lexmax-z2", "kunneth"};
    return names;
}

/// Checks run by default: everything except kunneth, which needs a second
/// factor and is opt-in.
inline std::vector<std::string> default_checks() {
    std::vector<std::string> names = known_checks();
    names.pop_back();
    return names;
}

/// Free ranks per homological grading of the spanning-tree model.
inline std::vector<long long> rational_betti(const OrderedGraph& g, int m, int threads = 1) {
    return homology(assemble_complex(g, m, false), threads).betti();
}

struct KunnethDetail {
    std::vector<long long> betti_first;
    std::vector<long long> betti_second;
    std::vector<long long> convolution;
    std::vector<long long> betti_glued;
    bool betti_match = false;
    bool generator_counts_match = false;  // chain-level tensor identity over the algebra
};

/// Vertex gluing at the roots: compares the glued graph's rational Betti
/// numbers with the convolution of the factors', and separately the
/// chain-level generator-count identity m(m-1)^(c1+c2-2) per tree pair.
inline KunnethDetail kunneth_rational_detail(const OrderedGraph& g1, const OrderedGraph& g2, int m,
                                             int threads = 1) {
    KunnethDetail detail;
    detail.betti_first = rational_betti(g1, m, threads);
    detail.betti_second = rational_betti(g2, m, threads);
    OrderedGraph glued = glue_at_roots(g1, g2);
    detail.betti_glued = rational_betti(glued, m, threads);
    if (!detail.betti_first.empty() && !detail.betti_second.empty()) {
        detail.convolution.assign(detail.betti_first.size() + detail.betti_second.size() - 1, 0);
        for (std::size_t a = 0; a < detail.betti_first.size(); ++a)
            for (std::size_t b = 0; b < detail.betti_second.size(); ++b)
                detail.convolution[a + b] += detail.betti_first[a] * detail.betti_second[b];
        while (!detail.convolution.empty() && detail.convolution.back() == 0)
            detail.convolution.pop_back();
    }
    std::vector<long long> glued_trim = detail.betti_glued;
    while (!glued_trim.empty() && glued_trim.back() == 0) glued_trim.pop_back();
    detail.betti_match = glued_trim == detail.convolution;

    // Chain level: generators of the glued complex per (i, j) must count
    // m(m-1)^(c1+c2-2) over tree pairs, i.e. the generator total of the
    // glued graph equals sum over pairs of the tensor rank over Z[x]/<x^m>.
    STContext ctx1(g1), ctx2(g2), ctx_glued(glued);
    long long expected = 0;
    auto pow_ll = [](long long base, int e) {
        long long acc = 1;
        for (int k = 0; k < e; ++k) acc *= base;
        return acc;
    };
    for (const TreeRecord& t1 : ctx1.trees())
        for (const TreeRecord& t2 : ctx2.trees()) {
            int c1 = ctx1.component_count(t1.lex_rank);
            int c2 = ctx2.component_count(t2.lex_rank);
            expected += static_cast<long long>(m) * pow_ll(m - 1, c1 + c2 - 2);
        }
    long long actual = static_cast<long long>(ctx_glued.generators(m).size());
    detail.generator_counts_match = expected == actual;
    return detail;
}

inline bool kunneth_rational_check(const OrderedGraph& g1, const OrderedGraph& g2, int m = 2) {
    return kunneth_rational_detail(g1, g2, m).betti_match;
}

inline std::string first_table_difference(const HomologyTable& a, const HomologyTable& b) {
    std::set<std::pair<int, int>> keys;
    for (const auto& [key, group] : a.groups) keys.insert(key);
    for (const auto& [key, group] : b.groups) keys.insert(key);
    for (auto [i, j] : keys) {
        HomologyGroup ga = a.at(i, j), gb = b.at(i, j);
        if (ga != gb) {
            auto render = [](const HomologyGroup& g) {
                std::string out = "free " + std::to_string(g.free_rank) + ", torsion [";
                for (std::size_t k = 0; k < g.torsion.size(); ++k)
                    out += (k ? "," : "") + std::to_string(g.torsion[k]);
                return out + "]";
            };
            return "(i=" + std::to_string(i) + ", j=" + std::to_string(j) + "): " + render(ga) +
                   " vs " + render(gb);
        }
    }
    return "";
}

namespace detail {

inline std::string join_ll(const std::vector<long long>& xs) {
    std::string out = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(xs[k]);
    }
    return out + "]";
}

inline CheckResult check_euler(const OrderedGraph& g, const VerifyOptions& opt) {
    BigradedComplex c = assemble_complex(g, opt.m, false);
    HomologyTable table = homology(c, opt.threads);
    IntPolynomial chain_chi = graded_euler_characteristic(c);
    IntPolynomial hom_chi = graded_euler_characteristic(table);
    IntPolynomial p = chromatic_poly_deletion_contraction(g);
    bool ok = chain_chi == hom_chi;
    std::string note;
    if (!ok) note = "chain-level and homology-level Euler characteristics differ";
    if (ok && opt.m == 2) {
        IntPolynomial one_plus_q;
        one_plus_q.coefficients = {1, 1};
        ok = chain_chi == p.compose(one_plus_q);
        if (!ok) note = "chi_q differs from P(G, 1+q)";
    }
    if (ok) {
        ok = chain_chi.eval(1) == p.eval(opt.m);
        if (!ok) note = "chi at q=1 differs from P(G, m)";
    }
    if (ok) note = "chi_q = " + chain_chi.to_string("q");
    return {"euler", ok, note, 0.0};
}

inline CheckResult check_poly(const OrderedGraph& g, const VerifyOptions&) {
    IntPolynomial dc = chromatic_poly_deletion_contraction(g);
    IntPolynomial nbc = chromatic_poly_nbc(g);
    bool ok = dc == nbc;
    return {"poly", ok,
            ok ? "P = " + dc.to_string("lambda")
               : "NBC expansion " + nbc.to_string("lambda") + " != deletion-contraction " +
                     dc.to_string("lambda"),
            0.0};
}

inline CheckResult check_span(const OrderedGraph& g, const VerifyOptions& opt) {
    HomologyTable table = homology(assemble_complex(g, opt.m, false), opt.threads);
    int b = blocks(g).count();
    int expected_max = g.vertex_count() - b - 1;
    auto by_i = table.by_grading();
    bool ok = !by_i.empty();
    std::string note;
    if (ok) {
        int lo = by_i.begin()->first;
        int hi = by_i.rbegin()->first;
        for (int i = lo; i <= hi && ok; ++i)
            ok = by_i.count(i) > 0 && !by_i[i].trivial();
        ok = ok && lo == 0 && hi == expected_max;
        note = "gradings " + std::to_string(lo) + ".." + std::to_string(hi) + ", v-b-1 = " +
               std::to_string(expected_max);
    } else {
        note = "homology is zero";
    }
    return {"span", ok, note, 0.0};
}

inline CheckResult check_torsion(const OrderedGraph& g, const VerifyOptions& opt) {
    HomologyTable table = homology(assemble_complex(g, opt.m, false), opt.threads);
    bool is_forest = g.edge_count() == g.vertex_count() - 1;
    std::vector<long long> factors;
    for (const auto& [key, group] : table.groups)
        factors.insert(factors.end(), group.torsion.begin(), group.torsion.end());
    if (is_forest)
        return {"torsion", factors.empty(),
                factors.empty() ? "torsion-free: graph is a forest"
                                : "unexpected torsion in a forest",
                0.0};
    for (long long d : factors)
        if (std::gcd(d, static_cast<long long>(opt.m)) > 1)
            return {"torsion", true,
                    "witness invariant factor " + std::to_string(d) + " shares a divisor with m=" +
                        std::to_string(opt.m),
                    0.0};
    return {"torsion", false, "no invariant factor shares a divisor with m", 0.0};
}

inline CheckResult check_oracle_eq(const OrderedGraph& g, const VerifyOptions& opt) {
    int guard = opt.oracle_guard < 0 ? default_oracle_guard() : opt.oracle_guard;
    if (!opt.force && g.edge_count() > guard)
        return {"oracle-eq", true,
                "skipped: " + std::to_string(g.edge_count()) + " edges exceeds guard " +
                    std::to_string(guard),
                0.0};
    HomologyTable st = homology(assemble_complex(g, opt.m, false), opt.threads);
    HomologyTable full = homology(assemble_oracle(g, opt.m, false, guard, opt.force), opt.threads);
    HomologyTable nbc = homology(assemble_oracle(g, opt.m, true, guard, opt.force), opt.threads);
    if (!(st == full))
        return {"oracle-eq", false,
                "spanning-tree vs oracle at " + first_table_difference(st, full), 0.0};
    if (!(full == nbc))
        return {"oracle-eq", false,
                "oracle vs oracle-nbc at " + first_table_difference(full, nbc), 0.0};
    return {"oracle-eq", true, "spanning-tree = oracle = oracle-nbc on every (i, j)", 0.0};
}

inline CheckResult check_diagonals(const OrderedGraph& g, const VerifyOptions& opt) {
    if (opt.m != 2) return {"diagonals", true, "two-diagonal support applies to m=2 only; skipped", 0.0};
    STContext ctx(g);
    const int n = g.vertex_count();
    for (const STGenerator& gen : ctx.generators(2)) {
        int expected = gen.exponents[0] == 0 ? n - 1 : n;
        if (gen.i + gen.j != expected)
            return {"diagonals", false, "generator " + gen.id() + " off the diagonals", 0.0};
    }
    return {"diagonals", true, "generators lie on i+j = n-1 and i+j = n", 0.0};
}

inline CheckResult check_partition(const OrderedGraph& g, const VerifyOptions& opt) {
    if (!opt.force && g.edge_count() > opt.shelling_guard)
        return {"partition", true,
                "skipped: " + std::to_string(g.edge_count()) + " edges exceeds guard " +
                    std::to_string(opt.shelling_guard),
                0.0};
    auto assignment = shelling_partition(g, opt.force ? 64 : opt.shelling_guard);
    return {"partition", true,
            std::to_string(assignment.size()) + " NBC subsets covered by one interval each", 0.0};
}

inline CheckResult check_dsquare(const OrderedGraph& g, const VerifyOptions& opt) {
    check_d_squared(assemble_complex(g, opt.m, false));
    int guard = opt.oracle_guard < 0 ? default_oracle_guard() : opt.oracle_guard;
    if (opt.force || g.edge_count() <= guard) {
        check_d_squared(assemble_oracle(g, opt.m, false, guard, opt.force));
        check_d_squared(assemble_oracle(g, opt.m, true, guard, opt.force));
        return {"dsquare", true, "d^2 = 0 for spanning-tree and both oracle models", 0.0};
    }
    return {"dsquare", true, "d^2 = 0 for spanning-tree model (oracle skipped by guard)", 0.0};
}

inline CheckResult check_lexmax_z2(const OrderedGraph& g, const VerifyOptions& opt) {
    if (opt.m != 2) return {"lexmax-z2", true, "Z_2 statement applies to m=2 only; skipped", 0.0};
    std::vector<TreeRecord> trees = nbc_trees(g);
    int h = trees.back().grading();
    if (h == 0) return {"lexmax-z2", true, "lex-max tree sits at grading 0; statement vacuous", 0.0};
    HomologyTable table = homology(assemble_complex(g, 2, false), opt.threads);
    auto by_i = table.by_grading();
    auto it = by_i.find(h);
    bool ok = it != by_i.end();
    if (ok) {
        const auto& torsion = it->second.torsion;
        ok = std::find(torsion.begin(), torsion.end(), 2LL) != torsion.end();
    }
    return {"lexmax-z2", ok,
            ok ? "invariant factor 2 present at grading " + std::to_string(h)
               : "no Z_2 summand at grading " + std::to_string(h),
            0.0};
}

inline CheckResult check_kunneth(const OrderedGraph& g, const VerifyOptions& opt) {
    KunnethDetail detail = kunneth_rational_detail(g, g, opt.m, opt.threads);
    std::string note = "glued with itself: betti " + join_ll(detail.betti_glued) +
                       " vs convolution " + join_ll(detail.convolution) +
                       (detail.generator_counts_match ? "; generator counts match"
                                                      : "; generator counts differ");
    return {"kunneth", detail.betti_match && detail.generator_counts_match, note, 0.0};
}

}  // namespace detail

inline CheckResult run_check(const OrderedGraph& g, const std::string& name,
                             const VerifyOptions& opt) {
    auto start = std::chrono::steady_clock::now();
    CheckResult result;
    if (name == "euler")
        result = detail::check_euler(g, opt);
    else if (name == "poly")
        result = detail::check_poly(g, opt);
    else if (name == "span")
        result = detail::check_span(g, opt);
    else if (name == "torsion")
        result = detail::check_torsion(g, opt);
    else if (name == "oracle-eq")
        result = detail::check_oracle_eq(g, opt);
    else if (name == "diagonals")
        result = detail::check_diagonals(g, opt);
    else if (name == "partition")
        result = detail::check_partition(g, opt);
    else if (name == "dsquare")
        result = detail::check_dsquare(g, opt);
    else if (name == "lexmax-z2")
        result = detail::check_lexmax_z2(g, opt);
    else if (name == "kunneth")
        result = detail::check_kunneth(g, opt);
    else
        throw std::invalid_argument("unknown check '" + name + "'");
    result.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
    return result;
}

inline VerifyReport run_checks(const OrderedGraph& g, const std::vector<std::string>& names,
                               const VerifyOptions& opt) {
    VerifyReport report;
    for (const std::string& name : names) report.checks.push_back(run_check(g, name, opt));
    return report;
}

/// Seeded connected random graph: a random recursive tree plus `extra`
/// random non-tree edges, then a random edge-order shuffle. Reproducible
/// across platforms (no std::distribution involved).
inline OrderedGraph random_connected_graph(int vertices, int extra, std::uint64_t seed,
                                           const std::string& name = "") {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::uint64_t bound) { return static_cast<int>(rng() % bound); };
    std::vector<std::string> names;
    for (int v = 0; v < vertices; ++v) names.push_back("v" + std::to_string(v));
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < vertices; ++v) edges.push_back({pick(static_cast<std::uint64_t>(v)), v});
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < vertices; ++u)
        for (int v = u + 1; v < vertices; ++v)
            if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) == edges.end())
                candidates.push_back({u, v});
    for (int k = 0; k < extra && !candidates.empty(); ++k) {
        int at = pick(candidates.size());
        edges.push_back(candidates[static_cast<std::size_t>(at)]);
        candidates.erase(candidates.begin() + at);
    }
    // Fisher-Yates over the listing order, which is the label order.
    for (std::size_t k = edges.size(); k > 1; --k)
        std::swap(edges[k - 1], edges[static_cast<std::size_t>(pick(k))]);
    std::vector<std::pair<std::string, std::string>> named_edges;
    for (auto [u, v] : edges)
        named_edges.push_back({names[static_cast<std::size_t>(u)], names[static_cast<std::size_t>(v)]});
    return OrderedGraph::create(names, named_edges, names[0], std::nullopt, name);
}

}  // namespace chromahom

#endif  // CHROMAHOM_VERIFY_HPP
