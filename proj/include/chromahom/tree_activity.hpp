#ifndef CHROMAHOM_TREE_ACTIVITY_HPP
#define CHROMAHOM_TREE_ACTIVITY_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromahom/graph.hpp"

namespace chromahom {

/// Spanning tree with cached activity data. A tree edge is internally active
/// (live, letter L) when it is the smallest edge of its cut set, internally
/// inactive (dead, D) otherwise; an external edge is externally active (l)
/// when it is the smallest edge of its fundamental cycle, inactive (d)
/// otherwise. An NBC tree has no externally active edge.
struct TreeRecord {
    EdgeSet edges;
    EdgeSet in_set;   // internally inactive (dead) tree edges
    EdgeSet ia_set;   // internally active (live) tree edges
    EdgeSet en_set;   // external edges
    std::string activity_word;  // one letter per edge label, in label order
    int lex_rank = -1;          // 0-based position among NBC trees, -1 if n/a

    /// Homological grading i = |IN|.
    int grading() const { return in_set.count(); }
};

inline TreeRecord make_tree_record(const OrderedGraph& g, EdgeSet tree) {
    TreeRecord rec;
    rec.edges = tree;
    rec.en_set = g.all_edges() - tree;
    rec.activity_word.assign(static_cast<std::size_t>(g.edge_count()), '?');
    for (int e = 1; e <= g.edge_count(); ++e) {
        char letter;
        if (tree.contains(e)) {
            letter = (cut_set(g, tree, e).min_label() == e) ? 'L' : 'D';
            (letter == 'L' ? rec.ia_set : rec.in_set).add(e);
        } else {
            letter = (cycle_set(g, tree, e).min_label() == e) ? 'l' : 'd';
        }
        rec.activity_word[static_cast<std::size_t>(e - 1)] = letter;
    }
    return rec;
}

/// True iff s contains some cycle minus its smallest edge, i.e. there is an
/// edge e whose endpoints are joined inside s using only edges with label
/// greater than e. (e itself may or may not lie in s: a full cycle inside s
/// contains the broken circuit of its own minimal edge.)
inline bool contains_broken_circuit(const OrderedGraph& g, EdgeSet s) {
    for (int e = 1; e <= g.edge_count(); ++e) {
        EdgeSet above;
        for (int f : s.labels())
            if (f > e) above.add(f);
        if (above.empty()) continue;
        ComponentPartition part = components(g, above);
        auto [u, v] = g.edge(e);
        if (part.component_of[static_cast<std::size_t>(u)] ==
            part.component_of[static_cast<std::size_t>(v)])
            return true;
    }
    return false;
}

namespace detail {

struct TinyDsu {
    std::vector<int> parent;
    explicit TinyDsu(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
        return true;
    }
};

/// Backtracking over edges in label order. Including an edge before
/// excluding it makes the visit order coincide with the lexicographic order
/// on sorted edge tuples. Excluding is pruned when the remaining edges can
/// no longer connect the graph; with nbc_only, including is also pruned as
/// soon as the partial set picks up a broken circuit.
inline void enumerate_trees_impl(const OrderedGraph& g, bool nbc_only,
                                 const std::function<void(EdgeSet)>& emit) {
    const int n = g.edge_count();
    const int nv = g.vertex_count();
    EdgeSet chosen;

    std::function<void(int, int)> recurse = [&](int label, int picked) {
        if (picked == nv - 1) {
            emit(chosen);
            return;
        }
        if (label > n) return;

        // Include branch.
        auto [u, v] = g.edge(label);
        TinyDsu dsu(nv);
        for (int f : chosen.labels()) {
            auto [a, b] = g.edge(f);
            dsu.unite(a, b);
        }
        if (dsu.find(u) != dsu.find(v)) {
            chosen.add(label);
            if (!nbc_only || !contains_broken_circuit(g, chosen)) recurse(label + 1, picked + 1);
            chosen.remove(label);
        }

        // Exclude branch, only if the rest can still span.
        TinyDsu rest(nv);
        int comps = nv;
        for (int f : chosen.labels()) {
            auto [a, b] = g.edge(f);
            if (rest.unite(a, b)) --comps;
        }
        for (int f = label + 1; f <= n; ++f) {
            auto [a, b] = g.edge(f);
            if (rest.unite(a, b)) --comps;
        }
        if (comps == 1) recurse(label + 1, picked);
    };
    recurse(1, 0);
}

}  // namespace detail

/// Visit every spanning tree exactly once, in lexicographic order of sorted
/// edge tuples.
inline void enumerate_spanning_trees(const OrderedGraph& g,
                                     const std::function<void(EdgeSet)>& emit) {
    detail::enumerate_trees_impl(g, false, emit);
}

inline std::vector<EdgeSet> spanning_trees(const OrderedGraph& g) {
    std::vector<EdgeSet> out;
    enumerate_spanning_trees(g, [&](EdgeSet t) { out.push_back(t); });
    return out;
}

/// All NBC spanning trees in lexicographic order, with activity data and
/// lex_rank populated.
inline std::vector<TreeRecord> nbc_trees(const OrderedGraph& g) {
    std::vector<TreeRecord> out;
    detail::enumerate_trees_impl(g, true, [&](EdgeSet t) {
        TreeRecord rec = make_tree_record(g, t);
        rec.lex_rank = static_cast<int>(out.size());
        out.push_back(std::move(rec));
    });
    return out;
}

/// Basis exchange toward higher grading: T + e - max(live edges of cyc(T,e)).
/// Empty when the fundamental cycle carries no live tree edge; the
/// differential skips such external edges.
inline std::optional<EdgeSet> psi_e(const OrderedGraph& g, const TreeRecord& t, int e) {
    if (!t.en_set.contains(e)) throw std::invalid_argument("psi_e: edge is not external");
    EdgeSet live_in_cycle = cycle_set(g, t.edges, e) & t.ia_set;
    if (live_in_cycle.empty()) return std::nullopt;
    EdgeSet out = t.edges;
    out.remove(live_in_cycle.max_label());
    out.add(e);
    return out;
}

/// Basis exchange toward lower grading: T + min(cut(T,e)) - e for a dead
/// tree edge e.
inline EdgeSet psi_prime_e(const OrderedGraph& g, const TreeRecord& t, int e) {
    if (!t.in_set.contains(e)) throw std::invalid_argument("psi_prime_e: edge is not internally inactive");
    EdgeSet out = t.edges;
    out.remove(e);
    out.add(cut_set(g, t.edges, e).min_label());
    return out;
}

/// Interval partition induced by the lexicographic shelling: every NBC edge
/// subset S belongs to exactly one interval [IN(T), T], and the map sends S
/// to that tree's lex_rank. Test utility; guarded because it enumerates all
/// 2^|E| subsets.
inline std::map<EdgeSet, int> shelling_partition(const OrderedGraph& g, int guard_edges = 20) {
    if (g.edge_count() > guard_edges)
        throw GuardError("shelling_partition guard: " + std::to_string(g.edge_count()) +
                         " edges exceeds limit " + std::to_string(guard_edges));
    std::vector<TreeRecord> trees = nbc_trees(g);
    std::map<EdgeSet, int> assignment;
    const std::uint64_t total = 1ull << g.edge_count();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        EdgeSet s{bits};
        if (contains_broken_circuit(g, s)) continue;
        int owner = -1;
        for (const TreeRecord& t : trees) {
            if (t.in_set.subset_of(s) && s.subset_of(t.edges)) {
                if (owner >= 0)
                    throw IntegrityError("shelling intervals overlap on a subset");
                owner = t.lex_rank;
            }
        }
        if (owner < 0) throw IntegrityError("NBC subset not covered by any shelling interval");
        assignment[s] = owner;
    }
    return assignment;
}

}  // namespace chromahom

#endif  // CHROMAHOM_TREE_ACTIVITY_HPP
