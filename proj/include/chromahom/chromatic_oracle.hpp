#ifndef CHROMAHOM_CHROMATIC_ORACLE_HPP
#define CHROMAHOM_CHROMATIC_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chromahom/graph.hpp"
#include "chromahom/homology.hpp"
#include "chromahom/tree_activity.hpp"

namespace chromahom {

/// Generator of the chromatic complex: a spanning subgraph together with a
/// coloring of its connected components by exponents 0..m-1. Components are
/// indexed by smallest contained vertex. i = |edges|, j = exponent sum.
struct EnhancedState {
    std::uint64_t mask = 0;            // edge subset, bit k = label k+1
    std::vector<std::uint8_t> coloring;  // per component, min-vertex order

    int i() const { return __builtin_popcountll(mask); }
    int j() const {
        int total = 0;
        for (std::uint8_t c : coloring) total += c;
        return total;
    }

    std::string id() const {
        std::string out = "H{";
        EdgeSet s{mask};
        bool first = true;
        for (int e : s.labels()) {
            if (!first) out += ",";
            out += std::to_string(e);
            first = false;
        }
        out += "}^(";
        for (std::size_t k = 0; k < coloring.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(static_cast<int>(coloring[k]));
        }
        return out + ")";
    }

    friend bool operator<(const EnhancedState& a, const EnhancedState& b) {
        if (a.mask != b.mask) return a.mask < b.mask;
        return a.coloring < b.coloring;
    }
    friend bool operator==(const EnhancedState& a, const EnhancedState& b) {
        return a.mask == b.mask && a.coloring == b.coloring;
    }
};

inline int default_oracle_guard() {
    if (const char* env = std::getenv("CHROMAHOM_GUARD_EDGES")) {
        int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    return 16;
}

/// Per-edge differential with the exterior-algebra sign
/// (-1)^(edges of H below e). Adding e either merges two components, whose
/// exponents add (the term is dropped at x^m = 0), or closes a cycle and
/// keeps the coloring. With nbc_only, terms whose subgraph picks up a broken
/// circuit are dropped.
inline std::vector<std::pair<EnhancedState, int>> oracle_differential(const OrderedGraph& g, int m,
                                                                      const EnhancedState& state,
                                                                      bool nbc_only = false) {
    std::vector<std::pair<EnhancedState, int>> terms;
    EdgeSet subgraph{state.mask};
    ComponentPartition part = components(g, subgraph);
    for (int e = 1; e <= g.edge_count(); ++e) {
        if (subgraph.contains(e)) continue;
        EdgeSet bigger = subgraph;
        bigger.add(e);
        if (nbc_only && contains_broken_circuit(g, bigger)) continue;
        int sign = subgraph.count_below(e) % 2 == 0 ? 1 : -1;

        auto [u, v] = g.edge(e);
        int cu = part.component_of[static_cast<std::size_t>(u)];
        int cv = part.component_of[static_cast<std::size_t>(v)];
        EnhancedState target;
        target.mask = bigger.bits;
        if (cu == cv) {
            target.coloring = state.coloring;  // partition unchanged, identity map
        } else {
            int merged = state.coloring[static_cast<std::size_t>(cu)] +
                         state.coloring[static_cast<std::size_t>(cv)];
            if (merged >= m) continue;  // x^a * x^b = 0 in the algebra
            ComponentPartition new_part = components(g, bigger);
            target.coloring.assign(static_cast<std::size_t>(new_part.count()), 0);
            for (int comp = 0; comp < new_part.count(); ++comp) {
                int witness = new_part.members[static_cast<std::size_t>(comp)].front();
                int old_comp = part.component_of[static_cast<std::size_t>(witness)];
                target.coloring[static_cast<std::size_t>(comp)] =
                    (old_comp == cu || old_comp == cv)
                        ? static_cast<std::uint8_t>(merged)
                        : state.coloring[static_cast<std::size_t>(old_comp)];
            }
        }
        terms.push_back({std::move(target), sign});
    }
    return terms;
}

namespace detail {

struct OracleLevel {
    std::map<int, std::vector<EnhancedState>> by_j;
    std::map<EnhancedState, std::pair<int, int>> index;  // state -> (j, position)
};

inline OracleLevel oracle_level(const OrderedGraph& g, int m, int i,
                                const std::vector<bool>* nbc_mask) {
    OracleLevel level;
    const std::uint64_t total = 1ull << g.edge_count();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (__builtin_popcountll(mask) != i) continue;
        if (nbc_mask && !(*nbc_mask)[static_cast<std::size_t>(mask)]) continue;
        ComponentPartition part = components(g, EdgeSet{mask});
        const int c = part.count();
        std::vector<std::uint8_t> coloring(static_cast<std::size_t>(c), 0);
        while (true) {
            EnhancedState state;
            state.mask = mask;
            state.coloring = coloring;
            int j = state.j();
            level.index[state] = {j, static_cast<int>(level.by_j[j].size())};
            level.by_j[j].push_back(std::move(state));
            int k = c - 1;
            while (k >= 0) {
                if (coloring[static_cast<std::size_t>(k)] < m - 1) {
                    ++coloring[static_cast<std::size_t>(k)];
                    break;
                }
                coloring[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    return level;
}

}  // namespace detail

/// Every enhanced state grouped by (i, j), in deterministic (mask, coloring)
/// order. Guarded: the state space is exponential in the edge count.
inline std::map<std::pair<int, int>, std::vector<EnhancedState>> enumerate_states(
    const OrderedGraph& g, int m, bool nbc_only = false, int guard_edges = -1, bool force = false) {
    if (guard_edges < 0) guard_edges = default_oracle_guard();
    if (!force && g.edge_count() > guard_edges)
        throw GuardError("oracle guard: " + std::to_string(g.edge_count()) +
                         " edges exceeds limit " + std::to_string(guard_edges));
    std::vector<bool> nbc_mask;
    if (nbc_only) {
        nbc_mask.resize(static_cast<std::size_t>(1) << g.edge_count());
        for (std::uint64_t mask = 0; mask < nbc_mask.size(); ++mask)
            nbc_mask[static_cast<std::size_t>(mask)] = !contains_broken_circuit(g, EdgeSet{mask});
    }
    std::map<std::pair<int, int>, std::vector<EnhancedState>> out;
    for (int i = 0; i <= g.edge_count(); ++i) {
        detail::OracleLevel level = detail::oracle_level(g, m, i, nbc_only ? &nbc_mask : nullptr);
        for (auto& [j, states] : level.by_j) out[{i, j}] = std::move(states);
    }
    return out;
}

/// Full chromatic complex (or its NBC restriction) as a bigraded complex,
/// assembled level by level so only two i-levels of states are alive at a
/// time.
inline BigradedComplex assemble_oracle(const OrderedGraph& g, int m, bool nbc_only = false,
                                       int guard_edges = -1, bool force = false,
                                       bool with_labels = false) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    if (guard_edges < 0) guard_edges = default_oracle_guard();
    if (!force && g.edge_count() > guard_edges)
        throw GuardError("oracle guard: " + std::to_string(g.edge_count()) +
                         " edges exceeds limit " + std::to_string(guard_edges));

    std::vector<bool> nbc_mask;
    if (nbc_only) {
        nbc_mask.resize(static_cast<std::size_t>(1) << g.edge_count());
        for (std::uint64_t mask = 0; mask < nbc_mask.size(); ++mask)
            nbc_mask[static_cast<std::size_t>(mask)] = !contains_broken_circuit(g, EdgeSet{mask});
    }
    const std::vector<bool>* filter = nbc_only ? &nbc_mask : nullptr;

    std::map<int, std::map<int, int>> dims;                        // j -> i -> dim
    std::map<int, std::map<int, std::vector<std::string>>> labels;  // j -> i -> ids
    std::map<std::pair<int, int>, SparseMat> matrices;              // (i, j) -> D_i

    detail::OracleLevel current = detail::oracle_level(g, m, 0, filter);
    for (int i = 0; i <= g.edge_count(); ++i) {
        detail::OracleLevel next =
            i < g.edge_count() ? detail::oracle_level(g, m, i + 1, filter) : detail::OracleLevel{};
        for (const auto& [j, states] : current.by_j) {
            dims[j][i] = static_cast<int>(states.size());
            if (with_labels) {
                std::vector<std::string> ids;
                for (const EnhancedState& s : states) ids.push_back(s.id());
                labels[j][i] = std::move(ids);
            }
            auto rows_it = next.by_j.find(j);
            int rows = rows_it == next.by_j.end() ? 0 : static_cast<int>(rows_it->second.size());
            SparseMat d = SparseMat::zero(rows, static_cast<int>(states.size()));
            for (std::size_t col = 0; col < states.size(); ++col) {
                std::vector<std::pair<int, std::int64_t>> entries;
                for (const auto& [target, sign] : oracle_differential(g, m, states[col], nbc_only)) {
                    auto it = next.index.find(target);
                    if (it == next.index.end())
                        throw IntegrityError("oracle differential target missing from next level");
                    entries.push_back({it->second.second, sign});
                }
                std::sort(entries.begin(), entries.end());
                d.set_col(static_cast<int>(col), std::move(entries));
            }
            matrices[{i, j}] = std::move(d);
        }
        current = std::move(next);
    }

    BigradedComplex complex;
    complex.m = m;
    complex.model = nbc_only ? "oracle-nbc" : "oracle";
    for (const auto& [j, per_i] : dims) {
        Stripe stripe;
        stripe.i_lo = per_i.begin()->first;
        int i_hi = per_i.rbegin()->first;
        for (int i = stripe.i_lo; i <= i_hi; ++i) {
            auto it = per_i.find(i);
            int dim = it == per_i.end() ? 0 : it->second;
            stripe.dims.push_back(dim);
            if (with_labels) {
                auto lab = labels[j].find(i);
                stripe.labels.push_back(lab == labels[j].end() ? std::vector<std::string>{}
                                                               : lab->second);
            }
            auto mat = matrices.find({i, j});
            if (mat != matrices.end())
                stripe.matrices.push_back(std::move(mat->second));
            else
                stripe.matrices.push_back(SparseMat::zero(0, dim));
        }
        complex.stripes[j] = std::move(stripe);
    }
    return complex;
}

}  // namespace chromahom

#endif  // CHROMAHOM_CHROMATIC_ORACLE_HPP
