#ifndef CHROMAHOM_ST_COMPLEX_HPP
#define CHROMAHOM_ST_COMPLEX_HPP

#include <map>
#include <string>
#include <vector>

#include "chromahom/graph.hpp"
#include "chromahom/homology.hpp"
#include "chromahom/tree_activity.hpp"

namespace chromahom {

/// Basis element of the spanning-tree complex: an NBC tree together with an
/// exponent on each connected component of IN(tree), viewed as a spanning
/// subgraph. Slot 0 is the component containing the root (exponent in
/// 0..m-1); the remaining slots are ordered by smallest contained vertex
/// (exponents in 1..m-1).
struct STGenerator {
    int tree = 0;                 // lex_rank of the underlying NBC tree
    std::vector<int> exponents;   // per component slot
    int i = 0;                    // homological grading = |IN(tree)|
    int j = 0;                    // quantum grading = sum of exponents

    std::string id() const {
        std::string out = "T" + std::to_string(tree) + "^(";
        for (std::size_t k = 0; k < exponents.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(exponents[k]);
        }
        return out + ")";
    }

    friend bool operator<(const STGenerator& a, const STGenerator& b) {
        if (a.tree != b.tree) return a.tree < b.tree;
        return a.exponents < b.exponents;
    }
    friend bool operator==(const STGenerator& a, const STGenerator& b) {
        return a.tree == b.tree && a.exponents == b.exponents;
    }
};

struct DifferentialTerm {
    STGenerator target;
    long long coefficient = 0;
};

/// Per-graph cache for spanning-tree-complex computations: the NBC trees,
/// and for each tree the component structure of IN(T) plus the contraction
/// of the dead edges (whose edges are exactly the live edges of T).
class STContext {
public:
    explicit STContext(OrderedGraph g) : g_(std::move(g)), trees_(nbc_trees(g_)) {
        for (const TreeRecord& t : trees_) rank_of_[t.edges] = t.lex_rank;
        info_.reserve(trees_.size());
        for (const TreeRecord& t : trees_) info_.push_back(build_info(t));
    }

    const OrderedGraph& graph() const { return g_; }
    const std::vector<TreeRecord>& trees() const { return trees_; }
    const TreeRecord& tree(int rank) const { return trees_[static_cast<std::size_t>(rank)]; }

    int rank_of(EdgeSet edges) const {
        auto it = rank_of_.find(edges);
        return it == rank_of_.end() ? -1 : it->second;
    }

    /// Number of components of IN(tree) as a spanning subgraph.
    int component_count(int rank) const { return info(rank).part.count(); }
    int slot_of_vertex(int rank, int v) const {
        return info(rank).vertex_slot[static_cast<std::size_t>(v)];
    }
    /// Live edges on the tree path from the root to v (= depth in the
    /// contraction of IN(tree)).
    int live_depth(int rank, int v) const {
        const Info& inf = info(rank);
        return inf.depth[static_cast<std::size_t>(
            inf.part.component_of[static_cast<std::size_t>(v)])];
    }

    /// Dead edges of the tree smaller than e.
    int xi(const TreeRecord& t, int e) const { return t.in_set.count_below(e); }

    /// Sign of the two root-to-endpoint alternating paths: 0 when the
    /// fundamental cycle of e holds an odd number of live edges, otherwise
    /// (-1)^(live edges from root to either endpoint); the two endpoint
    /// parities agree in the even case.
    int s_e(const TreeRecord& t, int e) const {
        if (!t.en_set.contains(e)) throw std::invalid_argument("s_e: edge is not external");
        int live_in_cycle = (cycle_set(g_, t.edges, e) & t.ia_set).count();
        auto [v1, v2] = g_.edge(e);
        int l1 = live_depth(t.lex_rank, v1);
        int l2 = live_depth(t.lex_rank, v2);
        if (live_in_cycle % 2 != 0) return 0;
        if ((l1 - l2) % 2 != 0)
            throw IntegrityError("endpoint live-path parities disagree on an even cycle");
        return l1 % 2 == 0 ? 1 : -1;
    }

    /// All generators for the given m, ordered by (tree rank, exponent
    /// tuple).
    std::vector<STGenerator> generators(int m) const {
        std::vector<STGenerator> out;
        for (const TreeRecord& t : trees_) {
            const int c = component_count(t.lex_rank);
            std::vector<int> expo(static_cast<std::size_t>(c), 1);
            expo[0] = 0;
            while (true) {
                STGenerator gen;
                gen.tree = t.lex_rank;
                gen.exponents = expo;
                gen.i = t.grading();
                gen.j = 0;
                for (int v : expo) gen.j += v;
                out.push_back(std::move(gen));
                int k = c - 1;
                while (k >= 0) {
                    int limit = m - 1;
                    if (expo[static_cast<std::size_t>(k)] < limit) {
                        ++expo[static_cast<std::size_t>(k)];
                        break;
                    }
                    expo[static_cast<std::size_t>(k)] = k == 0 ? 0 : 1;
                    --k;
                }
                if (k < 0) break;
            }
        }
        return out;
    }

    /// Differential for m = 2 in closed form: T+ maps over qualifying
    /// external edges with coefficient (-1)^xi * 2 * s_e onto the minus
    /// generator of the exchanged tree; T- maps to zero.
    std::vector<DifferentialTerm> differential_m2(const STGenerator& src) const {
        std::vector<DifferentialTerm> out;
        if (src.exponents.empty() || src.exponents[0] != 0) return out;  // T- vanishes
        const TreeRecord& t = tree(src.tree);
        for (int e : t.en_set.labels()) {
            int target_rank = qualifying_exchange(t, e);
            if (target_rank < 0) continue;
            int s = s_e(t, e);
            if (s == 0) continue;
            long long coeff = 2LL * s * (xi(t, e) % 2 == 0 ? 1 : -1);
            STGenerator target;
            target.tree = target_rank;
            target.exponents.assign(static_cast<std::size_t>(component_count(target_rank)), 1);
            target.i = src.i + 1;
            target.j = src.j;
            out.push_back({std::move(target), coeff});
        }
        return out;
    }

    /// Differential over Z[x]/<x^m>: for every qualifying external edge the
    /// direct merge term plus, per endpoint, one transport term for each
    /// non-vanishing live edge on the root-to-endpoint path of the
    /// contracted tree. Signs: (-1)^xi for the merge, (-1)^(xi + live edges
    /// traversed) for a transport. Terms with equal targets are summed and
    /// zero sums dropped.
    std::vector<DifferentialTerm> differential_am(const STGenerator& src, int m) const {
        const TreeRecord& t = tree(src.tree);
        const Info& inf = info(src.tree);
        std::map<STGenerator, long long> acc;

        for (int e : t.en_set.labels()) {
            int target_rank = qualifying_exchange(t, e);
            if (target_rank < 0) continue;
            int sign_xi = xi(t, e) % 2 == 0 ? 1 : -1;
            auto [v1, v2] = g_.edge(e);
            int c1 = inf.part.component_of[static_cast<std::size_t>(v1)];
            int c2 = inf.part.component_of[static_cast<std::size_t>(v2)];

            // Merge term: the two endpoint components multiply.
            int a = src.exponents[static_cast<std::size_t>(inf.slot_of_comp[static_cast<std::size_t>(c1)])];
            int b = src.exponents[static_cast<std::size_t>(inf.slot_of_comp[static_cast<std::size_t>(c2)])];
            if (a + b < m)
                acc[remap_target(src, target_rank, c1, c2, src.exponents, a + b)] += sign_xi;

            // Transport terms along each endpoint path.
            for (int side = 0; side < 2; ++side) {
                int end_comp = side == 0 ? c1 : c2;
                int other_comp = side == 0 ? c2 : c1;
                if (end_comp == inf.part.root_component) continue;
                std::vector<int> path;  // component indices, root first
                for (int c = end_comp; c >= 0; c = inf.parent_comp[static_cast<std::size_t>(c)])
                    path.push_back(c);
                std::reverse(path.begin(), path.end());
                const int r = static_cast<int>(path.size()) - 1;
                for (int p = 1; p <= r; ++p) {
                    int near = path[static_cast<std::size_t>(p - 1)];
                    int far = path[static_cast<std::size_t>(p)];
                    int near_expo =
                        src.exponents[static_cast<std::size_t>(inf.slot_of_comp[static_cast<std::size_t>(near)])];
                    int far_expo =
                        src.exponents[static_cast<std::size_t>(inf.slot_of_comp[static_cast<std::size_t>(far)])];
                    if (near_expo + far_expo >= m) continue;  // vanishing edge
                    std::vector<int> shifted = src.exponents;
                    auto slot = [&](int comp) {
                        return static_cast<std::size_t>(inf.slot_of_comp[static_cast<std::size_t>(comp)]);
                    };
                    shifted[slot(near)] = near_expo + far_expo;
                    for (int q = p; q < r; ++q)
                        shifted[slot(path[static_cast<std::size_t>(q)])] =
                            src.exponents[slot(path[static_cast<std::size_t>(q + 1)])];
                    shifted[slot(path[static_cast<std::size_t>(r)])] = 0;
                    int merged = shifted[slot(other_comp)];
                    int traversed = r - p + 1;
                    int sign = (xi(t, e) + traversed) % 2 == 0 ? 1 : -1;
                    acc[remap_target(src, target_rank, c1, c2, shifted, merged)] += sign;
                }
            }
        }

        std::vector<DifferentialTerm> out;
        for (const auto& [gen, coeff] : acc)
            if (coeff != 0) out.push_back({gen, coeff});
        return out;
    }

private:
    struct Info {
        ComponentPartition part;     // components of IN as spanning subgraph
        std::vector<int> slot_of_comp;
        std::vector<int> comp_of_slot;
        std::vector<int> vertex_slot;
        std::vector<int> parent_comp;  // contracted tree, -1 at the root
        std::vector<int> depth;
    };

    const Info& info(int rank) const { return info_[static_cast<std::size_t>(rank)]; }

    Info build_info(const TreeRecord& t) const {
        Info inf;
        inf.part = components(g_, t.in_set);
        const int c = inf.part.count();
        inf.slot_of_comp.assign(static_cast<std::size_t>(c), -1);
        inf.comp_of_slot.assign(static_cast<std::size_t>(c), -1);
        inf.slot_of_comp[static_cast<std::size_t>(inf.part.root_component)] = 0;
        inf.comp_of_slot[0] = inf.part.root_component;
        int next = 1;
        for (int comp = 0; comp < c; ++comp)
            if (comp != inf.part.root_component) {
                inf.slot_of_comp[static_cast<std::size_t>(comp)] = next;
                inf.comp_of_slot[static_cast<std::size_t>(next)] = comp;
                ++next;
            }
        inf.vertex_slot.assign(static_cast<std::size_t>(g_.vertex_count()), -1);
        for (int v = 0; v < g_.vertex_count(); ++v)
            inf.vertex_slot[static_cast<std::size_t>(v)] =
                inf.slot_of_comp[static_cast<std::size_t>(
                    inf.part.component_of[static_cast<std::size_t>(v)])];

        // BFS over the contraction: vertices are IN-components, edges the
        // live edges of the tree.
        std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(c));
        for (int f : t.ia_set.labels()) {
            auto [u, v] = g_.edge(f);
            int cu = inf.part.component_of[static_cast<std::size_t>(u)];
            int cv = inf.part.component_of[static_cast<std::size_t>(v)];
            adj[static_cast<std::size_t>(cu)].push_back({cv, f});
            adj[static_cast<std::size_t>(cv)].push_back({cu, f});
        }
        inf.parent_comp.assign(static_cast<std::size_t>(c), -2);
        inf.depth.assign(static_cast<std::size_t>(c), 0);
        std::vector<int> queue = {inf.part.root_component};
        inf.parent_comp[static_cast<std::size_t>(inf.part.root_component)] = -1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int comp = queue[head];
            for (auto [next_comp, label] : adj[static_cast<std::size_t>(comp)])
                if (inf.parent_comp[static_cast<std::size_t>(next_comp)] == -2) {
                    inf.parent_comp[static_cast<std::size_t>(next_comp)] = comp;
                    inf.depth[static_cast<std::size_t>(next_comp)] =
                        inf.depth[static_cast<std::size_t>(comp)] + 1;
                    queue.push_back(next_comp);
                }
        }
        return inf;
    }

    /// Exchange tree for external edge e when it carries a differential
    /// term: psi_e defined, the result an NBC tree one grading up whose dead
    /// set is IN(T) + e. Returns its lex rank, or -1.
    int qualifying_exchange(const TreeRecord& t, int e) const {
        std::optional<EdgeSet> image = psi_e(g_, t, e);
        if (!image) return -1;
        int rank = rank_of(*image);
        if (rank < 0) return -1;
        const TreeRecord& t2 = tree(rank);
        if (t2.grading() != t.grading() + 1) return -1;
        EdgeSet expected = t.in_set;
        expected.add(e);
        if (t2.in_set != expected) return -1;
        return rank;
    }

    /// Build the target generator on the exchanged tree: the components c1
    /// and c2 of IN(T) fuse into one component of IN(T') carrying
    /// merged_expo; every other component keeps its (possibly shifted)
    /// exponent.
    STGenerator remap_target(const STGenerator& src, int target_rank, int c1, int c2,
                             const std::vector<int>& shifted, int merged_expo) const {
        const Info& src_inf = info(src.tree);
        const Info& dst_inf = info(target_rank);
        STGenerator target;
        target.tree = target_rank;
        target.i = src.i + 1;
        target.j = src.j;
        target.exponents.assign(static_cast<std::size_t>(dst_inf.part.count()), 0);
        for (int dst_comp = 0; dst_comp < dst_inf.part.count(); ++dst_comp) {
            int witness = dst_inf.part.members[static_cast<std::size_t>(dst_comp)].front();
            int src_comp = src_inf.part.component_of[static_cast<std::size_t>(witness)];
            int value = (src_comp == c1 || src_comp == c2)
                            ? merged_expo
                            : shifted[static_cast<std::size_t>(
                                  src_inf.slot_of_comp[static_cast<std::size_t>(src_comp)])];
            target.exponents[static_cast<std::size_t>(
                dst_inf.slot_of_comp[static_cast<std::size_t>(dst_comp)])] = value;
        }
        int total = 0;
        for (int v : target.exponents) total += v;
        if (total != src.j) throw IntegrityError("differential term changed the quantum grading");
        return target;
    }

    OrderedGraph g_;
    std::vector<TreeRecord> trees_;
    std::map<EdgeSet, int> rank_of_;
    std::vector<Info> info_;
};

/// Assemble the bigraded spanning-tree complex for the given m. For m = 2
/// the closed-form differential is used; pass force_general to exercise the
/// general formula there as well.
inline BigradedComplex assemble_complex(const OrderedGraph& g, int m, bool with_labels = true,
                                        bool force_general = false) {
    if (m < 2) throw std::invalid_argument("m must be at least 2");
    STContext ctx(g);
    std::vector<STGenerator> gens = ctx.generators(m);

    std::map<std::pair<int, int>, std::vector<int>> stripe_members;  // (i,j) -> gen indices
    std::map<std::pair<int, std::pair<int, std::vector<int>>>, int> index_in_level;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        auto key = std::make_pair(gens[k].i, gens[k].j);
        index_in_level[{gens[k].j, {gens[k].tree, gens[k].exponents}}] =
            static_cast<int>(stripe_members[key].size());
        stripe_members[key].push_back(static_cast<int>(k));
    }

    BigradedComplex complex;
    complex.m = m;
    complex.model = "spanning-tree";

    std::map<int, std::pair<int, int>> i_range;  // j -> [i_min, i_max]
    for (const auto& [key, members] : stripe_members) {
        auto it = i_range.find(key.second);
        if (it == i_range.end())
            i_range[key.second] = {key.first, key.first};
        else {
            it->second.first = std::min(it->second.first, key.first);
            it->second.second = std::max(it->second.second, key.first);
        }
    }

    for (const auto& [j, range] : i_range) {
        Stripe stripe;
        stripe.i_lo = range.first;
        for (int i = range.first; i <= range.second; ++i) {
            auto it = stripe_members.find({i, j});
            int dim = it == stripe_members.end() ? 0 : static_cast<int>(it->second.size());
            stripe.dims.push_back(dim);
            if (with_labels) {
                std::vector<std::string> level_labels;
                if (it != stripe_members.end())
                    for (int gi : it->second) level_labels.push_back(gens[static_cast<std::size_t>(gi)].id());
                stripe.labels.push_back(std::move(level_labels));
            }
        }
        for (int level = 0; level < static_cast<int>(stripe.dims.size()); ++level) {
            int i = range.first + level;
            int rows = (level + 1 < static_cast<int>(stripe.dims.size()))
                           ? stripe.dims[static_cast<std::size_t>(level + 1)]
                           : 0;
            SparseMat d = SparseMat::zero(rows, stripe.dims[static_cast<std::size_t>(level)]);
            auto it = stripe_members.find({i, j});
            if (it != stripe_members.end() && rows > 0) {
                for (std::size_t colpos = 0; colpos < it->second.size(); ++colpos) {
                    const STGenerator& src = gens[static_cast<std::size_t>(it->second[colpos])];
                    std::vector<DifferentialTerm> terms =
                        (m == 2 && !force_general) ? ctx.differential_m2(src)
                                                   : ctx.differential_am(src, m);
                    std::vector<std::pair<int, std::int64_t>> col;
                    for (const DifferentialTerm& term : terms) {
                        int row = index_in_level.at({j, {term.target.tree, term.target.exponents}});
                        col.push_back({row, term.coefficient});
                    }
                    std::sort(col.begin(), col.end());
                    d.set_col(static_cast<int>(colpos), std::move(col));
                }
            }
            stripe.matrices.push_back(std::move(d));
        }
        complex.stripes[j] = std::move(stripe);
    }
    return complex;
}

}  // namespace chromahom

#endif  // CHROMAHOM_ST_COMPLEX_HPP
