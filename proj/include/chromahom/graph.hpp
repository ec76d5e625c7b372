#ifndef CHROMAHOM_GRAPH_HPP
#define CHROMAHOM_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chromahom {

/// Error raised while building or validating a graph. Each failure mode has
/// its own code so callers can map it to a distinct diagnostic.
class GraphError : public std::runtime_error {
public:
    enum class Code {
        malformed_document,
        loop_edge,
        duplicate_edge,
        disconnected,
        unknown_root,
        unknown_vertex,
        bad_order,
        too_many_edges,
        duplicate_vertex,
    };

    GraphError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// Raised when an operation exceeds a configured size guard.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an assembled complex fails an internal consistency check
/// (e.g. the composite of consecutive differentials is nonzero).
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Subset of the edges of an OrderedGraph, stored as a bitset over the
/// 1-based edge labels. Supports at most 64 edges.
struct EdgeSet {
    std::uint64_t bits = 0;

    static EdgeSet full(int n_edges) {
        EdgeSet s;
        s.bits = n_edges == 64 ? ~0ull : ((1ull << n_edges) - 1);
        return s;
    }
    static EdgeSet of(std::initializer_list<int> labels) {
        EdgeSet s;
        for (int e : labels) s.add(e);
        return s;
    }

    bool contains(int label) const { return (bits >> (label - 1)) & 1u; }
    void add(int label) { bits |= 1ull << (label - 1); }
    void remove(int label) { bits &= ~(1ull << (label - 1)); }
    int count() const { return __builtin_popcountll(bits); }
    bool empty() const { return bits == 0; }

    /// Smallest label in the set; 0 when empty.
    int min_label() const { return bits ? __builtin_ctzll(bits) + 1 : 0; }
    /// Largest label in the set; 0 when empty.
    int max_label() const { return bits ? 64 - __builtin_clzll(bits) : 0; }

    std::vector<int> labels() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (std::uint64_t b = bits; b; b &= b - 1) out.push_back(__builtin_ctzll(b) + 1);
        return out;
    }

    /// Labels strictly below `label`.
    int count_below(int label) const {
        std::uint64_t mask = (label <= 1) ? 0 : ((1ull << (label - 1)) - 1);
        return __builtin_popcountll(bits & mask);
    }

    friend EdgeSet operator|(EdgeSet a, EdgeSet b) { return EdgeSet{a.bits | b.bits}; }
    friend EdgeSet operator&(EdgeSet a, EdgeSet b) { return EdgeSet{a.bits & b.bits}; }
    friend EdgeSet operator-(EdgeSet a, EdgeSet b) { return EdgeSet{a.bits & ~b.bits}; }
    friend bool operator==(EdgeSet a, EdgeSet b) { return a.bits == b.bits; }
    friend bool operator!=(EdgeSet a, EdgeSet b) { return a.bits != b.bits; }
    friend bool operator<(EdgeSet a, EdgeSet b) { return a.bits < b.bits; }

    bool subset_of(EdgeSet other) const { return (bits & ~other.bits) == 0; }
};

/// Connected simple graph with a total order on its edges (1-based labels)
/// and a distinguished root vertex. Immutable after construction; all
/// queries are pure, so instances can be shared freely across threads.
class OrderedGraph {
public:
    /// Validating factory. `edges` are listed in file order; when `order` is
    /// present, order[k] is the label assigned to the k-th listed edge,
    /// otherwise labels follow list position. Root defaults to the first
    /// vertex.
    static OrderedGraph create(std::vector<std::string> vertex_names,
                               const std::vector<std::pair<std::string, std::string>>& edges,
                               const std::optional<std::string>& root = std::nullopt,
                               const std::optional<std::vector<int>>& order = std::nullopt,
                               std::string name = "") {
        OrderedGraph g;
        g.name_ = std::move(name);
        g.vertex_names_ = std::move(vertex_names);
        if (g.vertex_names_.empty())
            throw GraphError(GraphError::Code::malformed_document, "graph has no vertices");
        for (std::size_t i = 0; i < g.vertex_names_.size(); ++i) {
            for (std::size_t k = i + 1; k < g.vertex_names_.size(); ++k)
                if (g.vertex_names_[i] == g.vertex_names_[k])
                    throw GraphError(GraphError::Code::duplicate_vertex,
                                     "duplicate vertex label '" + g.vertex_names_[i] + "'");
        }
        const int n = static_cast<int>(edges.size());
        if (n > 64)
            throw GraphError(GraphError::Code::too_many_edges,
                             "at most 64 edges are supported, got " + std::to_string(n));

        std::vector<int> labels(edges.size());
        if (order) {
            if (static_cast<int>(order->size()) != n)
                throw GraphError(GraphError::Code::bad_order,
                                 "order array length does not match edge count");
            std::vector<bool> seen(edges.size(), false);
            for (int k = 0; k < n; ++k) {
                int lab = (*order)[static_cast<std::size_t>(k)];
                if (lab < 1 || lab > n || seen[static_cast<std::size_t>(lab - 1)])
                    throw GraphError(GraphError::Code::bad_order,
                                     "order array is not a permutation of 1.." + std::to_string(n));
                seen[static_cast<std::size_t>(lab - 1)] = true;
                labels[static_cast<std::size_t>(k)] = lab;
            }
        } else {
            for (int k = 0; k < n; ++k) labels[static_cast<std::size_t>(k)] = k + 1;
        }

        g.edges_.assign(edges.size(), {-1, -1});
        for (int k = 0; k < n; ++k) {
            int u = g.find_vertex(edges[static_cast<std::size_t>(k)].first);
            int v = g.find_vertex(edges[static_cast<std::size_t>(k)].second);
            if (u < 0 || v < 0)
                throw GraphError(GraphError::Code::unknown_vertex,
                                 "edge endpoint not in the vertex list: {" +
                                     edges[static_cast<std::size_t>(k)].first + "," +
                                     edges[static_cast<std::size_t>(k)].second + "}");
            if (u == v)
                throw GraphError(GraphError::Code::loop_edge,
                                 "loop edge at vertex '" + g.vertex_names_[static_cast<std::size_t>(u)] + "'");
            if (u > v) std::swap(u, v);
            g.edges_[static_cast<std::size_t>(labels[static_cast<std::size_t>(k)] - 1)] = {u, v};
        }
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (g.edge(a) == g.edge(b))
                    throw GraphError(GraphError::Code::duplicate_edge,
                                     "parallel edges with labels " + std::to_string(a) + " and " +
                                         std::to_string(b));

        if (root) {
            g.root_ = g.find_vertex(*root);
            if (g.root_ < 0)
                throw GraphError(GraphError::Code::unknown_root, "unknown root vertex '" + *root + "'");
        } else {
            g.root_ = 0;
        }

        g.adjacency_.assign(g.vertex_names_.size(), {});
        for (int e = 1; e <= n; ++e) {
            auto [u, v] = g.edge(e);
            g.adjacency_[static_cast<std::size_t>(u)].push_back({v, e});
            g.adjacency_[static_cast<std::size_t>(v)].push_back({u, e});
        }

        if (!g.connected_under(EdgeSet::full(n)))
            throw GraphError(GraphError::Code::disconnected, "graph is not connected");
        return g;
    }

    int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::string& name() const { return name_; }
    const std::string& vertex_name(int v) const { return vertex_names_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }
    int root() const { return root_; }

    int find_vertex(const std::string& label) const {
        for (std::size_t i = 0; i < vertex_names_.size(); ++i)
            if (vertex_names_[i] == label) return static_cast<int>(i);
        return -1;
    }

    /// Endpoints (as vertex indices, smaller first) of the edge with the
    /// given 1-based label.
    std::pair<int, int> edge(int label) const { return edges_[static_cast<std::size_t>(label - 1)]; }

    EdgeSet all_edges() const { return EdgeSet::full(edge_count()); }

    /// (neighbor, edge label) pairs incident to v.
    const std::vector<std::pair<int, int>>& neighbors(int v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    bool connected_under(EdgeSet s) const {
        if (vertex_count() == 0) return false;
        std::vector<bool> seen(static_cast<std::size_t>(vertex_count()), false);
        std::vector<int> stack = {0};
        seen[0] = true;
        int visited = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (auto [w, e] : neighbors(v))
                if (s.contains(e) && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    ++visited;
                    stack.push_back(w);
                }
        }
        return visited == vertex_count();
    }

    bool is_spanning_tree(EdgeSet s) const {
        return s.count() == vertex_count() - 1 && connected_under(s);
    }

private:
    std::string name_;
    std::vector<std::string> vertex_names_;
    std::vector<std::pair<int, int>> edges_;  // index = label - 1
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    int root_ = 0;
};

/// Partition of the vertex set into the connected components of a spanning
/// subgraph. Components are indexed in increasing order of their smallest
/// vertex, which makes the index stable across calls.
struct ComponentPartition {
    std::vector<int> component_of;        // vertex -> component index
    std::vector<std::vector<int>> members;  // component index -> sorted vertices
    int root_component = -1;

    int count() const { return static_cast<int>(members.size()); }
};

inline ComponentPartition components(const OrderedGraph& g, EdgeSet s) {
    const int nv = g.vertex_count();
    std::vector<int> parent(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) parent[static_cast<std::size_t>(v)] = v;
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (int e : s.labels()) {
        auto [u, v] = g.edge(e);
        int ru = find(u), rv = find(v);
        if (ru != rv) parent[static_cast<std::size_t>(std::max(ru, rv))] = std::min(ru, rv);
    }
    // Roots are the minimum vertex of each component, so scanning vertices in
    // order yields components sorted by smallest member.
    ComponentPartition part;
    part.component_of.assign(static_cast<std::size_t>(nv), -1);
    for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (part.component_of[static_cast<std::size_t>(r)] < 0) {
            part.component_of[static_cast<std::size_t>(r)] = static_cast<int>(part.members.size());
            part.members.push_back({});
        }
        int c = part.component_of[static_cast<std::size_t>(r)];
        part.component_of[static_cast<std::size_t>(v)] = c;
        part.members[static_cast<std::size_t>(c)].push_back(v);
    }
    part.root_component = part.component_of[static_cast<std::size_t>(g.root())];
    return part;
}

/// Edges of g that reconnect the two components of t - e. Always contains e.
inline EdgeSet cut_set(const OrderedGraph& g, EdgeSet t, int e) {
    if (!t.contains(e)) throw std::invalid_argument("cut_set: edge is not in the tree");
    EdgeSet t_minus = t;
    t_minus.remove(e);
    ComponentPartition part = components(g, t_minus);
    auto [u, v] = g.edge(e);
    int cu = part.component_of[static_cast<std::size_t>(u)];
    int cv = part.component_of[static_cast<std::size_t>(v)];
    EdgeSet cut;
    for (int label = 1; label <= g.edge_count(); ++label) {
        auto [a, b] = g.edge(label);
        int ca = part.component_of[static_cast<std::size_t>(a)];
        int cb = part.component_of[static_cast<std::size_t>(b)];
        if ((ca == cu && cb == cv) || (ca == cv && cb == cu)) cut.add(label);
    }
    return cut;
}

/// Edge labels of the simple u-v path inside the spanning tree t, in path
/// order starting from u. Empty when u == v.
inline std::vector<int> unique_path(const OrderedGraph& g, EdgeSet t, int u, int v) {
    if (u == v) return {};
    const int nv = g.vertex_count();
    std::vector<int> prev_vertex(static_cast<std::size_t>(nv), -1);
    std::vector<int> prev_edge(static_cast<std::size_t>(nv), 0);
    std::queue<int> q;
    q.push(u);
    prev_vertex[static_cast<std::size_t>(u)] = u;
    while (!q.empty()) {
        int w = q.front();
        q.pop();
        if (w == v) break;
        for (auto [x, e] : g.neighbors(w))
            if (t.contains(e) && prev_vertex[static_cast<std::size_t>(x)] < 0) {
                prev_vertex[static_cast<std::size_t>(x)] = w;
                prev_edge[static_cast<std::size_t>(x)] = e;
                q.push(x);
            }
    }
    std::vector<int> path;
    for (int w = v; w != u; w = prev_vertex[static_cast<std::size_t>(w)])
        path.push_back(prev_edge[static_cast<std::size_t>(w)]);
    std::reverse(path.begin(), path.end());
    return path;
}

/// Fundamental cycle of the external edge f with respect to the spanning
/// tree t (tree path between f's endpoints plus f itself).
inline EdgeSet cycle_set(const OrderedGraph& g, EdgeSet t, int f) {
    if (t.contains(f)) throw std::invalid_argument("cycle_set: edge already belongs to the tree");
    auto [u, v] = g.edge(f);
    EdgeSet cyc;
    cyc.add(f);
    for (int e : unique_path(g, t, u, v)) cyc.add(e);
    return cyc;
}

/// Block decomposition: every edge lies in exactly one block, each block a
/// maximal 2-connected subgraph or a single bridge.
struct BlockDecomposition {
    std::vector<EdgeSet> blocks;  // ordered by smallest contained edge label
    int count() const { return static_cast<int>(blocks.size()); }
};

inline BlockDecomposition blocks(const OrderedGraph& g) {
    const int nv = g.vertex_count();
    std::vector<int> disc(static_cast<std::size_t>(nv), -1), low(static_cast<std::size_t>(nv), 0);
    std::vector<int> edge_stack;
    BlockDecomposition dec;
    int timer = 0;

    // Iterative Tarjan; frames keep a cursor into the adjacency list.
    struct Frame {
        int v;
        int parent_edge;
        std::size_t next = 0;
    };
    for (int start = 0; start < nv; ++start) {
        if (disc[static_cast<std::size_t>(start)] >= 0) continue;
        std::vector<Frame> stack;
        stack.push_back({start, 0});
        disc[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = timer++;
        while (!stack.empty()) {
            Frame& fr = stack.back();
            const auto& adj = g.neighbors(fr.v);
            if (fr.next < adj.size()) {
                auto [w, e] = adj[fr.next++];
                if (e == fr.parent_edge) continue;
                if (disc[static_cast<std::size_t>(w)] < 0) {
                    edge_stack.push_back(e);
                    disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                    stack.push_back({w, e});
                } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(fr.v)]) {
                    edge_stack.push_back(e);
                    low[static_cast<std::size_t>(fr.v)] =
                        std::min(low[static_cast<std::size_t>(fr.v)], disc[static_cast<std::size_t>(w)]);
                }
            } else {
                int v = fr.v;
                int pe = fr.parent_edge;
                stack.pop_back();
                if (!stack.empty()) {
                    int p = stack.back().v;
                    low[static_cast<std::size_t>(p)] =
                        std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                    if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)]) {
                        EdgeSet block;
                        while (!edge_stack.empty()) {
                            int e = edge_stack.back();
                            edge_stack.pop_back();
                            block.add(e);
                            if (e == pe) break;
                        }
                        if (!block.empty()) dec.blocks.push_back(block);
                    }
                }
            }
        }
    }
    std::sort(dec.blocks.begin(), dec.blocks.end(),
              [](EdgeSet a, EdgeSet b) { return a.min_label() < b.min_label(); });
    return dec;
}

/// Identify the roots of two graphs, keeping g1's labels and appending g2's
/// edges after g1's in the edge order. Colliding vertex names from g2 get a
/// prime suffix.
inline OrderedGraph glue_at_roots(const OrderedGraph& g1, const OrderedGraph& g2,
                                  const std::string& name = "") {
    std::vector<std::string> names = g1.vertex_names();
    std::vector<std::string> mapped(static_cast<std::size_t>(g2.vertex_count()));
    for (int v = 0; v < g2.vertex_count(); ++v) {
        if (v == g2.root()) {
            mapped[static_cast<std::size_t>(v)] = g1.vertex_name(g1.root());
            continue;
        }
        std::string candidate = g2.vertex_name(v);
        auto taken = [&](const std::string& s) {
            return std::find(names.begin(), names.end(), s) != names.end();
        };
        while (taken(candidate)) candidate += "'";
        names.push_back(candidate);
        mapped[static_cast<std::size_t>(v)] = candidate;
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int e = 1; e <= g1.edge_count(); ++e) {
        auto [u, v] = g1.edge(e);
        edges.push_back({g1.vertex_name(u), g1.vertex_name(v)});
    }
    for (int e = 1; e <= g2.edge_count(); ++e) {
        auto [u, v] = g2.edge(e);
        edges.push_back({mapped[static_cast<std::size_t>(u)], mapped[static_cast<std::size_t>(v)]});
    }
    return OrderedGraph::create(names, edges, g1.vertex_name(g1.root()), std::nullopt, name);
}

}  // namespace chromahom

#endif  // CHROMAHOM_GRAPH_HPP
