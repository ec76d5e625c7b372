#ifndef CHROMAHOM_POLYNOMIAL_HPP
#define CHROMAHOM_POLYNOMIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "chromahom/graph.hpp"
#include "chromahom/snf.hpp"
#include "chromahom/tree_activity.hpp"

namespace chromahom {

/// Integer polynomial in one variable; coefficients[k] is the degree-k
/// coefficient, trailing zeros trimmed.
struct IntPolynomial {
    std::vector<BigInt> coefficients;

    void trim() {
        while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
    }
    int degree() const { return static_cast<int>(coefficients.size()) - 1; }

    BigInt coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coefficients.size())) return 0;
        return coefficients[static_cast<std::size_t>(k)];
    }

    BigInt eval(const BigInt& x) const {
        BigInt acc = 0;
        for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * x + coefficients[k];
        return acc;
    }

    static IntPolynomial constant(BigInt c) {
        IntPolynomial p;
        p.coefficients = {std::move(c)};
        p.trim();
        return p;
    }
    /// The monomial x^k.
    static IntPolynomial monomial(int k, BigInt c = 1) {
        IntPolynomial p;
        p.coefficients.assign(static_cast<std::size_t>(k + 1), 0);
        p.coefficients[static_cast<std::size_t>(k)] = std::move(c);
        p.trim();
        return p;
    }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial out;
        out.coefficients.assign(std::max(a.coefficients.size(), b.coefficients.size()), 0);
        for (std::size_t k = 0; k < out.coefficients.size(); ++k)
            out.coefficients[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
        out.trim();
        return out;
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial out;
        out.coefficients.assign(std::max(a.coefficients.size(), b.coefficients.size()), 0);
        for (std::size_t k = 0; k < out.coefficients.size(); ++k)
            out.coefficients[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
        out.trim();
        return out;
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        IntPolynomial out;
        if (a.coefficients.empty() || b.coefficients.empty()) return out;
        out.coefficients.assign(a.coefficients.size() + b.coefficients.size() - 1, 0);
        for (std::size_t i = 0; i < a.coefficients.size(); ++i)
            for (std::size_t k = 0; k < b.coefficients.size(); ++k)
                out.coefficients[i + k] += a.coefficients[i] * b.coefficients[k];
        out.trim();
        return out;
    }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coefficients == b.coefficients;
    }

    /// Substitute another polynomial for the variable.
    IntPolynomial compose(const IntPolynomial& inner) const {
        IntPolynomial acc;
        for (std::size_t k = coefficients.size(); k-- > 0;)
            acc = acc * inner + IntPolynomial::constant(coefficients[k]);
        return acc;
    }

    std::string to_string(const std::string& var) const {
        if (coefficients.empty()) return "0";
        std::string out;
        for (std::size_t k = coefficients.size(); k-- > 0;) {
            const BigInt& c = coefficients[k];
            if (c == 0) continue;
            std::string term;
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (k == 0) {
                term = a.str();
            } else {
                term = (a == 1 ? "" : a.str() + "*") + var;
                if (k > 1) term += "^" + std::to_string(k);
            }
            if (out.empty())
                out = (c < 0 ? "-" : "") + term;
            else
                out += (c < 0 ? " - " : " + ") + term;
        }
        return out;
    }
};

namespace detail {

/// Small multigraph-free graph for the deletion-contraction recursion:
/// adjacency bitmasks over at most 16 vertices.
struct DcGraph {
    std::vector<std::uint32_t> adj;

    int vertices() const { return static_cast<int>(adj.size()); }
    int edge_count() const {
        int total = 0;
        for (std::uint32_t row : adj) total += __builtin_popcount(row);
        return total / 2;
    }
    std::pair<int, int> first_edge() const {
        for (int u = 0; u < vertices(); ++u)
            if (adj[static_cast<std::size_t>(u)])
                return {u, __builtin_ctz(adj[static_cast<std::size_t>(u)])};
        return {-1, -1};
    }
    DcGraph delete_edge(int u, int v) const {
        DcGraph g = *this;
        g.adj[static_cast<std::size_t>(u)] &= ~(1u << v);
        g.adj[static_cast<std::size_t>(v)] &= ~(1u << u);
        return g;
    }
    /// Contract u-v, folding v's neighbors into u; parallel edges collapse.
    DcGraph contract_edge(int u, int v) const {
        DcGraph g;
        g.adj.assign(adj.size() - 1, 0);
        auto remap = [&](int w) { return w < v ? w : w - 1; };
        for (int a = 0; a < vertices(); ++a) {
            if (a == v) continue;
            for (int b = a + 1; b < vertices(); ++b) {
                if (b == v || !(adj[static_cast<std::size_t>(a)] >> b & 1)) continue;
                int na = remap(a), nb = remap(b);
                g.adj[static_cast<std::size_t>(na)] |= 1u << nb;
                g.adj[static_cast<std::size_t>(nb)] |= 1u << na;
            }
        }
        for (int w = 0; w < vertices(); ++w) {
            if (w == u || w == v || !(adj[static_cast<std::size_t>(v)] >> w & 1)) continue;
            int nu = remap(u), nw = remap(w);
            g.adj[static_cast<std::size_t>(nu)] |= 1u << nw;
            g.adj[static_cast<std::size_t>(nw)] |= 1u << nu;
        }
        return g;
    }

    /// Memoization key: adjacency after a deterministic degree-refined
    /// relabeling. Equal keys imply identical labeled graphs, so reuse is
    /// always sound; distinct keys merely forgo a cache hit.
    std::string canonical_key() const {
        const int n = vertices();
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
        std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> neighbor_degrees;
            for (int w = 0; w < n; ++w)
                if (adj[static_cast<std::size_t>(v)] >> w & 1)
                    neighbor_degrees.push_back(__builtin_popcount(adj[static_cast<std::size_t>(w)]));
            std::sort(neighbor_degrees.begin(), neighbor_degrees.end());
            sig[static_cast<std::size_t>(v)] = {__builtin_popcount(adj[static_cast<std::size_t>(v)]),
                                                std::move(neighbor_degrees)};
        }
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)];
        });
        std::vector<int> position(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) position[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
        std::string key(static_cast<std::size_t>(n * n + 1), '0');
        key[0] = static_cast<char>('a' + n);
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (adj[static_cast<std::size_t>(v)] >> w & 1)
                    key[static_cast<std::size_t>(1 + position[static_cast<std::size_t>(v)] * n +
                                                 position[static_cast<std::size_t>(w)])] = '1';
        return key;
    }
};

inline IntPolynomial chromatic_dc_recurse(const DcGraph& g,
                                          std::map<std::string, IntPolynomial>& memo) {
    if (g.edge_count() == 0) return IntPolynomial::monomial(g.vertices());
    std::string key = g.canonical_key();
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;
    auto [u, v] = g.first_edge();
    IntPolynomial result =
        chromatic_dc_recurse(g.delete_edge(u, v), memo) - chromatic_dc_recurse(g.contract_edge(u, v), memo);
    memo[key] = result;
    return result;
}

}  // namespace detail

/// Chromatic polynomial in lambda via deletion-contraction, with
/// memoization on a degree-refined canonical form.
inline IntPolynomial chromatic_poly_deletion_contraction(const OrderedGraph& g) {
    if (g.vertex_count() > 16)
        throw GuardError("deletion-contraction supports at most 16 vertices");
    detail::DcGraph dc;
    dc.adj.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        dc.adj[static_cast<std::size_t>(u)] |= 1u << v;
        dc.adj[static_cast<std::size_t>(v)] |= 1u << u;
    }
    std::map<std::string, IntPolynomial> memo;
    return detail::chromatic_dc_recurse(dc, memo);
}

/// Chromatic polynomial from NBC spanning trees:
///   P(G; lambda) = (-1)^(n-1) * lambda * sum_i t_i (1 - lambda)^i
/// where t_i counts NBC trees of internal activity i and n = |V|.
inline IntPolynomial chromatic_poly_nbc(const OrderedGraph& g) {
    std::map<int, BigInt> activity_counts;
    for (const TreeRecord& t : nbc_trees(g)) activity_counts[t.ia_set.count()] += 1;

    IntPolynomial one_minus_lambda;
    one_minus_lambda.coefficients = {1, -1};
    IntPolynomial sum;
    for (const auto& [activity, count] : activity_counts) {
        IntPolynomial pow = IntPolynomial::constant(1);
        for (int k = 0; k < activity; ++k) pow = pow * one_minus_lambda;
        sum = sum + pow * IntPolynomial::constant(count);
    }
    IntPolynomial lambda = IntPolynomial::monomial(1);
    int sign = (g.vertex_count() - 1) % 2 == 0 ? 1 : -1;
    return lambda * sum * IntPolynomial::constant(sign);
}

}  // namespace chromahom

#endif  // CHROMAHOM_POLYNOMIAL_HPP
