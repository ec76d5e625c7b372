#ifndef CHROMAHOM_HOMOLOGY_HPP
#define CHROMAHOM_HOMOLOGY_HPP

#include <future>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chromahom/graph.hpp"
#include "chromahom/polynomial.hpp"
#include "chromahom/snf.hpp"

namespace chromahom {

/// One quantum grading j of a bigraded cochain complex: chain dimensions
/// and differentials D_k : C_{i_lo+k, j} -> C_{i_lo+k+1, j}. The last
/// differential out of the stripe is the zero map and is stored too, so
/// matrices.size() == dims.size().
struct Stripe {
    int i_lo = 0;
    std::vector<int> dims;
    std::vector<SparseMat> matrices;
    std::vector<std::vector<std::string>> labels;  // may be empty when not requested
};

/// j-indexed family of stripes; the differential preserves j and raises i.
struct BigradedComplex {
    int m = 2;
    std::string model;
    std::map<int, Stripe> stripes;

    int dim(int i, int j) const {
        auto it = stripes.find(j);
        if (it == stripes.end()) return 0;
        int k = i - it->second.i_lo;
        if (k < 0 || k >= static_cast<int>(it->second.dims.size())) return 0;
        return it->second.dims[static_cast<std::size_t>(k)];
    }
};

struct HomologyGroup {
    long long free_rank = 0;
    std::vector<long long> torsion;  // invariant factors > 1, ascending

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const HomologyGroup& a, const HomologyGroup& b) { return !(a == b); }
};

struct HomologyTable {
    std::map<std::pair<int, int>, HomologyGroup> groups;  // (i, j) -> group, nontrivial only

    HomologyGroup at(int i, int j) const {
        auto it = groups.find({i, j});
        return it == groups.end() ? HomologyGroup{} : it->second;
    }

    /// Collapse the quantum grading: free ranks add, torsion factors pool
    /// into one ascending multiset per i.
    std::map<int, HomologyGroup> by_grading() const {
        std::map<int, HomologyGroup> out;
        for (const auto& [key, group] : groups) {
            HomologyGroup& agg = out[key.first];
            agg.free_rank += group.free_rank;
            agg.torsion.insert(agg.torsion.end(), group.torsion.begin(), group.torsion.end());
        }
        for (auto& [i, group] : out) std::sort(group.torsion.begin(), group.torsion.end());
        return out;
    }

    /// Free ranks per homological grading, 0..max; empty for the zero table.
    std::vector<long long> betti() const {
        std::vector<long long> out;
        for (const auto& [i, group] : by_grading()) {
            if (i >= static_cast<int>(out.size())) out.resize(static_cast<std::size_t>(i) + 1, 0);
            out[static_cast<std::size_t>(i)] = group.free_rank;
        }
        return out;
    }

    friend bool operator==(const HomologyTable& a, const HomologyTable& b) {
        return a.groups == b.groups;
    }
};

namespace detail {

inline void stripe_homology(const Stripe& stripe, int j,
                            std::map<std::pair<int, int>, HomologyGroup>& out) {
    const int levels = static_cast<int>(stripe.dims.size());
    std::vector<SnfResult> snf(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k)
        snf[static_cast<std::size_t>(k)] = smith_normal_form(stripe.matrices[static_cast<std::size_t>(k)]);
    for (int k = 0; k < levels; ++k) {
        int rank_out = snf[static_cast<std::size_t>(k)].rank();
        int rank_in = k > 0 ? snf[static_cast<std::size_t>(k - 1)].rank() : 0;
        HomologyGroup group;
        group.free_rank = stripe.dims[static_cast<std::size_t>(k)] - rank_out - rank_in;
        if (group.free_rank < 0)
            throw IntegrityError("negative free rank; differential is inconsistent");
        if (k > 0)
            for (const BigInt& d : snf[static_cast<std::size_t>(k - 1)].nontrivial_factors())
                group.torsion.push_back(static_cast<long long>(d));
        if (!group.trivial()) out[{stripe.i_lo + k, j}] = group;
    }
}

}  // namespace detail

/// Throws IntegrityError unless consecutive differentials compose to zero in
/// every stripe.
inline void check_d_squared(const BigradedComplex& c) {
    for (const auto& [j, stripe] : c.stripes)
        for (std::size_t k = 0; k + 1 < stripe.matrices.size(); ++k)
            if (!product_is_zero(stripe.matrices[k + 1], stripe.matrices[k]))
                throw IntegrityError("d^2 != 0 in stripe j=" + std::to_string(j) + " at i=" +
                                     std::to_string(stripe.i_lo + static_cast<int>(k)));
}

/// Exact integer homology per (i, j) via Smith normal form. Stripes are
/// independent; with threads > 1 they are processed concurrently and merged
/// in j order.
inline HomologyTable homology(const BigradedComplex& c, int threads = 1) {
    check_d_squared(c);
    HomologyTable table;
    if (threads <= 1) {
        for (const auto& [j, stripe] : c.stripes) detail::stripe_homology(stripe, j, table.groups);
        return table;
    }
    std::vector<std::pair<int, const Stripe*>> work;
    for (const auto& [j, stripe] : c.stripes) work.push_back({j, &stripe});
    std::vector<std::future<std::map<std::pair<int, int>, HomologyGroup>>> futures;
    std::size_t chunk = (work.size() + static_cast<std::size_t>(threads) - 1) /
                        static_cast<std::size_t>(threads);
    for (std::size_t begin = 0; begin < work.size(); begin += chunk) {
        std::size_t end = std::min(begin + chunk, work.size());
        futures.push_back(std::async(std::launch::async, [&work, begin, end]() {
            std::map<std::pair<int, int>, HomologyGroup> part;
            for (std::size_t k = begin; k < end; ++k)
                detail::stripe_homology(*work[k].second, work[k].first, part);
            return part;
        }));
    }
    for (auto& f : futures) {
        auto part = f.get();
        table.groups.insert(part.begin(), part.end());
    }
    return table;
}

/// Graded Euler characteristic sum_{i,j} (-1)^i q^j dim C_{i,j} as a
/// polynomial in q.
inline IntPolynomial graded_euler_characteristic(const BigradedComplex& c) {
    IntPolynomial chi;
    for (const auto& [j, stripe] : c.stripes)
        for (std::size_t k = 0; k < stripe.dims.size(); ++k) {
            int i = stripe.i_lo + static_cast<int>(k);
            int sign = i % 2 == 0 ? 1 : -1;
            chi = chi + IntPolynomial::monomial(j, sign * stripe.dims[k]);
        }
    return chi;
}

/// Same alternating sum computed from homology free ranks; equal to the
/// chain-level value by rank-nullity.
inline IntPolynomial graded_euler_characteristic(const HomologyTable& table) {
    IntPolynomial chi;
    for (const auto& [key, group] : table.groups) {
        int sign = key.first % 2 == 0 ? 1 : -1;
        chi = chi + IntPolynomial::monomial(key.second, sign * group.free_rank);
    }
    return chi;
}

}  // namespace chromahom

#endif  // CHROMAHOM_HOMOLOGY_HPP
