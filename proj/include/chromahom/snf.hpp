#ifndef CHROMAHOM_SNF_HPP
#define CHROMAHOM_SNF_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace chromahom {

using BigInt = boost::multiprecision::cpp_int;

/// Integer matrix in column-major sparse form. rows x cols with entries
/// (row index, value); columns are what the chain-group generators index.
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> col_entries;

    static SparseMat zero(int rows, int cols) {
        SparseMat m;
        m.rows = rows;
        m.cols = cols;
        m.col_entries.assign(static_cast<std::size_t>(cols), {});
        return m;
    }

    void set_col(int c, std::vector<std::pair<int, std::int64_t>> entries) {
        col_entries[static_cast<std::size_t>(c)] = std::move(entries);
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& col : col_entries) n += col.size();
        return n;
    }
};

/// True iff a*b == 0 as integer matrices (a has b.rows columns).
inline bool product_is_zero(const SparseMat& a, const SparseMat& b) {
    std::vector<BigInt> acc(static_cast<std::size_t>(a.rows));
    std::vector<int> touched;
    for (int c = 0; c < b.cols; ++c) {
        touched.clear();
        for (auto [mid, v] : b.col_entries[static_cast<std::size_t>(c)])
            for (auto [r, w] : a.col_entries[static_cast<std::size_t>(mid)]) {
                if (acc[static_cast<std::size_t>(r)] == 0) touched.push_back(r);
                acc[static_cast<std::size_t>(r)] += BigInt(v) * w;
            }
        bool zero = true;
        for (int r : touched) {
            if (acc[static_cast<std::size_t>(r)] != 0) zero = false;
            acc[static_cast<std::size_t>(r)] = 0;
        }
        if (!zero) return false;
    }
    return true;
}

struct SnfResult {
    std::vector<BigInt> invariant_factors;  // nonzero diagonal, d1 | d2 | ...
    int rank() const { return static_cast<int>(invariant_factors.size()); }

    std::vector<BigInt> nontrivial_factors() const {
        std::vector<BigInt> out;
        for (const BigInt& d : invariant_factors)
            if (d > 1) out.push_back(d);
        return out;
    }
};

namespace detail {

inline BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

/// Classical SNF on a small dense block, smallest-pivot heuristic to limit
/// entry growth. Exact unbounded integers throughout.
inline std::vector<BigInt> dense_snf(std::vector<std::vector<BigInt>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<BigInt> diag;
    int top = 0;
    while (true) {
        int pr = -1, pc = -1;
        BigInt best;
        for (int r = top; r < rows; ++r)
            for (int c = top; c < cols; ++c)
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                    BigInt v = big_abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
                    if (pr < 0 || v < best) {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
        if (pr < 0) break;
        std::swap(a[static_cast<std::size_t>(top)], a[static_cast<std::size_t>(pr)]);
        for (int r = 0; r < rows; ++r)
            std::swap(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(top)],
                      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)]);

        bool reduced = false;
        while (!reduced) {
            reduced = true;
            BigInt& pivot = a[static_cast<std::size_t>(top)][static_cast<std::size_t>(top)];
            for (int r = top + 1; r < rows; ++r) {
                BigInt& x = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(top)];
                if (x == 0) continue;
                BigInt q = x / pivot;
                if (q != 0)
                    for (int c = top; c < cols; ++c)
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                            q * a[static_cast<std::size_t>(top)][static_cast<std::size_t>(c)];
                if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(top)] != 0) {
                    // Remainder is smaller than the pivot; swap it up and redo.
                    std::swap(a[static_cast<std::size_t>(top)], a[static_cast<std::size_t>(r)]);
                    reduced = false;
                }
            }
            if (!reduced) continue;
            for (int c = top + 1; c < cols; ++c) {
                BigInt& x = a[static_cast<std::size_t>(top)][static_cast<std::size_t>(c)];
                if (x == 0) continue;
                BigInt q = x / pivot;
                if (q != 0)
                    for (int r = top; r < rows; ++r)
                        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                            q * a[static_cast<std::size_t>(r)][static_cast<std::size_t>(top)];
                if (a[static_cast<std::size_t>(top)][static_cast<std::size_t>(c)] != 0) {
                    for (int r = 0; r < rows; ++r)
                        std::swap(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(top)],
                                  a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
                    reduced = false;
                }
            }
            if (!reduced) continue;
            // Divisibility: fold in any entry the pivot does not divide.
            for (int r = top + 1; r < rows && reduced; ++r)
                for (int c = top + 1; c < cols && reduced; ++c)
                    if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] % pivot != 0) {
                        for (int cc = top; cc < cols; ++cc)
                            a[static_cast<std::size_t>(top)][static_cast<std::size_t>(cc)] +=
                                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)];
                        reduced = false;
                    }
        }
        diag.push_back(big_abs(a[static_cast<std::size_t>(top)][static_cast<std::size_t>(top)]));
        ++top;
        if (top >= rows || top >= cols) {
            for (int r = top; r < rows; ++r)
                for (int c = top; c < cols; ++c)
                    if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                        throw std::logic_error("dense_snf: residue outside pivot block");
            break;
        }
    }
    return diag;
}

}  // namespace detail

/// Smith normal form. Unit pivots (entries of absolute value 1) are
/// eliminated first on a sparse structure with a Markowitz-style fill
/// heuristic; whatever remains is finished with the classical dense
/// reduction above. Returns the nonzero invariant factors.
inline SnfResult smith_normal_form(const SparseMat& m) {
    // rows[r]: map col -> value, mirrored by col -> set of rows.
    std::vector<std::map<int, BigInt>> rows(static_cast<std::size_t>(m.rows));
    std::vector<std::set<int>> col_rows(static_cast<std::size_t>(m.cols));
    for (int c = 0; c < m.cols; ++c)
        for (auto [r, v] : m.col_entries[static_cast<std::size_t>(c)])
            if (v != 0) {
                rows[static_cast<std::size_t>(r)][c] = v;
                col_rows[static_cast<std::size_t>(c)].insert(r);
            }

    std::vector<bool> row_active(static_cast<std::size_t>(m.rows), true);
    std::vector<bool> col_active(static_cast<std::size_t>(m.cols), true);
    int unit_pivots = 0;

    // Lazy Markowitz queue of unit entries, keyed by
    // (row fill - 1) * (col fill - 1) at insertion time; stale or worsened
    // entries are revalidated on pop.
    auto score_of = [&](int r, int c) {
        return static_cast<std::uint64_t>(rows[static_cast<std::size_t>(r)].size() - 1) *
               static_cast<std::uint64_t>(col_rows[static_cast<std::size_t>(c)].size() - 1);
    };
    std::multimap<std::uint64_t, std::pair<int, int>> queue;
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)])
            if (v == 1 || v == -1) queue.insert({score_of(r, c), {r, c}});

    while (!queue.empty()) {
        auto head = queue.begin();
        auto [pr, pc] = head->second;
        std::uint64_t claimed = head->first;
        queue.erase(head);
        if (!row_active[static_cast<std::size_t>(pr)] || !col_active[static_cast<std::size_t>(pc)])
            continue;
        auto entry = rows[static_cast<std::size_t>(pr)].find(pc);
        if (entry == rows[static_cast<std::size_t>(pr)].end() ||
            (entry->second != 1 && entry->second != -1))
            continue;
        std::uint64_t current = score_of(pr, pc);
        if (current > claimed) {
            queue.insert({current, {pr, pc}});
            continue;
        }

        const BigInt pivot = entry->second;
        // Clear the pivot column with row operations (the only fill source),
        // then retire the pivot row and column; the row clear is implicit.
        std::vector<int> victims(col_rows[static_cast<std::size_t>(pc)].begin(),
                                 col_rows[static_cast<std::size_t>(pc)].end());
        for (int r : victims) {
            if (r == pr) continue;
            BigInt factor = rows[static_cast<std::size_t>(r)][pc] / pivot;
            for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)]) {
                auto& row = rows[static_cast<std::size_t>(r)];
                auto it = row.find(c);
                if (it == row.end()) {
                    BigInt value = -factor * v;
                    row[c] = value;
                    col_rows[static_cast<std::size_t>(c)].insert(r);
                    if (value == 1 || value == -1) queue.insert({score_of(r, c), {r, c}});
                } else {
                    it->second -= factor * v;
                    if (it->second == 0) {
                        row.erase(it);
                        col_rows[static_cast<std::size_t>(c)].erase(r);
                    } else if (it->second == 1 || it->second == -1) {
                        queue.insert({score_of(r, c), {r, c}});
                    }
                }
            }
        }
        for (const auto& [c, v] : rows[static_cast<std::size_t>(pr)])
            col_rows[static_cast<std::size_t>(c)].erase(pr);
        rows[static_cast<std::size_t>(pr)].clear();
        row_active[static_cast<std::size_t>(pr)] = false;
        col_active[static_cast<std::size_t>(pc)] = false;
        ++unit_pivots;
    }

    // Dense finish on the active submatrix.
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < m.rows; ++r)
        if (row_active[static_cast<std::size_t>(r)] && !rows[static_cast<std::size_t>(r)].empty())
            live_rows.push_back(r);
    std::vector<bool> col_used(static_cast<std::size_t>(m.cols), false);
    for (int r : live_rows)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(r)]) col_used[static_cast<std::size_t>(c)] = true;
    for (int c = 0; c < m.cols; ++c)
        if (col_active[static_cast<std::size_t>(c)] && col_used[static_cast<std::size_t>(c)])
            live_cols.push_back(c);

    std::vector<BigInt> core_factors;
    if (!live_rows.empty()) {
        std::vector<std::vector<BigInt>> dense(
            live_rows.size(), std::vector<BigInt>(live_cols.size()));
        std::map<int, int> col_index;
        for (std::size_t i = 0; i < live_cols.size(); ++i)
            col_index[live_cols[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : rows[static_cast<std::size_t>(live_rows[i])])
                dense[i][static_cast<std::size_t>(col_index[c])] = v;
        core_factors = detail::dense_snf(std::move(dense));
    }

    SnfResult result;
    result.invariant_factors.assign(static_cast<std::size_t>(unit_pivots), BigInt(1));
    for (const BigInt& d : core_factors) result.invariant_factors.push_back(d);
    return result;
}

/// Convenience overload for small dense inputs (tests, examples).
inline SnfResult smith_normal_form(const std::vector<std::vector<std::int64_t>>& dense) {
    int rows = static_cast<int>(dense.size());
    int cols = rows ? static_cast<int>(dense[0].size()) : 0;
    SparseMat m = SparseMat::zero(rows, cols);
    for (int c = 0; c < cols; ++c) {
        std::vector<std::pair<int, std::int64_t>> col;
        for (int r = 0; r < rows; ++r)
            if (dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                col.push_back({r, dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]});
        m.set_col(c, std::move(col));
    }
    return smith_normal_form(m);
}

}  // namespace chromahom

#endif  // CHROMAHOM_SNF_HPP
