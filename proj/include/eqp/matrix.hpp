#ifndef EQP_MATRIX_HPP
#define EQP_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "eqp/numeric.hpp"

namespace eqp {

/// Sparse integer matrix with arbitrary-precision entries.
struct IntegerMatrix {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, Int> entries;

    IntegerMatrix() = default;
    IntegerMatrix(int r, int c) : rows(r), cols(c) {}

    void set(int r, int c, Int v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw std::out_of_range("IntegerMatrix::set: index out of range");
        if (v == 0)
            entries.erase({r, c});
        else
            entries[{r, c}] = std::move(v);
    }

    Int get(int r, int c) const {
        auto it = entries.find({r, c});
        return it == entries.end() ? Int(0) : it->second;
    }

    void add(int r, int c, const Int& v) { set(r, c, get(r, c) + v); }
};

namespace detail {

/// Classic dense Smith reduction; optionally tracks unimodular U, V with
/// U * M * V diagonal.  Suitable for small matrices.
struct DenseSnf {
    std::vector<std::vector<Int>> a;
    std::vector<std::vector<Int>> U, V;
    bool track;
    int rows, cols;

    DenseSnf(std::vector<std::vector<Int>> m, bool with_transforms)
        : a(std::move(m)), track(with_transforms) {
        rows = static_cast<int>(a.size());
        cols = rows ? static_cast<int>(a[0].size()) : 0;
        if (track) {
            U.assign(rows, std::vector<Int>(rows, 0));
            V.assign(cols, std::vector<Int>(cols, 0));
            for (int i = 0; i < rows; ++i) U[i][i] = 1;
            for (int j = 0; j < cols; ++j) V[j][j] = 1;
        }
    }

    void swap_rows(int i, int j) {
        std::swap(a[i], a[j]);
        if (track) std::swap(U[i], U[j]);
    }
    void swap_cols(int i, int j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        if (track)
            for (auto& row : V) std::swap(row[i], row[j]);
    }
    void add_row(int dst, int src, const Int& f) {   // row dst += f * row src
        for (int c = 0; c < cols; ++c) a[dst][c] += f * a[src][c];
        if (track)
            for (int c = 0; c < rows; ++c) U[dst][c] += f * U[src][c];
    }
    void add_col(int dst, int src, const Int& f) {
        for (int r = 0; r < rows; ++r) a[r][dst] += f * a[r][src];
        if (track)
            for (int r = 0; r < cols; ++r) V[r][dst] += f * V[r][src];
    }
    void negate_row(int i) {
        for (auto& v : a[i]) v = -v;
        if (track)
            for (auto& v : U[i]) v = -v;
    }

    std::vector<Int> run() {
        int s = 0;
        const int nmin = std::min(rows, cols);
        while (s < nmin) {
            // Locate the smallest nonzero entry in the trailing submatrix.
            int pr = -1, pc = -1;
            Int best = 0;
            for (int r = s; r < rows; ++r)
                for (int c = s; c < cols; ++c) {
                    if (a[r][c] == 0) continue;
                    Int v = abs(a[r][c]);
                    if (pr < 0 || v < best) {
                        best = v;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) break;
            swap_rows(s, pr);
            swap_cols(s, pc);

            bool clean = true;
            for (int r = s + 1; r < rows; ++r)
                if (a[r][s] != 0) {
                    Int q = a[r][s] / a[s][s];
                    if (q != 0) add_row(r, s, -q);
                    if (a[r][s] != 0) clean = false;
                }
            for (int c = s + 1; c < cols; ++c)
                if (a[s][c] != 0) {
                    Int q = a[s][c] / a[s][s];
                    if (q != 0) add_col(c, s, -q);
                    if (a[s][c] != 0) clean = false;
                }
            if (!clean) continue;   // smaller remainders appeared; re-pivot

            // Enforce that the pivot divides the whole trailing block.
            bool divides = true;
            for (int r = s + 1; r < rows && divides; ++r)
                for (int c = s + 1; c < cols && divides; ++c)
                    if (a[r][c] % a[s][s] != 0) {
                        add_row(s, r, 1);
                        divides = false;
                    }
            if (!divides) continue;

            if (a[s][s] < 0) negate_row(s);
            ++s;
        }
        std::vector<Int> d;
        for (int i = 0; i < nmin; ++i)
            if (a[i][i] != 0) d.push_back(abs(a[i][i]));
        return d;
    }
};

} // namespace detail

/// Invariant factors d1 | d2 | ... of M (nonzero ones only).
///
/// Entries of unit absolute value are eliminated first on the sparse
/// representation, choosing pivots with a small fill estimate; whatever
/// remains without units is finished by the dense reduction.
inline std::vector<Int> smith_normal_form(const IntegerMatrix& M) {
    std::vector<std::map<int, Int>> row(M.rows);
    std::vector<std::set<int>> col_rows(M.cols);
    for (const auto& [rc, v] : M.entries) {
        row[rc.first][rc.second] = v;
        col_rows[rc.second].insert(rc.first);
    }
    std::vector<bool> row_done(M.rows, false), col_done(M.cols, false);
    long long unit_pivots = 0;

    auto erase_entry = [&](int r, int c) {
        row[r].erase(c);
        col_rows[c].erase(r);
    };
    auto set_entry = [&](int r, int c, Int v) {
        if (v == 0) {
            erase_entry(r, c);
        } else {
            if (row[r].find(c) == row[r].end()) col_rows[c].insert(r);
            row[r][c] = std::move(v);
        }
    };

    while (true) {
        // Best unit pivot by Markowitz fill estimate.
        int pr = -1, pc = -1;
        long long best = -1;
        for (int r = 0; r < M.rows; ++r) {
            if (row_done[r] || row[r].empty()) continue;
            for (const auto& [c, v] : row[r]) {
                if (col_done[c]) continue;
                if (v != 1 && v != -1) continue;
                long long fill = static_cast<long long>(row[r].size() - 1) *
                                 static_cast<long long>(col_rows[c].size() - 1);
                if (best < 0 || fill < best) {
                    best = fill;
                    pr = r;
                    pc = c;
                    if (fill == 0) break;
                }
            }
            if (best == 0) break;
        }
        if (pr < 0) break;

        const Int pivot = row[pr].at(pc);   // +1 or -1
        // Clear the pivot column with row operations.
        std::vector<int> rows_in_col(col_rows[pc].begin(), col_rows[pc].end());
        for (int r : rows_in_col) {
            if (r == pr || row_done[r]) continue;
            Int factor = row[r].at(pc) / pivot;   // exact: pivot is a unit
            std::vector<std::pair<int, Int>> updates(row[pr].begin(), row[pr].end());
            for (const auto& [c, v] : updates) {
                if (col_done[c]) continue;
                set_entry(r, c, (row[r].count(c) ? row[r][c] : Int(0)) - factor * v);
            }
        }
        // Clear the pivot row with column operations (only bookkeeping on the
        // sparse structure is needed; other rows no longer meet column pc).
        std::vector<std::pair<int, Int>> prow(row[pr].begin(), row[pr].end());
        for (const auto& [c, v] : prow)
            if (c != pc && !col_done[c]) erase_entry(pr, c);
        row_done[pr] = true;
        col_done[pc] = true;
        erase_entry(pr, pc);
        ++unit_pivots;
    }

    // Residual block without unit entries: hand to the dense routine.
    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < M.rows; ++r)
        if (!row_done[r] && !row[r].empty()) live_rows.push_back(r);
    std::set<int> lc;
    for (int r : live_rows)
        for (const auto& [c, v] : row[r])
            if (!col_done[c]) lc.insert(c);
    live_cols.assign(lc.begin(), lc.end());

    std::vector<Int> factors(static_cast<size_t>(unit_pivots), Int(1));
    if (!live_rows.empty()) {
        std::map<int, int> cpos;
        for (size_t i = 0; i < live_cols.size(); ++i) cpos[live_cols[i]] = static_cast<int>(i);
        std::vector<std::vector<Int>> dense(live_rows.size(),
                                            std::vector<Int>(live_cols.size(), 0));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : row[live_rows[i]])
                if (!col_done[c]) dense[i][cpos.at(c)] = v;
        detail::DenseSnf snf(std::move(dense), false);
        for (Int& d : snf.run()) factors.push_back(std::move(d));
    }

    // Normalize to a divisibility chain.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < factors.size(); ++i)
            for (size_t j = i + 1; j < factors.size(); ++j)
                if (factors[j] % factors[i] != 0) {
                    Int g = gcd(factors[i], factors[j]);
                    Int l = factors[i] / g * factors[j];
                    factors[i] = g;
                    factors[j] = l;
                    changed = true;
                }
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

struct SnfTransforms {
    std::vector<Int> factors;
    std::vector<std::vector<Int>> U;   // rows x rows, unimodular
    std::vector<std::vector<Int>> V;   // cols x cols, unimodular
};

/// Dense Smith reduction with the unimodular transforms U * M * V = diag(d).
inline SnfTransforms smith_normal_form_with_transforms(const IntegerMatrix& M) {
    std::vector<std::vector<Int>> dense(M.rows, std::vector<Int>(M.cols, 0));
    for (const auto& [rc, v] : M.entries) dense[rc.first][rc.second] = v;
    detail::DenseSnf snf(std::move(dense), true);
    SnfTransforms out;
    out.factors = snf.run();
    out.U = std::move(snf.U);
    out.V = std::move(snf.V);
    return out;
}

inline long long snf_rank(const IntegerMatrix& M) {
    return static_cast<long long>(smith_normal_form(M).size());
}

// ---------------------------------------------------------------------------
// Dense rational elimination
// ---------------------------------------------------------------------------

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix rational_zeros(int rows, int cols) {
    return RationalMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

/// In-place reduced row echelon form; returns the pivot column per pivot row.
inline std::vector<int> rational_rref(RationalMatrix& A) {
    std::vector<int> pivots;
    if (A.empty()) return pivots;
    const int rows = static_cast<int>(A.size());
    const int cols = static_cast<int>(A[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(A[r], A[pivot]);
        Rational inv = A[r][c];
        for (int j = c; j < cols; ++j) A[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (int j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rational_rank(RationalMatrix A) {
    return static_cast<int>(rational_rref(A).size());
}

/// Basis of the kernel of A (columns are unknowns), one vector per free
/// column.
inline std::vector<std::vector<Rational>> rational_kernel(RationalMatrix A) {
    if (A.empty()) return {};
    const int cols = static_cast<int>(A[0].size());
    std::vector<int> pivots = rational_rref(A);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -A[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve A x = b exactly; nothing if inconsistent.  Free variables are set
/// to zero.
inline std::optional<std::vector<Rational>> rational_solve(RationalMatrix A,
                                                           const std::vector<Rational>& b) {
    const int rows = static_cast<int>(A.size());
    if (rows != static_cast<int>(b.size()))
        throw std::invalid_argument("rational_solve: dimension mismatch");
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    for (int i = 0; i < rows; ++i) A[i].push_back(b[i]);
    std::vector<int> pivots = rational_rref(A);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;   // 0 = 1 row
    std::vector<Rational> x(cols, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
    return x;
}

/// Rank over Z/p with machine arithmetic; a fast lower-bound certificate for
/// the rational rank.
inline int mod_p_rank(const std::vector<std::vector<std::int64_t>>& M, std::int64_t p) {
    std::vector<std::vector<std::int64_t>> A = M;
    if (A.empty()) return 0;
    const int rows = static_cast<int>(A.size());
    const int cols = static_cast<int>(A[0].size());
    for (auto& r : A)
        for (auto& v : r) v = ((v % p) + p) % p;
    auto inv_mod = [&](std::int64_t a) {
        std::int64_t res = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1) res = (__int128)res * base % p;
            base = (__int128)base * base % p;
            e >>= 1;
        }
        return res;
    };
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (A[i][c] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(A[r], A[pivot]);
        std::int64_t inv = inv_mod(A[r][c]);
        for (int j = c; j < cols; ++j) A[r][j] = (__int128)A[r][j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            std::int64_t f = A[i][c];
            for (int j = c; j < cols; ++j)
                A[i][j] = ((A[i][j] - (__int128)f * A[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

} // namespace eqp

#endif
