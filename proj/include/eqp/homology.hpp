#ifndef EQP_HOMOLOGY_HPP
#define EQP_HOMOLOGY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "eqp/complex.hpp"
#include "eqp/matrix.hpp"

namespace eqp {

/// Reduced integral homology: Betti numbers and invariant factors > 1 per
/// degree.  Degree -1 carries the reduced homology of the empty complex.
struct HomologyResult {
    std::map<int, long long> betti;            // degrees with nonzero rank only
    std::map<int, std::vector<Int>> torsion;   // invariant factors > 1
    bool reduced = true;

    long long betti_at(int d) const {
        auto it = betti.find(d);
        return it == betti.end() ? 0 : it->second;
    }

    bool torsion_free() const { return torsion.empty(); }

    bool trivial() const { return betti.empty() && torsion.empty(); }

    /// Degrees from -1 to `top` as a plain vector (index 0 = degree -1).
    std::vector<long long> betti_vector(int top) const {
        std::vector<long long> v;
        for (int d = -1; d <= top; ++d) v.push_back(betti_at(d));
        return v;
    }

    friend bool operator==(const HomologyResult& a, const HomologyResult& b) {
        return a.betti == b.betti && a.torsion == b.torsion;
    }
};

/// Boundary matrix of K in degree d.  With `reduced`, degree 0 maps onto the
/// augmentation row.
inline IntegerMatrix boundary_matrix(const SimplicialComplex& K, int d, bool reduced = true) {
    if (d == 0) {
        IntegerMatrix M(reduced ? 1 : 0, static_cast<int>(K.face_count(0)));
        if (reduced)
            for (int c = 0; c < M.cols; ++c) M.set(0, c, 1);
        return M;
    }
    if (d < 0 || d > K.dim()) return IntegerMatrix(0, 0);
    IntegerMatrix M(static_cast<int>(K.face_count(d - 1)), static_cast<int>(K.face_count(d)));
    for (size_t j = 0; j < K.faces[d].size(); ++j) {
        const auto& f = K.faces[d][j];
        int sign = 1;
        for (size_t skip = 0; skip < f.size(); ++skip) {
            std::vector<int> sub;
            for (size_t i = 0; i < f.size(); ++i)
                if (i != skip) sub.push_back(f[i]);
            int r = K.face_index(d - 1, sub);
            if (r < 0) throw std::logic_error("boundary_matrix: complex not closed under faces");
            M.set(r, static_cast<int>(j), sign);
            sign = -sign;
        }
    }
    return M;
}

/// Exact check that consecutive boundaries compose to zero.
inline bool boundary_squares_to_zero(const SimplicialComplex& K, bool reduced = true) {
    for (int d = 1; d <= K.dim(); ++d) {
        IntegerMatrix A = boundary_matrix(K, d - 1, reduced);
        IntegerMatrix B = boundary_matrix(K, d, reduced);
        std::map<std::pair<int, int>, Int> prod;
        for (const auto& [rc_b, vb] : B.entries) {
            for (int r = 0; r < A.rows; ++r) {
                Int va = A.get(r, rc_b.first);
                if (va != 0) prod[{r, rc_b.second}] += va * vb;
            }
        }
        for (const auto& [rc, v] : prod)
            if (v != 0) return false;
    }
    return true;
}

/// Reduced integral homology of K via Smith normal form of the augmented
/// chain complex.  The empty complex reports a single class in degree -1.
inline HomologyResult reduced_homology(const SimplicialComplex& K) {
    HomologyResult H;
    if (K.empty()) {
        H.betti[-1] = 1;
        return H;
    }
    const int top = K.dim();
    // rank and invariant factors of each boundary map
    std::vector<long long> rank(top + 2, 0);
    std::vector<std::vector<Int>> factors(top + 2);
    for (int d = 0; d <= top; ++d) {
        factors[d] = smith_normal_form(boundary_matrix(K, d, true));
        rank[d] = static_cast<long long>(factors[d].size());
    }
    // degree -1: Z / im(augmentation)
    {
        long long b = 1 - rank[0];
        if (b) H.betti[-1] = b;
    }
    for (int d = 0; d <= top; ++d) {
        long long b = K.face_count(d) - rank[d] - rank[d + 1];
        if (b) H.betti[d] = b;
        std::vector<Int> tor;
        for (const Int& f : factors[d + 1])
            if (f > 1) tor.push_back(f);
        if (!tor.empty()) H.torsion[d] = tor;
    }
    return H;
}

/// Reduced Euler characteristic computed two ways: from face counts and from
/// Betti numbers.  Torsion never enters either side.
inline bool euler_poincare_consistent(const SimplicialComplex& K, const HomologyResult& H) {
    long long from_faces = K.euler_characteristic() - 1;   // reduced
    long long from_betti = 0;
    for (const auto& [d, b] : H.betti) from_betti += (d % 2 ? -1 : 1) * b;
    // degree -1 contributes with sign (-1)^{-1} = -1
    return from_faces == from_betti;
}

/// Signed permutation action of a vertex permutation on the d-faces: image
/// index and the parity of the sort that restores order.
inline std::vector<std::pair<int, int>> simplex_action(const SimplicialComplex& K,
                                                       const Perm& sigma, int d) {
    std::vector<std::pair<int, int>> out;
    out.reserve(K.faces[d].size());
    for (const auto& f : K.faces[d]) {
        std::vector<int> img;
        img.reserve(f.size());
        for (int v : f) img.push_back(sigma(v));
        // parity of the permutation sorting img
        int sign = 1;
        for (size_t i = 0; i < img.size(); ++i)
            for (size_t j = i + 1; j < img.size(); ++j)
                if (img[i] > img[j]) sign = -sign;
        std::sort(img.begin(), img.end());
        int idx = K.face_index(d, img);
        if (idx < 0) throw std::invalid_argument("simplex_action: permutation is not simplicial");
        out.emplace_back(idx, sign);
    }
    return out;
}

namespace detail {

inline RationalMatrix to_rational(const IntegerMatrix& M) {
    RationalMatrix A = rational_zeros(M.rows, M.cols);
    for (const auto& [rc, v] : M.entries) A[rc.first][rc.second] = Rational(v);
    return A;
}

/// Incremental independence tester: rows kept reduced against all earlier
/// pivots, so a candidate is reduced in one insertion-order sweep.
struct RationalEliminator {
    std::vector<std::pair<int, std::vector<Rational>>> rows;   // (pivot col, row)

    bool add(std::vector<Rational> v) {
        for (const auto& [p, r] : rows) {
            if (v[p] == 0) continue;
            Rational f = v[p];
            for (size_t i = 0; i < v.size(); ++i)
                if (r[i] != 0) v[i] -= f * r[i];
        }
        int pivot = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) { pivot = static_cast<int>(i); break; }
        if (pivot < 0) return false;
        Rational lead = v[pivot];
        for (auto& x : v) x /= lead;
        rows.emplace_back(pivot, std::move(v));
        return true;
    }
};

/// Solve A x = b for several right-hand sides with a single elimination.
/// Returns one solution column per RHS; throws if any system is
/// inconsistent.
inline RationalMatrix rational_solve_many(const RationalMatrix& A, const RationalMatrix& rhs) {
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    const int k = rows ? static_cast<int>(rhs[0].size()) : 0;
    RationalMatrix aug = rational_zeros(rows, cols + k);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug[i][j] = A[i][j];
        for (int j = 0; j < k; ++j) aug[i][cols + j] = rhs[i][j];
    }
    std::vector<int> pivots = rational_rref(aug);
    RationalMatrix x = rational_zeros(cols, k);
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= cols)
            throw std::logic_error("rational_solve_many: inconsistent system");
        for (int j = 0; j < k; ++j) x[pivots[r]][j] = aug[r][cols + j];
    }
    return x;
}

} // namespace detail

/// A basis of H_d(K; Q) presented as cycle representatives in C_d, together
/// with the boundary-space basis used to reduce modulo boundaries.
struct HomologyBasis {
    int degree = 0;
    std::vector<std::vector<Rational>> boundary_basis;   // spanning im(d_{d+1})
    std::vector<std::vector<Rational>> cycle_reps;       // classes form a basis of H_d
};

inline HomologyBasis homology_basis(const SimplicialComplex& K, int d, bool reduced = true) {
    HomologyBasis B;
    B.degree = d;
    const long long nd = K.face_count(d);
    if (nd == 0) return B;

    std::vector<std::vector<Rational>> kernel;
    IntegerMatrix bd = boundary_matrix(K, d, reduced);
    if (bd.rows == 0) {
        kernel.resize(nd);
        for (long long i = 0; i < nd; ++i) {
            kernel[i].assign(nd, Rational(0));
            kernel[i][i] = 1;
        }
    } else {
        kernel = rational_kernel(detail::to_rational(bd));
    }

    // Independent columns of the next boundary map span the boundaries.
    std::vector<std::vector<Rational>> cols;
    if (d + 1 <= K.dim()) {
        IntegerMatrix nx = boundary_matrix(K, d + 1, reduced);
        for (int j = 0; j < nx.cols; ++j) {
            std::vector<Rational> col(nd, Rational(0));
            for (int r = 0; r < nx.rows; ++r) {
                Int v = nx.get(r, j);
                if (v != 0) col[r] = Rational(v);
            }
            cols.push_back(std::move(col));
        }
    }

    // Grow an independent family: boundaries first, then kernel vectors; the
    // latter become the homology representatives.
    detail::RationalEliminator elim;
    for (const auto& c : cols)
        if (elim.add(c)) B.boundary_basis.push_back(c);
    for (const auto& k : kernel)
        if (elim.add(k)) B.cycle_reps.push_back(k);
    return B;
}

/// Matrix of the action of `sigma` on H_d(K; Q) in the basis of
/// `homology_basis`.  Requires sigma simplicial.
inline RationalMatrix induced_homology_action(const SimplicialComplex& K, const Perm& sigma,
                                              int d, const HomologyBasis& B) {
    const long long nd = K.face_count(d);
    const int h = static_cast<int>(B.cycle_reps.size());
    RationalMatrix out = rational_zeros(h, h);
    if (h == 0) return out;
    std::vector<std::pair<int, int>> act = simplex_action(K, sigma, d);

    // Solve [boundaries | reps] x = sigma . rep_i for all i at once and keep
    // the rep block of each solution.
    const int nb = static_cast<int>(B.boundary_basis.size());
    RationalMatrix A = rational_zeros(static_cast<int>(nd), nb + h);
    for (int j = 0; j < nb; ++j)
        for (long long r = 0; r < nd; ++r) A[r][j] = B.boundary_basis[j][r];
    for (int j = 0; j < h; ++j)
        for (long long r = 0; r < nd; ++r) A[r][nb + j] = B.cycle_reps[j][r];

    RationalMatrix images = rational_zeros(static_cast<int>(nd), h);
    for (int i = 0; i < h; ++i)
        for (long long c = 0; c < nd; ++c) {
            const Rational& v = B.cycle_reps[i][c];
            if (v == 0) continue;
            images[act[c].first][i] += (act[c].second > 0 ? v : -v);
        }
    RationalMatrix x = detail::rational_solve_many(A, images);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) out[j][i] = x[nb + j][i];
    return out;
}

inline RationalMatrix induced_homology_action(const SimplicialComplex& K, const Perm& sigma,
                                              int d) {
    return induced_homology_action(K, sigma, d, homology_basis(K, d));
}

inline Rational matrix_trace(const RationalMatrix& M) {
    Rational t(0);
    for (size_t i = 0; i < M.size(); ++i) t += M[i][i];
    return t;
}

/// Character of a group action on homology: one rational trace per group
/// element.
struct CharacterVector {
    GroupPtr group;
    int degree = 0;
    std::vector<Rational> values;   // per element index

    bool constant_on_classes() const {
        for (const auto& cls : group->conjugacy_classes()) {
            for (int x : cls)
                if (values[x] != values[cls[0]]) return false;
        }
        return true;
    }

    std::vector<Rational> class_values() const {
        std::vector<Rational> out;
        for (const auto& cls : group->conjugacy_classes()) out.push_back(values[cls[0]]);
        return out;
    }
};

/// Character via explicit action matrices on a computed cycle basis.
inline CharacterVector character(const SimplicialComplex& K,
                                 const std::vector<Perm>& action_by_element, GroupPtr group,
                                 int d) {
    CharacterVector chi;
    chi.group = std::move(group);
    chi.degree = d;
    HomologyBasis B = homology_basis(K, d);
    for (const Perm& sigma : action_by_element)
        chi.values.push_back(matrix_trace(induced_homology_action(K, sigma, d, B)));
    return chi;
}

/// Alternating sum over degrees of the signed count of fixed simplices.
inline long long lefschetz_number(const SimplicialComplex& K, const Perm& sigma) {
    long long L = 0;
    for (int d = 0; d <= K.dim(); ++d) {
        long long t = 0;
        for (const auto& f : K.faces[d]) {
            std::vector<int> img;
            img.reserve(f.size());
            for (int v : f) img.push_back(sigma(v));
            int sign = 1;
            for (size_t i = 0; i < img.size(); ++i)
                for (size_t j = i + 1; j < img.size(); ++j)
                    if (img[i] > img[j]) sign = -sign;
            std::sort(img.begin(), img.end());
            if (img == f) t += sign;
        }
        L += (d % 2 ? -t : t);
    }
    return L;
}

/// Character on H~_D(K; Q) via the trace formula, valid exactly when the
/// reduced rational homology of K is concentrated in the single degree D.
/// The caller certifies concentration with `hom` (computed by SNF).
inline CharacterVector character_via_trace_formula(const SimplicialComplex& K,
                                                   const std::vector<Perm>& action_by_element,
                                                   GroupPtr group, int D,
                                                   const HomologyResult& hom) {
    for (const auto& [d, b] : hom.betti)
        if (d != D && b != 0)
            throw std::invalid_argument(
                "character_via_trace_formula: homology not concentrated in the given degree");
    CharacterVector chi;
    chi.group = std::move(group);
    chi.degree = D;
    for (const Perm& sigma : action_by_element) {
        long long L = lefschetz_number(K, sigma);
        long long val = (D % 2 == 0 ? L - 1 : -(L - 1));
        chi.values.push_back(Rational(val));
    }
    return chi;
}

} // namespace eqp

#endif
