#ifndef EQP_LIE_HPP
#define EQP_LIE_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/homology.hpp"
#include "eqp/matrix.hpp"
#include "eqp/tree.hpp"

namespace eqp {

/// A left-normed bracket word [x_0, x_{s_1}, ..., x_{s_{n-1}}] determined by
/// a permutation s of {1,...,n-1}, expanded in the multilinear associative
/// span (words indexed as permutations of n letters).  Fixing the first
/// letter makes these (n-1)! monomials a basis of the multilinear Lie part;
/// with the fixed letter last they would collapse pairwise by antisymmetry
/// of the innermost bracket.
struct LieBasisElement {
    std::vector<int> sigma;                       // permutation of {1..n-1}
    std::vector<std::pair<int, int>> expansion;   // (word index, +-1)
};

/// The multilinear associative span for n letters together with the
/// left-normed basis of its Lie part and a solver for re-expressing vectors
/// in that basis.
class LieModule {
public:
    explicit LieModule(int n) : n_(n) {
        if (n < 2 || n > 7)
            throw std::runtime_error("LieModule: n outside supported range 2..7");
        std::vector<int> w(n);
        std::iota(w.begin(), w.end(), 0);
        do {
            word_index_[w] = static_cast<int>(words_.size());
            words_.push_back(w);
        } while (std::next_permutation(w.begin(), w.end()));

        std::vector<int> sigma(n - 1);
        std::iota(sigma.begin(), sigma.end(), 1);
        do {
            LieBasisElement e;
            e.sigma = sigma;
            std::vector<int> letters{0};
            letters.insert(letters.end(), sigma.begin(), sigma.end());
            e.expansion = expand_left_normed(letters);
            basis_.push_back(std::move(e));
        } while (std::next_permutation(sigma.begin(), sigma.end()));

        // Pivot rows selected mod a large prime: an invertible block mod p
        // is invertible over Q, which certifies independence of the basis.
        std::vector<std::vector<std::int64_t>> E(words_.size(),
                                                 std::vector<std::int64_t>(basis_.size(), 0));
        for (size_t j = 0; j < basis_.size(); ++j)
            for (const auto& [w, c] : basis_[j].expansion) E[w][j] += c;
        pivot_rows_ = select_pivot_rows(E, 1'000'003);
        if (pivot_rows_.size() != basis_.size())
            throw std::logic_error("LieModule: left-normed monomials are not independent");

        // Dense inverse of the pivot-row square block.
        const int m = dim();
        RationalMatrix aug = rational_zeros(m, 2 * m);
        for (int r = 0; r < m; ++r) {
            for (int j = 0; j < m; ++j) aug[r][j] = Rational(E[pivot_rows_[r]][j]);
            aug[r][m + r] = 1;
        }
        if (static_cast<int>(rational_rref(aug).size()) != m)
            throw std::logic_error("LieModule: pivot block not invertible");
        block_inverse_ = rational_zeros(m, m);
        for (int r = 0; r < m; ++r)
            for (int j = 0; j < m; ++j) block_inverse_[r][j] = aug[r][m + j];
    }

    int n() const { return n_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<LieBasisElement>& basis() const { return basis_; }
    const std::vector<std::vector<int>>& words() const { return words_; }

    /// Left-normed bracket expansion of a letter sequence: fold
    /// [w, x] = w x - x w.
    static std::vector<std::pair<std::vector<int>, int>> expand_words(
        const std::vector<int>& letters) {
        std::vector<std::pair<std::vector<int>, int>> acc{{{letters[0]}, 1}};
        for (size_t k = 1; k < letters.size(); ++k) {
            std::vector<std::pair<std::vector<int>, int>> next;
            next.reserve(acc.size() * 2);
            for (const auto& [w, c] : acc) {
                std::vector<int> left = w;
                left.push_back(letters[k]);
                next.emplace_back(std::move(left), c);
                std::vector<int> right{letters[k]};
                right.insert(right.end(), w.begin(), w.end());
                next.emplace_back(std::move(right), -c);
            }
            acc = std::move(next);
        }
        return acc;
    }

    std::vector<std::pair<int, int>> expand_left_normed(const std::vector<int>& letters) const {
        std::vector<std::pair<int, int>> out;
        for (const auto& [w, c] : expand_words(letters)) out.emplace_back(word_index_.at(w), c);
        return out;
    }

    /// Coordinates of an associative-span vector in the Lie basis; verifies
    /// membership of the span exactly.
    std::vector<Rational> coordinates(const std::vector<Rational>& v) const {
        const int m = dim();
        std::vector<Rational> c(m, Rational(0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Rational& vr = v[pivot_rows_[j]];
                if (vr != 0) c[i] += block_inverse_[i][j] * vr;
            }
        // exact membership check: E c == v
        std::vector<Rational> check(words_.size(), Rational(0));
        for (int j = 0; j < m; ++j) {
            if (c[j] == 0) continue;
            for (const auto& [w, coeff] : basis_[j].expansion) check[w] += Rational(coeff) * c[j];
        }
        for (size_t w = 0; w < words_.size(); ++w)
            if (check[w] != v[w])
                throw std::logic_error("LieModule::coordinates: vector not in the Lie span");
        return c;
    }

    /// Matrix of the letter-permuting action of sigma on the Lie basis.
    RationalMatrix action_matrix(const Perm& sigma) const {
        if (sigma.degree() != n_)
            throw std::invalid_argument("LieModule::action_matrix: degree mismatch");
        const int m = dim();
        RationalMatrix out = rational_zeros(m, m);
        for (int j = 0; j < m; ++j) {
            std::vector<Rational> v(words_.size(), Rational(0));
            for (const auto& [w, c] : basis_[j].expansion) {
                std::vector<int> moved;
                moved.reserve(n_);
                for (int letter : words_[w]) moved.push_back(sigma(letter));
                v[word_index_.at(moved)] += c;
            }
            std::vector<Rational> col = coordinates(v);
            for (int i = 0; i < m; ++i) out[i][j] = col[i];
        }
        return out;
    }

    /// Trace of the action; an integer for every permutation.
    Int character_value(const Perm& sigma) const {
        Rational t = matrix_trace(action_matrix(sigma));
        if (denominator(t) != 1)
            throw std::logic_error("LieModule::character_value: non-integral trace");
        return numerator(t);
    }

    /// Independent trace route: the left-normed bracketing map D satisfies
    /// D = n * id on the Lie part and im(D) is the Lie part, so D/n is a
    /// projection and trace(g restricted) = trace(g D)/n on the whole span.
    Int character_value_via_projection(const Perm& sigma) const {
        Rational t(0);
        for (size_t w = 0; w < words_.size(); ++w) {
            for (const auto& [img, c] : expand_words(words_[w])) {
                std::vector<int> moved;
                moved.reserve(n_);
                for (int letter : img) moved.push_back(sigma(letter));
                if (word_index_.at(moved) == static_cast<int>(w)) t += c;
            }
        }
        t /= n_;
        if (denominator(t) != 1)
            throw std::logic_error("character_value_via_projection: non-integral trace");
        return numerator(t);
    }

private:
    /// Original indices of rows forming an invertible square block mod p.
    static std::vector<int> select_pivot_rows(
        const std::vector<std::vector<std::int64_t>>& E, std::int64_t p) {
        const int rows = static_cast<int>(E.size());
        const int cols = rows ? static_cast<int>(E[0].size()) : 0;
        std::vector<std::vector<std::int64_t>> A = E;
        for (auto& r : A)
            for (auto& v : r) v = ((v % p) + p) % p;
        std::vector<int> origin(rows);
        std::iota(origin.begin(), origin.end(), 0);
        auto inv_mod = [&](std::int64_t a) {
            std::int64_t res = 1, base = a % p, e = p - 2;
            while (e) {
                if (e & 1) res = (__int128)res * base % p;
                base = (__int128)base * base % p;
                e >>= 1;
            }
            return res;
        };
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int pr = -1;
            for (int i = r; i < rows; ++i)
                if (A[i][c] != 0) { pr = i; break; }
            if (pr < 0) continue;
            std::swap(A[r], A[pr]);
            std::swap(origin[r], origin[pr]);
            std::int64_t inv = inv_mod(A[r][c]);
            for (int j = c; j < cols; ++j) A[r][j] = (__int128)A[r][j] * inv % p;
            for (int i = r + 1; i < rows; ++i) {
                if (A[i][c] == 0) continue;
                std::int64_t f = A[i][c];
                for (int j = c; j < cols; ++j)
                    A[i][j] = ((A[i][j] - (__int128)f * A[r][j]) % p + p) % p;
            }
            pivots.push_back(origin[r]);
            ++r;
        }
        std::sort(pivots.begin(), pivots.end());
        return pivots;
    }

    int n_;
    std::vector<std::vector<int>> words_;
    std::map<std::vector<int>, int> word_index_;
    std::vector<LieBasisElement> basis_;
    std::vector<int> pivot_rows_;
    RationalMatrix block_inverse_;
};

inline std::vector<LieBasisElement> lie_basis(int n) { return LieModule(n).basis(); }

inline std::vector<int> cycle_type(const Perm& p) {
    std::vector<bool> seen(p.degree(), false);
    std::vector<int> type;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p(j)) {
            seen[j] = true;
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

/// The symmetric-group character of the multilinear Lie representation,
/// tabulated by cycle type via explicit action matrices.
class LieCharacter {
public:
    explicit LieCharacter(int n) : module_(n) {}

    Int value(const Perm& sigma) {
        std::vector<int> type = cycle_type(sigma);
        auto it = cache_.find(type);
        if (it != cache_.end()) return it->second;
        Int v = module_.character_value(sigma);
        cache_[type] = v;
        return v;
    }

    const LieModule& module() const { return module_; }

private:
    LieModule module_;
    std::map<std::vector<int>, Int> cache_;
};

/// An integer class function on a concrete group.
struct Character {
    GroupPtr group;
    std::vector<Int> class_values;   // per conjugacy class of the group

    Int value_at_element(int g) const {
        return class_values[group->class_of(g)];
    }
};

/// The Lie character restricted along the action homomorphism of A.
inline Character restricted_lie_character(const GSet& A) {
    Character chi;
    chi.group = A.group;
    LieCharacter lie(A.size);
    for (const auto& cls : A.group->conjugacy_classes())
        chi.class_values.push_back(lie.value(A.action[cls[0]]));
    return chi;
}

/// The sign character of the action on A: the parity of each permutation.
inline Character sign_character(const GSet& A) {
    Character chi;
    chi.group = A.group;
    for (const auto& cls : A.group->conjugacy_classes())
        chi.class_values.push_back(Int(A.action[cls[0]].parity()));
    return chi;
}

/// Comparison of the homology of the measured tree space with the
/// sign-twisted Lie character, classwise.
struct TreeHomologyReport {
    int n = 0;
    int degree = 0;                      // n - 3
    bool concentrated = false;
    bool torsion_free = false;
    long long rank = 0;                  // Betti number in the expected degree
    long long expected_rank = 0;         // (n-1)!
    std::vector<Int> homology_character;     // per conjugacy class
    std::vector<Int> twisted_lie_character;  // sign * restricted Lie, per class
    std::vector<std::string> class_names;
    bool characters_equal = false;
    bool pass = false;
};

/// Compute the character of the group action on the homology of the tree
/// space and compare with sign * Lie.  The homology character uses explicit
/// cycle-basis matrices when the complex is small, and otherwise the trace
/// formula, which is exact once concentration has been established by the
/// Smith normal form computation.
inline TreeHomologyReport verify_tree_homology_module(const GSet& A, int guard = 6,
                                                      long long matrix_route_face_limit = 700) {
    if (A.size > guard)
        throw std::runtime_error("verify_tree_homology_module: size guard exceeded");
    if (A.size < 3)
        throw std::invalid_argument("verify_tree_homology_module: needs at least 3 points");
    TreeHomologyReport rep;
    rep.n = A.size;
    rep.degree = A.size - 3;
    rep.expected_rank = 1;
    for (int i = 2; i < A.size; ++i) rep.expected_rank *= i;

    TreeSpace S = build_tree_space(A, guard);
    HomologyResult hom = reduced_homology(S.complex);
    rep.rank = hom.betti_at(rep.degree);
    rep.torsion_free = hom.torsion_free();
    rep.concentrated = true;
    for (const auto& [d, b] : hom.betti)
        if (d != rep.degree && b != 0) rep.concentrated = false;

    for (const auto& cls : A.group->conjugacy_classes())
        rep.class_names.push_back(cycle_string(A.group->elements[cls[0]]));

    // Homology-side character.
    bool have_char = false;
    long long total_faces = 0;
    for (int d = 0; d <= S.complex.dim(); ++d) total_faces += S.complex.face_count(d);
    if (total_faces <= matrix_route_face_limit) {
        HomologyBasis B = homology_basis(S.complex, rep.degree);
        for (const auto& cls : A.group->conjugacy_classes()) {
            Rational t = matrix_trace(
                induced_homology_action(S.complex, S.vertex_action[cls[0]], rep.degree, B));
            if (denominator(t) != 1)
                throw std::logic_error("verify_tree_homology_module: non-integral trace");
            rep.homology_character.push_back(numerator(t));
        }
        have_char = true;
    }
    if (rep.concentrated) {
        CharacterVector via_formula = character_via_trace_formula(
            S.complex, S.vertex_action, A.group, rep.degree, hom);
        std::vector<Int> formula_values;
        for (const auto& cls : A.group->conjugacy_classes())
            formula_values.push_back(numerator(via_formula.values[cls[0]]));
        if (have_char) {
            if (formula_values != rep.homology_character)
                throw std::logic_error(
                    "verify_tree_homology_module: trace formula disagrees with matrix route");
        } else {
            rep.homology_character = std::move(formula_values);
            have_char = true;
        }
    }

    Character lie = restricted_lie_character(A);
    Character sign = sign_character(A);
    for (size_t c = 0; c < lie.class_values.size(); ++c)
        rep.twisted_lie_character.push_back(sign.class_values[c] * lie.class_values[c]);

    rep.characters_equal = have_char && rep.homology_character == rep.twisted_lie_character;
    rep.pass = rep.concentrated && rep.torsion_free && rep.rank == rep.expected_rank &&
               rep.characters_equal;
    return rep;
}

} // namespace eqp

#endif
