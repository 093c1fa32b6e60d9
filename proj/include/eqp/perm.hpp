#ifndef EQP_PERM_HPP
#define EQP_PERM_HPP

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqp {

/// A permutation of {0, ..., degree-1}, stored as its image array.
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : images_(std::move(images)) {
        if (!is_bijection(images_))
            throw std::invalid_argument("Perm: image array is not a bijection");
    }

    static Perm identity(int degree) {
        std::vector<int> im(degree);
        std::iota(im.begin(), im.end(), 0);
        return Perm(std::move(im));
    }

    int degree() const { return static_cast<int>(images_.size()); }

    int operator()(int point) const { return images_.at(point); }

    const std::vector<int>& images() const { return images_; }

    Perm inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
        return Perm(std::move(inv));
    }

    bool is_identity() const {
        for (int i = 0; i < degree(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    /// Sign of the permutation: +1 for even, -1 for odd.
    int parity() const {
        std::vector<bool> seen(images_.size(), false);
        int sign = 1;
        for (int i = 0; i < degree(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = images_[j]) {
                seen[j] = true;
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        return sign;
    }

    friend bool operator==(const Perm& a, const Perm& b) { return a.images_ == b.images_; }
    friend bool operator!=(const Perm& a, const Perm& b) { return !(a == b); }
    friend bool operator<(const Perm& a, const Perm& b) { return a.images_ < b.images_; }

private:
    static bool is_bijection(const std::vector<int>& im) {
        std::vector<bool> hit(im.size(), false);
        for (int v : im) {
            if (v < 0 || v >= static_cast<int>(im.size()) || hit[v]) return false;
            hit[v] = true;
        }
        return true;
    }

    std::vector<int> images_;
};

/// Composition a * b: apply b first, then a.
inline Perm compose(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("compose: degree mismatch");
    std::vector<int> im(a.degree());
    for (int i = 0; i < a.degree(); ++i) im[i] = a(b(i));
    return Perm(std::move(im));
}

inline Perm operator*(const Perm& a, const Perm& b) { return compose(a, b); }

/// Parse a product of cycles in 1-based disjoint-cycle notation, e.g.
/// "(1 2 3)(4 5)".  Points may also be comma-separated.  The degree must be
/// at least the largest point mentioned.
inline Perm parse_cycles(const std::string& text, int degree) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw std::invalid_argument("parse_cycles: expected '(' at position " +
                                        std::to_string(pos) + " in \"" + text + "\"");
        ++pos;
        std::vector<int> cycle;
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
            if (pos >= text.size())
                throw std::invalid_argument("parse_cycles: unterminated cycle in \"" + text + "\"");
            if (text[pos] == ')') { ++pos; break; }
            if (!std::isdigit(static_cast<unsigned char>(text[pos])))
                throw std::invalid_argument("parse_cycles: expected point number in \"" + text + "\"");
            int v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                v = 10 * v + (text[pos++] - '0');
            if (v < 1 || v > degree)
                throw std::invalid_argument("parse_cycles: point " + std::to_string(v) +
                                            " out of range 1.." + std::to_string(degree));
            cycle.push_back(v - 1);
        }
        for (size_t i = 0; i < cycle.size(); ++i) {
            int from = cycle[i];
            int to = cycle[(i + 1) % cycle.size()];
            if (im[from] != from)
                throw std::invalid_argument("parse_cycles: point repeated across cycles");
            im[from] = to;
        }
        // A repeated fixed point inside one cycle slips past the check above;
        // catch it via the bijection test in the Perm constructor.
        skip_ws();
    }
    return Perm(std::move(im));
}

/// Largest 1-based point mentioned in a cycle string; 0 for a string with no
/// points.
inline int max_point_in_cycles(const std::string& text) {
    int best = 0;
    int cur = -1;
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur = (cur < 0 ? 0 : cur) * 10 + (c - '0');
        } else {
            if (cur > best) best = cur;
            cur = -1;
        }
    }
    if (cur > best) best = cur;
    return best;
}

/// Render as 1-based disjoint cycles; the identity renders as "()".
inline std::string cycle_string(const Perm& p) {
    std::ostringstream out;
    std::vector<bool> seen(p.degree(), false);
    bool wrote = false;
    for (int i = 0; i < p.degree(); ++i) {
        if (seen[i] || p(i) == i) { seen[i] = true; continue; }
        out << '(';
        int j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out << ' ';
            out << (j + 1);
            first = false;
            j = p(j);
        }
        out << ')';
        wrote = true;
    }
    if (!wrote) return "()";
    return out.str();
}

} // namespace eqp

#endif
