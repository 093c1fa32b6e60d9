#ifndef EQP_GROUP_HPP
#define EQP_GROUP_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/perm.hpp"

namespace eqp {

/// A finite permutation group with a complete element table.
///
/// Elements are ordered canonically: breadth-first by word length in the
/// sorted generator list, ties broken lexicographically by image array.
/// Index 0 is always the identity.  The full multiplication and inverse
/// tables are precomputed, so everything downstream can work with element
/// indices.
class Group {
public:
    int degree = 0;
    std::vector<Perm> elements;
    std::vector<int> generator_indices;
    std::vector<std::vector<int>> mul;   // mul[a][b] = index of elements[a] * elements[b]
    std::vector<int> inv;                // inverse index per element
    int id_index = 0;

    int order() const { return static_cast<int>(elements.size()); }

    int index_of(const Perm& p) const {
        auto it = index_.find(p.images());
        if (it == index_.end()) return -1;
        return it->second;
    }

    int multiply(int a, int b) const { return mul[a][b]; }
    int inverse(int a) const { return inv[a]; }
    int conjugate(int g, int x) const { return mul[mul[g][x]][inv[g]]; }

    bool is_abelian() const {
        for (int a = 0; a < order(); ++a)
            for (int b = a + 1; b < order(); ++b)
                if (mul[a][b] != mul[b][a]) return false;
        return true;
    }

    /// Conjugacy classes of elements, each sorted, ordered by smallest member.
    const std::vector<std::vector<int>>& conjugacy_classes() const {
        if (classes_.empty()) {
            std::vector<bool> seen(order(), false);
            for (int x = 0; x < order(); ++x) {
                if (seen[x]) continue;
                std::set<int> cls;
                for (int g = 0; g < order(); ++g) cls.insert(conjugate(g, x));
                for (int y : cls) seen[y] = true;
                classes_.emplace_back(cls.begin(), cls.end());
            }
        }
        return classes_;
    }

    int class_of(int element) const {
        const auto& cls = conjugacy_classes();
        for (size_t i = 0; i < cls.size(); ++i)
            if (std::binary_search(cls[i].begin(), cls[i].end(), element))
                return static_cast<int>(i);
        return -1;
    }

    friend Group generate_group(std::vector<Perm> gens, int degree);

private:
    std::map<std::vector<int>, int> index_;
    mutable std::vector<std::vector<int>> classes_;
};

/// Closure of the given generators under composition, with canonical
/// breadth-first element ordering.
inline Group generate_group(std::vector<Perm> gens, int degree) {
    for (const Perm& g : gens)
        if (g.degree() != degree)
            throw std::invalid_argument("generate_group: generator degree mismatch");
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    gens.erase(std::remove_if(gens.begin(), gens.end(),
                              [](const Perm& p) { return p.is_identity(); }),
               gens.end());

    Group G;
    G.degree = degree;
    G.elements.push_back(Perm::identity(degree));
    G.index_[G.elements[0].images()] = 0;

    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<Perm> next_level;
        for (int idx : frontier) {
            for (const Perm& g : gens) {
                Perm prod = compose(G.elements[idx], g);
                if (G.index_.find(prod.images()) == G.index_.end() &&
                    !std::binary_search(next_level.begin(), next_level.end(), prod)) {
                    next_level.insert(
                        std::lower_bound(next_level.begin(), next_level.end(), prod), prod);
                }
            }
        }
        frontier.clear();
        for (const Perm& p : next_level) {
            int id = static_cast<int>(G.elements.size());
            G.elements.push_back(p);
            G.index_[p.images()] = id;
            frontier.push_back(id);
        }
    }

    for (const Perm& g : gens) G.generator_indices.push_back(G.index_of(g));

    const int n = G.order();
    G.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int p = G.index_of(compose(G.elements[a], G.elements[b]));
            if (p < 0) throw std::logic_error("generate_group: closure violated");
            G.mul[a][b] = p;
        }
    G.inv.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (G.mul[a][b] == 0) G.inv[a] = b;
    return G;
}

inline Group trivial_group(int degree = 0) { return generate_group({}, degree); }

/// A subgroup of a fixed parent group, as a sorted set of element indices.
struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> members;   // sorted ascending, always contains 0

    int order() const { return static_cast<int>(members.size()); }

    bool contains(int element) const {
        return std::binary_search(members.begin(), members.end(), element);
    }

    bool contains(const Subgroup& other) const {
        for (int m : other.members)
            if (!contains(m)) return false;
        return true;
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent == b.parent && a.members == b.members;
    }
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
        return a.members < b.members;
    }
};

/// Closure of a set of element indices inside the parent group.
inline Subgroup subgroup_closure(const Group& G, std::vector<int> seed) {
    std::set<int> mem{0};
    std::vector<int> todo{0};
    for (int s : seed)
        if (mem.insert(s).second) todo.push_back(s);
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        std::vector<int> cur(mem.begin(), mem.end());
        for (int y : cur) {
            for (int z : {G.mul[x][y], G.mul[y][x]}) {
                if (mem.insert(z).second) todo.push_back(z);
            }
        }
        if (mem.insert(G.inv[x]).second) todo.push_back(G.inv[x]);
    }
    Subgroup H;
    H.parent = &G;
    H.members.assign(mem.begin(), mem.end());
    return H;
}

inline Subgroup trivial_subgroup(const Group& G) { return Subgroup{&G, {0}}; }

inline Subgroup full_subgroup(const Group& G) {
    Subgroup H;
    H.parent = &G;
    H.members.resize(G.order());
    for (int i = 0; i < G.order(); ++i) H.members[i] = i;
    return H;
}

inline bool is_subgroup(const Group& G, const Subgroup& H) {
    if (H.parent != &G) return false;
    if (H.members.empty() || H.members[0] != 0) return false;
    for (int a : H.members) {
        if (!H.contains(G.inv[a])) return false;
        for (int b : H.members)
            if (!H.contains(G.mul[a][b])) return false;
    }
    return true;
}

/// Every subgroup of G, each exactly once, sorted by order then member set.
/// Found by closing each known subgroup with one extra element until nothing
/// new appears; every subgroup arises this way from the trivial one.
inline std::vector<Subgroup> all_subgroups(const Group& G, int order_guard = 512) {
    if (G.order() > order_guard)
        throw std::runtime_error("all_subgroups: group order " + std::to_string(G.order()) +
                                 " exceeds guard " + std::to_string(order_guard));
    std::set<std::vector<int>> seen;
    std::vector<Subgroup> out;
    std::vector<Subgroup> frontier{trivial_subgroup(G)};
    seen.insert(frontier[0].members);
    out.push_back(frontier[0]);
    while (!frontier.empty()) {
        std::vector<Subgroup> next;
        for (const Subgroup& H : frontier) {
            for (int g = 1; g < G.order(); ++g) {
                if (H.contains(g)) continue;
                std::vector<int> seed = H.members;
                seed.push_back(g);
                Subgroup K = subgroup_closure(G, seed);
                if (seen.insert(K.members).second) {
                    out.push_back(K);
                    next.push_back(K);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Subgroup conjugate_subgroup(const Group& G, const Subgroup& H, int g) {
    std::vector<int> mem;
    mem.reserve(H.members.size());
    for (int x : H.members) mem.push_back(G.conjugate(g, x));
    std::sort(mem.begin(), mem.end());
    return Subgroup{&G, mem};
}

inline Subgroup normalizer(const Group& G, const Subgroup& H) {
    if (H.parent != &G) throw std::invalid_argument("normalizer: subgroup of a different group");
    std::vector<int> mem;
    for (int g = 0; g < G.order(); ++g)
        if (conjugate_subgroup(G, H, g).members == H.members) mem.push_back(g);
    return Subgroup{&G, mem};
}

inline bool is_normal(const Subgroup& H, const Group& G) {
    return normalizer(G, H).order() == G.order();
}

inline bool are_conjugate(const Group& G, const Subgroup& H, const Subgroup& K) {
    if (H.parent != K.parent)
        throw std::invalid_argument("are_conjugate: subgroups of different parents");
    if (H.order() != K.order()) return false;
    for (int g = 0; g < G.order(); ++g)
        if (conjugate_subgroup(G, H, g).members == K.members) return true;
    return false;
}

/// True when some conjugate of H is contained in K.
inline bool is_subconjugate(const Group& G, const Subgroup& H, const Subgroup& K) {
    if (H.parent != K.parent)
        throw std::invalid_argument("is_subconjugate: subgroups of different parents");
    if (H.order() > K.order() || K.order() % H.order() != 0) return false;
    for (int g = 0; g < G.order(); ++g)
        if (K.contains(conjugate_subgroup(G, H, g))) return true;
    return false;
}

/// Canonical representative of the conjugacy class of H: the lexicographically
/// smallest member set among all conjugates.
inline std::vector<int> subgroup_class_key(const Group& G, const Subgroup& H) {
    std::vector<int> best = H.members;
    for (int g = 1; g < G.order(); ++g) {
        std::vector<int> cand = conjugate_subgroup(G, H, g).members;
        if (cand < best) best = cand;
    }
    return best;
}

inline Subgroup commutator_subgroup(const Group& G, const Subgroup& H) {
    std::vector<int> seed;
    for (int a : H.members)
        for (int b : H.members)
            seed.push_back(G.mul[G.mul[G.inv[a]][G.inv[b]]][G.mul[a][b]]);
    return subgroup_closure(G, seed);
}

/// Solvability via the derived series reaching the trivial subgroup.
inline bool is_solvable(const Group& G) {
    Subgroup H = full_subgroup(G);
    while (H.order() > 1) {
        Subgroup D = commutator_subgroup(G, H);
        if (D.order() == H.order()) return false;
        H = D;
    }
    return true;
}

/// The members of H repackaged as a standalone permutation group (same
/// degree, canonical element order).
inline Group subgroup_as_group(const Group& G, const Subgroup& H) {
    std::vector<Perm> gens;
    gens.reserve(H.members.size());
    for (int m : H.members) gens.push_back(G.elements[m]);
    return generate_group(gens, G.degree);
}

/// Left cosets gH, each as a sorted index set, ordered by minimal element.
inline std::vector<std::vector<int>> left_cosets(const Group& G, const Subgroup& H) {
    std::vector<bool> used(G.order(), false);
    std::vector<std::vector<int>> cosets;
    for (int g = 0; g < G.order(); ++g) {
        if (used[g]) continue;
        std::vector<int> coset;
        for (int h : H.members) coset.push_back(G.mul[g][h]);
        std::sort(coset.begin(), coset.end());
        for (int x : coset) used[x] = true;
        cosets.push_back(std::move(coset));
    }
    std::sort(cosets.begin(), cosets.end());
    return cosets;
}

/// The Weyl group N_G(H)/H as a permutation group acting on the cosets of H
/// inside the normalizer.
inline Group weyl_group(const Group& G, const Subgroup& H) {
    Subgroup N = normalizer(G, H);
    Group Ngrp = subgroup_as_group(G, N);
    // Cosets of H inside N, indexed deterministically.
    Subgroup H_in_N;
    H_in_N.parent = &Ngrp;
    for (int m : H.members) {
        int idx = Ngrp.index_of(G.elements[m]);
        if (idx < 0) throw std::logic_error("weyl_group: H not inside its normalizer");
        H_in_N.members.push_back(idx);
    }
    std::sort(H_in_N.members.begin(), H_in_N.members.end());
    std::vector<std::vector<int>> cosets = left_cosets(Ngrp, H_in_N);
    std::map<std::vector<int>, int> coset_id;
    for (size_t i = 0; i < cosets.size(); ++i) coset_id[cosets[i]] = static_cast<int>(i);

    auto act = [&](int n) {
        std::vector<int> im(cosets.size());
        for (size_t c = 0; c < cosets.size(); ++c) {
            std::vector<int> moved;
            for (int x : cosets[c]) moved.push_back(Ngrp.mul[n][x]);
            std::sort(moved.begin(), moved.end());
            im[c] = coset_id.at(moved);
        }
        return Perm(std::move(im));
    };
    std::vector<Perm> gens;
    for (int n = 0; n < Ngrp.order(); ++n) gens.push_back(act(n));
    return generate_group(gens, static_cast<int>(cosets.size()));
}

/// Parse generators in disjoint-cycle notation separated by ';' and return
/// the group they generate.  The degree defaults to the largest point used.
inline Group parse_group(const std::string& spec, int degree = -1) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    int maxpt = 0;
    for (const auto& p : parts) maxpt = std::max(maxpt, max_point_in_cycles(p));
    if (degree < 0) degree = maxpt;
    if (maxpt > degree) throw std::invalid_argument("parse_group: point exceeds degree");
    std::vector<Perm> gens;
    for (const auto& p : parts) {
        std::string trimmed;
        for (char c : p)
            if (c != ' ' || !trimmed.empty()) trimmed.push_back(c);
        while (!trimmed.empty() && trimmed.back() == ' ') trimmed.pop_back();
        if (trimmed.empty()) continue;
        gens.push_back(parse_cycles(trimmed, degree));
    }
    return generate_group(gens, degree);
}

} // namespace eqp

#endif
