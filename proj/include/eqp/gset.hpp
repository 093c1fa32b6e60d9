#ifndef EQP_GSET_HPP
#define EQP_GSET_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/group.hpp"

namespace eqp {

using GroupPtr = std::shared_ptr<const Group>;

inline GroupPtr make_group(std::vector<Perm> gens, int degree) {
    return std::make_shared<Group>(generate_group(std::move(gens), degree));
}

inline GroupPtr make_group(const std::string& cycles_spec, int degree = -1) {
    return std::make_shared<Group>(parse_group(cycles_spec, degree));
}

/// A finite G-set: a point set {0,...,size-1} together with the action
/// homomorphism, tabulated as one permutation per group element.
struct GSet {
    GroupPtr group;
    int size = 0;
    std::vector<Perm> action;               // indexed by group element index
    std::vector<std::string> element_names; // optional display labels

    int act(int element, int point) const { return action[element](point); }

    std::string name_of(int point) const {
        if (point < static_cast<int>(element_names.size()) && !element_names[point].empty())
            return element_names[point];
        return std::to_string(point);
    }

    /// Full table check that the action is a homomorphism sending the
    /// identity to the identity.
    bool is_valid_action() const {
        if (static_cast<int>(action.size()) != group->order()) return false;
        for (const Perm& p : action)
            if (p.degree() != size) return false;
        if (!action[group->id_index].is_identity()) return false;
        for (int a = 0; a < group->order(); ++a)
            for (int b = 0; b < group->order(); ++b)
                if (!(compose(action[a], action[b]) == action[group->mul[a][b]])) return false;
        return true;
    }
};

inline GSet trivial_gset(GroupPtr G, int n_points) {
    GSet A;
    A.group = std::move(G);
    A.size = n_points;
    A.action.assign(A.group->order(), Perm::identity(n_points));
    return A;
}

/// Orbits as sorted point lists, ordered by minimal point.
inline std::vector<std::vector<int>> orbits(const GSet& A) {
    std::vector<bool> used(A.size, false);
    std::vector<std::vector<int>> out;
    for (int p = 0; p < A.size; ++p) {
        if (used[p]) continue;
        std::set<int> orb;
        for (int g = 0; g < A.group->order(); ++g) orb.insert(A.act(g, p));
        std::vector<int> o(orb.begin(), orb.end());
        for (int x : o) used[x] = true;
        out.push_back(std::move(o));
    }
    return out;
}

inline Subgroup stabilizer(const GSet& A, int point) {
    if (point < 0 || point >= A.size)
        throw std::out_of_range("stabilizer: point index out of range");
    Subgroup S;
    S.parent = A.group.get();
    for (int g = 0; g < A.group->order(); ++g)
        if (A.act(g, point) == point) S.members.push_back(g);
    return S;
}

inline std::vector<int> fixed_points(const GSet& A, const Subgroup& H) {
    if (H.parent != A.group.get())
        throw std::invalid_argument("fixed_points: subgroup of a different group");
    std::vector<int> out;
    for (int p = 0; p < A.size; ++p) {
        bool fixed = true;
        for (int h : H.members)
            if (A.act(h, p) != p) { fixed = false; break; }
        if (fixed) out.push_back(p);
    }
    return out;
}

/// The coset G-set G/H with left translation.  Points are the left cosets,
/// ordered by minimal member; point 0 is the coset H itself.
inline GSet coset_gset(GroupPtr G, const Subgroup& H) {
    if (H.parent != G.get() || !is_subgroup(*G, H))
        throw std::invalid_argument("coset_gset: not a subgroup of the group");
    std::vector<std::vector<int>> cosets = left_cosets(*G, H);
    std::map<std::vector<int>, int> coset_id;
    for (size_t i = 0; i < cosets.size(); ++i) coset_id[cosets[i]] = static_cast<int>(i);
    GSet A;
    A.group = G;
    A.size = static_cast<int>(cosets.size());
    for (int g = 0; g < G->order(); ++g) {
        std::vector<int> im(A.size);
        for (int c = 0; c < A.size; ++c) {
            std::vector<int> moved;
            for (int x : cosets[c]) moved.push_back(G->mul[g][x]);
            std::sort(moved.begin(), moved.end());
            im[c] = coset_id.at(moved);
        }
        A.action.emplace_back(std::move(im));
    }
    for (int c = 0; c < A.size; ++c)
        A.element_names.push_back("c" + std::to_string(cosets[c][0]) + "H");
    return A;
}

inline GSet disjoint_union(const GSet& A, const GSet& B) {
    if (A.group != B.group && !(A.group->elements == B.group->elements))
        throw std::invalid_argument("disjoint_union: different groups");
    GSet C;
    C.group = A.group;
    C.size = A.size + B.size;
    for (int g = 0; g < A.group->order(); ++g) {
        std::vector<int> im(C.size);
        for (int p = 0; p < A.size; ++p) im[p] = A.act(g, p);
        for (int p = 0; p < B.size; ++p) im[A.size + p] = A.size + B.act(g, p);
        C.action.emplace_back(std::move(im));
    }
    for (int p = 0; p < A.size; ++p) C.element_names.push_back(A.name_of(p));
    for (int p = 0; p < B.size; ++p) C.element_names.push_back(B.name_of(p) + "'");
    return C;
}

/// Restriction of A to the subgroup H, repackaged over H as a standalone
/// group.
inline GSet restrict_gset(const GSet& A, const Subgroup& H) {
    if (H.parent != A.group.get())
        throw std::invalid_argument("restrict_gset: subgroup of a different group");
    GroupPtr Hgrp = std::make_shared<Group>(subgroup_as_group(*A.group, H));
    GSet B;
    B.group = Hgrp;
    B.size = A.size;
    B.element_names = A.element_names;
    for (int h = 0; h < Hgrp->order(); ++h) {
        int g = A.group->index_of(Hgrp->elements[h]);
        B.action.push_back(A.action[g]);
    }
    return B;
}

/// Induction G x_H A' for an H-set A', where H's elements must all belong to
/// G.  Points are pairs (coset representative, point of A').
inline GSet induce_gset(const GSet& Aprime, GroupPtr G) {
    // Match the acting group of A' into G by permutation images.
    std::vector<int> h_in_g(Aprime.group->order());
    Subgroup H;
    H.parent = G.get();
    for (int h = 0; h < Aprime.group->order(); ++h) {
        int idx = G->index_of(Aprime.group->elements[h]);
        if (idx < 0)
            throw std::invalid_argument("induce_gset: acting group is not a subgroup of G");
        h_in_g[h] = idx;
        H.members.push_back(idx);
    }
    std::sort(H.members.begin(), H.members.end());
    std::map<int, int> g_to_h;
    for (int h = 0; h < Aprime.group->order(); ++h) g_to_h[h_in_g[h]] = h;

    std::vector<std::vector<int>> cosets = left_cosets(*G, H);
    std::vector<int> rep;   // minimal-index representative per coset
    std::map<int, int> coset_of_element;
    for (size_t c = 0; c < cosets.size(); ++c) {
        rep.push_back(cosets[c][0]);
        for (int x : cosets[c]) coset_of_element[x] = static_cast<int>(c);
    }

    const int k = static_cast<int>(cosets.size());
    GSet B;
    B.group = G;
    B.size = k * Aprime.size;
    for (int g = 0; g < G->order(); ++g) {
        std::vector<int> im(B.size);
        for (int c = 0; c < k; ++c) {
            int moved = G->mul[g][rep[c]];
            int c2 = coset_of_element.at(moved);
            // g * rep[c] = rep[c2] * h for a unique h in H
            int h_elem = G->mul[G->inv[rep[c2]]][moved];
            int h = g_to_h.at(h_elem);
            for (int p = 0; p < Aprime.size; ++p)
                im[c * Aprime.size + p] = c2 * Aprime.size + Aprime.act(h, p);
        }
        B.action.emplace_back(std::move(im));
    }
    for (int c = 0; c < k; ++c)
        for (int p = 0; p < Aprime.size; ++p)
            B.element_names.push_back("c" + std::to_string(rep[c]) + "*" + Aprime.name_of(p));
    return B;
}

/// Multiset of (stabilizer conjugacy-class key, orbit count): a complete
/// isomorphism invariant for finite G-sets.
inline std::map<std::vector<int>, int> orbit_type_signature(const GSet& A) {
    std::map<std::vector<int>, int> sig;
    for (const auto& orb : orbits(A)) {
        Subgroup S = stabilizer(A, orb[0]);
        sig[subgroup_class_key(*A.group, S)] += 1;
    }
    return sig;
}

inline bool gset_isomorphic(const GSet& A, const GSet& B) {
    if (A.group != B.group && !(A.group->elements == B.group->elements))
        throw std::invalid_argument("gset_isomorphic: different groups");
    return orbit_type_signature(A) == orbit_type_signature(B);
}

/// Burnside count: number of orbits times |G| equals the total number of
/// fixed points over all group elements.
inline bool burnside_check(const GSet& A) {
    long long total = 0;
    for (int g = 0; g < A.group->order(); ++g)
        for (int p = 0; p < A.size; ++p)
            if (A.act(g, p) == p) ++total;
    return total == static_cast<long long>(orbits(A).size()) * A.group->order();
}

/// If every orbit has stabilizer conjugate to a single class H, return a
/// representative H; otherwise nothing.
inline std::optional<Subgroup> isovariance_class(const GSet& A) {
    auto orbs = orbits(A);
    if (orbs.empty()) return std::nullopt;
    Subgroup first = stabilizer(A, orbs[0][0]);
    std::vector<int> key = subgroup_class_key(*A.group, first);
    for (size_t i = 1; i < orbs.size(); ++i) {
        Subgroup S = stabilizer(A, orbs[i][0]);
        if (subgroup_class_key(*A.group, S) != key) return std::nullopt;
    }
    return Subgroup{A.group.get(), key};
}

/// True when there is a G-map A -> G/H, i.e. every point stabilizer is
/// subconjugate to H.
inline bool is_H_induced(const GSet& A, const Subgroup& H) {
    for (const auto& orb : orbits(A)) {
        Subgroup S = stabilizer(A, orb[0]);
        if (!is_subconjugate(*A.group, S, H)) return false;
    }
    return true;
}

} // namespace eqp

#endif
