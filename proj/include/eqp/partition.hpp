#ifndef EQP_PARTITION_HPP
#define EQP_PARTITION_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/homology.hpp"
#include "eqp/poset.hpp"

namespace eqp {

/// A set partition of {0,...,n-1} in canonical form: blocks sorted by
/// minimum element, each block sorted.
struct Partition {
    std::vector<std::vector<int>> blocks;

    static Partition from_blocks(std::vector<std::vector<int>> raw) {
        Partition p;
        for (auto& b : raw) std::sort(b.begin(), b.end());
        std::sort(raw.begin(), raw.end());
        p.blocks = std::move(raw);
        return p;
    }

    static Partition from_assignment(const std::vector<int>& block_of) {
        std::map<int, std::vector<int>> by_id;
        for (size_t i = 0; i < block_of.size(); ++i)
            by_id[block_of[i]].push_back(static_cast<int>(i));
        std::vector<std::vector<int>> blocks;
        for (auto& [id, b] : by_id) blocks.push_back(std::move(b));
        return from_blocks(std::move(blocks));
    }

    int ground_size() const {
        int n = 0;
        for (const auto& b : blocks) n += static_cast<int>(b.size());
        return n;
    }

    int block_count() const { return static_cast<int>(blocks.size()); }

    bool is_discrete() const {
        for (const auto& b : blocks)
            if (b.size() != 1) return false;
        return true;
    }

    bool is_indiscrete() const { return blocks.size() == 1; }

    bool is_trivial() const { return is_discrete() || is_indiscrete(); }

    std::string label() const {
        std::ostringstream out;
        for (const auto& b : blocks) {
            out << '(';
            for (size_t i = 0; i < b.size(); ++i) {
                if (i) out << ' ';
                out << b[i];
            }
            out << ')';
        }
        return out.str();
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.blocks == b.blocks; }
    friend bool operator<(const Partition& a, const Partition& b) { return a.blocks < b.blocks; }
};

/// p refines q: every block of p lies inside a block of q.
inline bool refines(const Partition& p, const Partition& q) {
    std::vector<int> q_block_of(q.ground_size());
    for (size_t i = 0; i < q.blocks.size(); ++i)
        for (int x : q.blocks[i]) q_block_of[x] = static_cast<int>(i);
    for (const auto& b : p.blocks) {
        int target = q_block_of[b[0]];
        for (int x : b)
            if (q_block_of[x] != target) return false;
    }
    return true;
}

/// Direct image of p under a permutation of the ground set.
inline Partition image_partition(const Partition& p, const Perm& sigma) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(p.blocks.size());
    for (const auto& b : p.blocks) {
        std::vector<int> nb;
        nb.reserve(b.size());
        for (int x : b) nb.push_back(sigma(x));
        blocks.push_back(std::move(nb));
    }
    return Partition::from_blocks(std::move(blocks));
}

/// All partitions of {0,...,n-1} via restricted growth strings, in
/// enumeration order.
inline std::vector<Partition> all_partitions(int n, int bell_guard = 9) {
    if (n > bell_guard)
        throw std::runtime_error("all_partitions: ground set size " + std::to_string(n) +
                                 " exceeds guard " + std::to_string(bell_guard));
    std::vector<Partition> out;
    if (n == 0) return out;
    std::vector<int> rgs(n, 0);
    while (true) {
        out.push_back(Partition::from_assignment(rgs));
        int i = n - 1;
        for (; i > 0; --i) {
            int maxv = 0;
            for (int j = 0; j < i; ++j) maxv = std::max(maxv, rgs[j]);
            if (rgs[i] <= maxv) break;
        }
        if (i == 0) break;
        ++rgs[i];
        for (int j = i + 1; j < n; ++j) rgs[j] = 0;
    }
    return out;
}

/// A partition poset with its object payloads.
struct PartitionPoset {
    ActedPoset poset;
    std::vector<Partition> objects;

    int index_of(const Partition& p) const {
        auto it = std::lower_bound(objects.begin(), objects.end(), p);
        if (it == objects.end() || !(*it == p)) return -1;
        return static_cast<int>(it - objects.begin());
    }
};

namespace detail {

inline PartitionPoset partition_poset_from_objects(std::vector<Partition> objs, const GSet* A) {
    std::sort(objs.begin(), objs.end());
    PartitionPoset P;
    P.objects = std::move(objs);
    const int m = static_cast<int>(P.objects.size());
    for (const Partition& p : P.objects) P.poset.labels.push_back(p.label());
    P.poset.leq.assign(m, std::vector<bool>(m, false));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            P.poset.leq[a][b] = refines(P.objects[a], P.objects[b]);
    if (A) {
        P.poset.group = A->group;
        for (int g = 0; g < A->group->order(); ++g) {
            std::vector<int> im(m);
            for (int i = 0; i < m; ++i) {
                int j = P.index_of(image_partition(P.objects[i], A->action[g]));
                if (j < 0) throw std::logic_error("partition poset: action leaves object set");
                im[i] = j;
            }
            P.poset.action.push_back(std::move(im));
        }
    }
    return P;
}

} // namespace detail

/// The poset of non-trivial partitions of the underlying set of A, ordered
/// by coarsening (finer is smaller), with the action by direct image.
inline PartitionPoset build_partition_poset(const GSet& A, int bell_guard = 9) {
    std::vector<Partition> objs;
    for (Partition& p : all_partitions(A.size, bell_guard))
        if (!p.is_trivial()) objs.push_back(std::move(p));
    return detail::partition_poset_from_objects(std::move(objs), &A);
}

namespace detail {

/// H-closure of an equivalence relation seeded by a partition: the finest
/// H-invariant partition coarsening it.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

inline Partition invariant_closure(const Partition& p, const GSet& A,
                                   const std::vector<int>& h_members) {
    UnionFind uf(A.size);
    for (const auto& b : p.blocks)
        for (size_t i = 1; i < b.size(); ++i) uf.unite(b[0], b[i]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int h : h_members)
            for (int x = 0; x < A.size; ++x) {
                int y = uf.find(x);
                if (x != y && uf.unite(A.act(h, x), A.act(h, y))) changed = true;
            }
    }
    std::vector<int> rep(A.size);
    for (int x = 0; x < A.size; ++x) rep[x] = uf.find(x);
    return Partition::from_assignment(rep);
}

} // namespace detail

/// All H-invariant partitions of A's underlying set, found by breadth-first
/// closure of block merges starting from the discrete partition.  This never
/// enumerates non-invariant partitions, so it is an independent route to the
/// fixed points of the full partition poset.
inline std::vector<Partition> invariant_partitions(const GSet& A, const Subgroup& H,
                                                   long long guard = 2'000'000) {
    if (H.parent != A.group.get())
        throw std::invalid_argument("invariant_partitions: subgroup of a different group");
    std::vector<std::vector<int>> singletons;
    for (int i = 0; i < A.size; ++i) singletons.push_back({i});
    Partition discrete = Partition::from_blocks(std::move(singletons));
    Partition start = detail::invariant_closure(discrete, A, H.members);

    std::set<Partition> seen{start};
    std::vector<Partition> frontier{start};
    while (!frontier.empty()) {
        std::vector<Partition> next;
        for (const Partition& p : frontier) {
            for (size_t i = 0; i < p.blocks.size(); ++i)
                for (size_t j = i + 1; j < p.blocks.size(); ++j) {
                    std::vector<std::vector<int>> merged;
                    for (size_t k = 0; k < p.blocks.size(); ++k)
                        if (k != i && k != j) merged.push_back(p.blocks[k]);
                    std::vector<int> big = p.blocks[i];
                    big.insert(big.end(), p.blocks[j].begin(), p.blocks[j].end());
                    merged.push_back(std::move(big));
                    Partition q = detail::invariant_closure(Partition::from_blocks(std::move(merged)),
                                                            A, H.members);
                    if (seen.insert(q).second) {
                        next.push_back(q);
                        if (static_cast<long long>(seen.size()) > guard)
                            throw std::runtime_error("invariant_partitions: guard exceeded");
                    }
                }
        }
        frontier = std::move(next);
    }
    return std::vector<Partition>(seen.begin(), seen.end());
}

/// The poset of non-trivial H-invariant partitions of A, ordered by
/// coarsening, with trivial action: the direct construction of the
/// equivariant partition poset.
inline PartitionPoset build_equivariant_partition_poset(const GSet& A, const Subgroup& H,
                                                        int bell_guard = 9) {
    if (A.size > bell_guard)
        throw std::runtime_error("build_equivariant_partition_poset: size guard exceeded");
    std::vector<Partition> objs;
    for (Partition& p : invariant_partitions(A, H))
        if (!p.is_trivial()) objs.push_back(std::move(p));
    return detail::partition_poset_from_objects(std::move(objs), nullptr);
}

/// Comparison of the two constructions of the equivariant partition poset:
/// the H-fixed subposet of the full partition poset against the direct
/// enumeration of invariant partitions.
struct FixedPointReport {
    bool isomorphic = false;
    int fixed_objects = 0;
    int direct_objects = 0;
    long long relations = 0;             // strict pairs on either side
    std::vector<int> bijection;          // fixed-subposet index -> direct index
    std::string detail;
};

inline FixedPointReport verify_fixed_point_equivalence(const GSet& A, const Subgroup& H,
                                                       int bell_guard = 9) {
    PartitionPoset full = build_partition_poset(A, bell_guard);
    ActedPoset fixed = fixed_subposet(full.poset, H);
    PartitionPoset direct = build_equivariant_partition_poset(A, H, bell_guard);
    FixedPointReport rep;
    rep.fixed_objects = fixed.size();
    rep.direct_objects = direct.poset.size();
    for (int a = 0; a < fixed.size(); ++a)
        for (int b = 0; b < fixed.size(); ++b)
            if (fixed.less(a, b)) ++rep.relations;
    auto iso = poset_isomorphic(fixed, direct.poset);
    if (iso) {
        rep.isomorphic = true;
        rep.bijection = *iso;
    } else {
        rep.detail = "no order isomorphism between fixed subposet and direct construction";
    }
    return rep;
}

/// The induced permutation of blocks of an invariant partition under one
/// group element: block i maps to block block_action(...)[i].
inline std::vector<int> block_action(const GSet& A, const Partition& p, int g) {
    const int k = p.block_count();
    std::map<std::vector<int>, int> block_id;
    for (int i = 0; i < k; ++i) block_id[p.blocks[i]] = i;
    std::vector<int> out(k);
    for (int i = 0; i < k; ++i) {
        std::vector<int> img;
        img.reserve(p.blocks[i].size());
        for (int x : p.blocks[i]) img.push_back(A.act(g, x));
        std::sort(img.begin(), img.end());
        auto it = block_id.find(img);
        if (it == block_id.end())
            throw std::invalid_argument("block_action: partition is not invariant");
        out[i] = it->second;
    }
    return out;
}

/// Number of orbits of blocks of an invariant partition under the acting
/// group of A.
inline int block_orbit_count(const GSet& A, const Partition& p) {
    const int k = p.block_count();
    detail::UnionFind uf(k);
    for (int g = 0; g < A.group->order(); ++g) {
        std::vector<int> act = block_action(A, p, g);
        for (int i = 0; i < k; ++i) uf.unite(i, act[i]);
    }
    std::set<int> reps;
    for (int i = 0; i < k; ++i) reps.insert(uf.find(i));
    return static_cast<int>(reps.size());
}

/// Full subposet of the equivariant partition poset on partitions whose
/// block set has at least two orbits.
inline PartitionPoset two_orbit_subposet(const PartitionPoset& PG, const GSet& A) {
    std::vector<Partition> objs;
    for (const Partition& p : PG.objects)
        if (block_orbit_count(A, p) >= 2) objs.push_back(p);
    return detail::partition_poset_from_objects(std::move(objs), nullptr);
}

/// Objects orthogonal to alpha: no common lower bound and no common upper
/// bound inside the poset of non-trivial invariant partitions.
inline std::vector<int> orthogonal_complement(const PartitionPoset& PG, int alpha) {
    const ActedPoset& P = PG.poset;
    std::vector<int> out;
    for (int beta = 0; beta < P.size(); ++beta) {
        if (beta == alpha) continue;
        bool bounded = false;
        for (int w = 0; w < P.size() && !bounded; ++w) {
            if (P.leq[w][alpha] && P.leq[w][beta]) bounded = true;
            if (P.leq[alpha][w] && P.leq[beta][w]) bounded = true;
        }
        if (!bounded) out.push_back(beta);
    }
    return out;
}

/// Predicted reduced Betti numbers for the equivariant partition complex of
/// m isovariant orbits of type G/H: a wedge of |W_G(H)|^{m-1} smash products
/// of unreduced suspensions, computed via the Kunneth formula over Z with
/// torsion-free inputs.
struct WedgePrediction {
    long long weight = 0;                       // |W_G(H)|^(m-1)
    HomologyResult subgroup_factor;             // homology of |S(G,H)|
    HomologyResult partition_factor;            // homology of |P(m)|
    std::map<int, long long> predicted_betti;
    bool exact = true;                          // false if torsion forced a rational fallback
};

inline WedgePrediction isovariant_wedge_prediction(GroupPtr G, const Subgroup& H, int m,
                                                   int bell_guard = 9, int order_guard = 512) {
    if (m < 2) throw std::invalid_argument("isovariant_wedge_prediction: need at least 2 orbits");
    WedgePrediction out;
    GSet pts = trivial_gset(make_group("", 0), m);
    out.partition_factor =
        reduced_homology(order_complex(build_partition_poset(pts, bell_guard).poset));
    ActedPoset S = between_subgroup_poset(*G, H, order_guard);
    out.subgroup_factor = reduced_homology(order_complex(S));

    if (H.order() == G->order()) {
        // Whole-group stabilizer class: the orbits are trivial points, the
        // equivariant poset is the plain partition poset of the orbit set,
        // and no suspension shift applies.  The smash formula needs a proper
        // stabilizer class.
        out.weight = 1;
        for (const auto& [d, b] : out.partition_factor.betti) out.predicted_betti[d] = b;
        out.exact = out.partition_factor.torsion_free();
        return out;
    }

    Group W = weyl_group(*G, H);
    out.weight = 1;
    for (int i = 0; i + 1 < m; ++i) out.weight *= W.order();
    out.exact = out.subgroup_factor.torsion_free() && out.partition_factor.torsion_free();

    for (const auto& [i, bi] : out.subgroup_factor.betti)
        for (const auto& [j, bj] : out.partition_factor.betti) {
            long long k = static_cast<long long>(i) + j + 2;   // two unreduced suspensions
            out.predicted_betti[static_cast<int>(k)] += out.weight * bi * bj;
        }
    return out;
}

/// Both sides of the wedge-count identity relating normalizers inside
/// symmetric groups to the Weyl group of H in G, reported under the two
/// possible exponent readings (orbit count minus one, and total points minus
/// one).  No verdict is asserted.
struct WeylIdentityReport {
    int d = 0;                     // |G/H|
    int m = 0;                     // number of orbits
    long long image_order_d = 0;   // |image of G in Sym(d)|
    long long image_order_dm = 0;  // |image of G in Sym(dm)|
    long long normalizer_in_sym_dm = 0;
    long long normalizer_in_sym_d = 0;
    long long weyl_in_sym_dm = 0;      // normalizer / image
    long long weyl_in_sym_d = 0;
    long long weyl_G_H = 0;            // |W_G(H)|
    Rational left_side;                // |W_{Sym(dm)}| / (|W_{Sym(d)}| * m!)
    long long right_side_orbit_reading = 0;    // |W_G(H)|^(m-1)
    long long right_side_point_reading = 0;    // |W_G(H)|^(dm-1)
};

namespace detail {

/// Order of { p in Sym(degree) : p S p^-1 = S } for a set S of permutations,
/// scanned lazily so no multiplication table is ever built.
inline long long normalizer_order_in_sym(const std::vector<Perm>& subgroup_elements, int degree) {
    std::set<std::vector<int>> member_images;
    for (const Perm& s : subgroup_elements) member_images.insert(s.images());
    std::vector<int> p(degree);
    std::iota(p.begin(), p.end(), 0);
    long long count = 0;
    do {
        Perm g{std::vector<int>(p)};
        Perm ginv = g.inverse();
        bool ok = true;
        for (const Perm& s : subgroup_elements) {
            if (!member_images.count(compose(compose(g, s), ginv).images())) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

} // namespace detail

inline WeylIdentityReport weyl_identity_check(GroupPtr G, const Subgroup& H, int m,
                                              int degree_guard = 8) {
    WeylIdentityReport rep;
    GSet GH = coset_gset(G, H);
    rep.d = GH.size;
    rep.m = m;
    if (rep.d * m > degree_guard)
        throw std::runtime_error("weyl_identity_check: total degree " +
                                 std::to_string(rep.d * m) + " exceeds guard " +
                                 std::to_string(degree_guard));
    GSet A = GH;
    for (int i = 1; i < m; ++i) A = disjoint_union(A, GH);

    Group image_d = generate_group(GH.action, GH.size);
    Group image_dm = generate_group(A.action, A.size);
    rep.image_order_d = image_d.order();
    rep.image_order_dm = image_dm.order();
    rep.normalizer_in_sym_d = detail::normalizer_order_in_sym(image_d.elements, GH.size);
    rep.normalizer_in_sym_dm = detail::normalizer_order_in_sym(image_dm.elements, A.size);
    rep.weyl_in_sym_d = rep.normalizer_in_sym_d / rep.image_order_d;
    rep.weyl_in_sym_dm = rep.normalizer_in_sym_dm / rep.image_order_dm;
    rep.weyl_G_H = weyl_group(*G, H).order();

    long long mfact = 1;
    for (int i = 2; i <= m; ++i) mfact *= i;
    rep.left_side = Rational(Int(rep.weyl_in_sym_dm), Int(rep.weyl_in_sym_d * mfact));
    rep.right_side_orbit_reading = 1;
    for (int i = 0; i + 1 < m; ++i) rep.right_side_orbit_reading *= rep.weyl_G_H;
    rep.right_side_point_reading = 1;
    for (int i = 0; i + 1 < rep.d * m; ++i) rep.right_side_point_reading *= rep.weyl_G_H;
    return rep;
}

} // namespace eqp

#endif
