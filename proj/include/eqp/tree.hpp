#ifndef EQP_TREE_HPP
#define EQP_TREE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/complex.hpp"
#include "eqp/partition.hpp"
#include "eqp/poset.hpp"

namespace eqp {

/// A reduced tree with leaves labeled by {0,...,n-1}, encoded by its inner
/// edges.  Every inner edge is determined by the set of leaves above it, so
/// the whole tree is the family of those leaf sets: subsets of size >= 2,
/// proper, pairwise nested or disjoint.  The corolla (no inner edges) is
/// excluded everywhere.
///
/// Faces are transparent in this encoding: contracting a set of inner edges
/// just removes their leaf sets from the family.
struct ReducedTree {
    int n_leaves = 0;
    std::vector<std::uint32_t> edges;   // sorted ascending

    int inner_edge_count() const { return static_cast<int>(edges.size()); }

    friend bool operator==(const ReducedTree& a, const ReducedTree& b) {
        return a.n_leaves == b.n_leaves && a.edges == b.edges;
    }
    friend bool operator<(const ReducedTree& a, const ReducedTree& b) {
        if (a.n_leaves != b.n_leaves) return a.n_leaves < b.n_leaves;
        return a.edges < b.edges;
    }
};

inline int popcount32(std::uint32_t x) {
    int c = 0;
    while (x) {
        x &= x - 1;
        ++c;
    }
    return c;
}

inline bool masks_laminar(std::uint32_t a, std::uint32_t b) {
    std::uint32_t i = a & b;
    return i == 0 || i == a || i == b;
}

inline bool valid_reduced_tree(const ReducedTree& T) {
    if (T.n_leaves < 2 || T.edges.empty()) return false;
    const std::uint32_t full = (T.n_leaves >= 32) ? ~0u : ((1u << T.n_leaves) - 1);
    for (size_t i = 0; i < T.edges.size(); ++i) {
        std::uint32_t e = T.edges[i];
        if ((e & ~full) || popcount32(e) < 2 || e == full) return false;
        for (size_t j = i + 1; j < T.edges.size(); ++j)
            if (!masks_laminar(e, T.edges[j])) return false;
    }
    return std::is_sorted(T.edges.begin(), T.edges.end()) &&
           std::adjacent_find(T.edges.begin(), T.edges.end()) == T.edges.end();
}

inline ReducedTree tree_from_edges(int n_leaves, std::vector<std::uint32_t> edges) {
    std::sort(edges.begin(), edges.end());
    ReducedTree T{n_leaves, std::move(edges)};
    if (!valid_reduced_tree(T))
        throw std::invalid_argument("tree_from_edges: not a reduced tree");
    return T;
}

inline std::uint32_t mask_image(std::uint32_t mask, const Perm& sigma) {
    std::uint32_t out = 0;
    for (int i = 0; i < sigma.degree(); ++i)
        if (mask & (1u << i)) out |= 1u << sigma(i);
    return out;
}

/// Relabel the leaves of T by sigma.
inline ReducedTree tree_image(const ReducedTree& T, const Perm& sigma) {
    std::vector<std::uint32_t> edges;
    edges.reserve(T.edges.size());
    for (std::uint32_t e : T.edges) edges.push_back(mask_image(e, sigma));
    std::sort(edges.begin(), edges.end());
    return ReducedTree{T.n_leaves, std::move(edges)};
}

/// Rooted structure recovered from the edge family: children of each node.
/// Node -1 is the root; other internal nodes are edge indices; leaves are
/// encoded as ~leaf (negative, distinct from -1 via offset).
struct RootedView {
    // child entries: >= 0 -> edge index (internal node), < 0 -> leaf (~entry)
    std::map<int, std::vector<int>> children;   // key: -1 root, or edge index
};

inline RootedView rooted_view(const ReducedTree& T) {
    RootedView V;
    const int m = T.inner_edge_count();
    const std::uint32_t full = (1u << T.n_leaves) - 1;
    // parent of edge i: the smallest strict superset among edges, else root
    auto parent_of = [&](int i) {
        int best = -1;
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            std::uint32_t a = T.edges[i], b = T.edges[j];
            if ((a & b) == a && a != b)
                if (best < 0 || popcount32(T.edges[j]) < popcount32(T.edges[best])) best = j;
        }
        return best;
    };
    std::vector<std::uint32_t> covered(m + 1, 0);   // index m = root
    for (int i = 0; i < m; ++i) {
        int p = parent_of(i);
        V.children[p].push_back(i);
        covered[p < 0 ? m : p] |= T.edges[i];
    }
    // attach leaves not covered by any child edge
    for (int node = -1; node < m; ++node) {
        std::uint32_t domain = (node < 0) ? full : T.edges[node];
        std::uint32_t cov = covered[node < 0 ? m : node];
        for (int leaf = 0; leaf < T.n_leaves; ++leaf)
            if ((domain & (1u << leaf)) && !(cov & (1u << leaf)))
                V.children[node].push_back(~leaf - 1);
        if (V.children.find(node) == V.children.end() && node >= 0)
            throw std::logic_error("rooted_view: internal node without children");
    }
    return V;
}

namespace detail {

inline std::string tree_code_rec(const ReducedTree& T, const RootedView& V, int node,
                                 const std::vector<std::string>* names) {
    std::vector<std::string> parts;
    auto it = V.children.find(node);
    if (it != V.children.end()) {
        for (int c : it->second) {
            if (c < -1) {
                int leaf = ~(c + 1);
                parts.push_back(names && leaf < static_cast<int>(names->size())
                                    ? (*names)[leaf]
                                    : std::to_string(leaf));
            } else {
                parts.push_back(tree_code_rec(T, V, c, names));
            }
        }
    }
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ' ';
        out += parts[i];
    }
    out += ')';
    return out;
}

} // namespace detail

/// Canonical nested-parenthesis code; equal codes characterize label- and
/// root-preserving isomorphism.
inline std::string canonical_code(const ReducedTree& T,
                                  const std::vector<std::string>* names = nullptr) {
    RootedView V = rooted_view(T);
    return detail::tree_code_rec(T, V, -1, names);
}

/// All contractions of nonempty edge subsets that leave at least one inner
/// edge, i.e. trees on every nonempty proper subfamily.
inline std::vector<ReducedTree> faces(const ReducedTree& T) {
    const int m = T.inner_edge_count();
    std::vector<ReducedTree> out;
    for (std::uint32_t keep = 1; keep < (1u << m); ++keep) {
        if (keep == (1u << m) - 1) continue;   // identity, not a proper face
        std::vector<std::uint32_t> edges;
        for (int i = 0; i < m; ++i)
            if (keep & (1u << i)) edges.push_back(T.edges[i]);
        out.push_back(ReducedTree{T.n_leaves, std::move(edges)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All reduced trees on n leaves (corolla excluded): depth-first search over
/// laminar families of candidate leaf sets.
inline std::vector<ReducedTree> enumerate_reduced_trees(int n, int guard = 7) {
    if (n > guard)
        throw std::runtime_error("enumerate_reduced_trees: " + std::to_string(n) +
                                 " leaves exceeds guard " + std::to_string(guard));
    std::vector<ReducedTree> out;
    if (n < 3) return out;   // only the corolla exists below 3 leaves
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::uint32_t> candidates;
    for (std::uint32_t s = 0; s <= full; ++s)
        if (popcount32(s) >= 2 && s != full) candidates.push_back(s);

    std::vector<std::uint32_t> chosen;
    struct Rec {
        const std::vector<std::uint32_t>& cand;
        std::vector<std::uint32_t>& chosen;
        std::vector<ReducedTree>& out;
        int n;
        void run(size_t start) {
            if (!chosen.empty()) out.push_back(ReducedTree{n, chosen});
            for (size_t i = start; i < cand.size(); ++i) {
                bool ok = true;
                for (std::uint32_t c : chosen)
                    if (!masks_laminar(c, cand[i])) { ok = false; break; }
                if (!ok) continue;
                chosen.push_back(cand[i]);
                run(i + 1);
                chosen.pop_back();
            }
        }
    } rec{candidates, chosen, out, n};
    rec.run(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// A tree poset with payloads.
struct TreePoset {
    ActedPoset poset;
    std::vector<ReducedTree> objects;
    int n_leaves = 0;

    int index_of(const ReducedTree& T) const {
        auto it = std::lower_bound(objects.begin(), objects.end(), T);
        if (it == objects.end() || !(*it == T)) return -1;
        return static_cast<int>(it - objects.begin());
    }
};

namespace detail {

inline TreePoset tree_poset_from_objects(std::vector<ReducedTree> objs, int n_leaves,
                                         const GSet* A) {
    std::sort(objs.begin(), objs.end());
    TreePoset P;
    P.n_leaves = n_leaves;
    P.objects = std::move(objs);
    const int m = static_cast<int>(P.objects.size());
    for (const ReducedTree& T : P.objects) P.poset.labels.push_back(canonical_code(T));
    P.poset.leq.assign(m, std::vector<bool>(m, false));
    // T' <= T iff T' is a contraction of T iff edges(T') is a subfamily.
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const auto &ea = P.objects[a].edges, &eb = P.objects[b].edges;
            if (ea.size() > eb.size()) continue;
            P.poset.leq[a][b] = std::includes(eb.begin(), eb.end(), ea.begin(), ea.end());
        }
    if (A) {
        P.poset.group = A->group;
        for (int g = 0; g < A->group->order(); ++g) {
            std::vector<int> im(m);
            for (int i = 0; i < m; ++i) {
                int j = P.index_of(tree_image(P.objects[i], A->action[g]));
                if (j < 0) throw std::logic_error("tree poset: action leaves object set");
                im[i] = j;
            }
            P.poset.action.push_back(std::move(im));
        }
    }
    return P;
}

} // namespace detail

/// The poset of reduced A-trees: a tree sits above all of its contractions,
/// and the group relabels leaves.
inline TreePoset build_tree_poset(const GSet& A, int enum_guard = 7, int poset_guard = 6) {
    if (A.size > poset_guard)
        throw std::runtime_error("build_tree_poset: poset guard exceeded");
    return detail::tree_poset_from_objects(enumerate_reduced_trees(A.size, enum_guard), A.size,
                                           &A);
}

/// H-orbits of candidate leaf sets that are internally laminar; an invariant
/// tree is a union of compatible orbits.
inline std::vector<std::vector<std::uint32_t>> invariant_edge_orbits(const GSet& A,
                                                                     const Subgroup& H) {
    const std::uint32_t full = (1u << A.size) - 1;
    std::set<std::uint32_t> done;
    std::vector<std::vector<std::uint32_t>> orbits;
    for (std::uint32_t s = 0; s <= full; ++s) {
        if (popcount32(s) < 2 || s == full || done.count(s)) continue;
        std::set<std::uint32_t> orb;
        for (int h : H.members) orb.insert(mask_image(s, A.action[h]));
        // the orbit must itself be laminar to sit inside one tree
        bool ok = true;
        for (auto it = orb.begin(); it != orb.end() && ok; ++it)
            for (auto jt = std::next(it); jt != orb.end() && ok; ++jt)
                if (!masks_laminar(*it, *jt)) ok = false;
        for (std::uint32_t x : orb) done.insert(x);
        if (ok) orbits.emplace_back(orb.begin(), orb.end());
    }
    return orbits;
}

/// All H-invariant reduced trees on A, built directly from invariant edge
/// orbits (never enumerating non-invariant trees).
inline std::vector<ReducedTree> enumerate_invariant_trees(const GSet& A, const Subgroup& H,
                                                          int guard = 7) {
    if (A.size > guard)
        throw std::runtime_error("enumerate_invariant_trees: guard exceeded");
    std::vector<ReducedTree> out;
    if (A.size < 3) return out;
    std::vector<std::vector<std::uint32_t>> orbits = invariant_edge_orbits(A, H);
    std::vector<std::uint32_t> chosen;
    struct Rec {
        const std::vector<std::vector<std::uint32_t>>& orbits;
        std::vector<std::uint32_t>& chosen;
        std::vector<ReducedTree>& out;
        int n;
        void run(size_t start) {
            if (!chosen.empty()) {
                std::vector<std::uint32_t> edges = chosen;
                std::sort(edges.begin(), edges.end());
                out.push_back(ReducedTree{n, std::move(edges)});
            }
            for (size_t i = start; i < orbits.size(); ++i) {
                bool ok = true;
                for (std::uint32_t e : orbits[i]) {
                    for (std::uint32_t c : chosen)
                        if (!masks_laminar(c, e)) { ok = false; break; }
                    if (!ok) break;
                }
                if (!ok) continue;
                size_t before = chosen.size();
                chosen.insert(chosen.end(), orbits[i].begin(), orbits[i].end());
                run(i + 1);
                chosen.resize(before);
            }
        }
    } rec{orbits, chosen, out, A.size};
    rec.run(0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Direct construction of the poset of H-equivariant reduced trees.
/// Morphisms contract H-stable edge sets; for invariant source and target
/// the contracted set is automatically H-stable, so the order is subfamily
/// containment as in the full tree poset.
inline TreePoset build_equivariant_tree_poset(const GSet& A, const Subgroup& H,
                                              int guard = 7) {
    return detail::tree_poset_from_objects(enumerate_invariant_trees(A, H, guard), A.size,
                                           nullptr);
}

/// Dual-construction comparison for trees: H-fixed subposet of the full tree
/// poset against the direct equivariant construction.
inline FixedPointReport verify_tree_fixed_points(const GSet& A, const Subgroup& H,
                                                 int enum_guard = 7, int poset_guard = 6) {
    TreePoset full = build_tree_poset(A, enum_guard, poset_guard);
    ActedPoset fixed = fixed_subposet(full.poset, H);
    TreePoset direct = build_equivariant_tree_poset(A, H, enum_guard);
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

// ---------------------------------------------------------------------------
// Layered trees: chains of partitions
// ---------------------------------------------------------------------------

/// A layered tree is carried by its chain of partitions, layer 0 (closest to
/// the leaves) first, strictly coarsening upward.
struct LayeredTree {
    std::vector<Partition> layers;
};

inline LayeredTree chain_to_layered(const std::vector<Partition>& chain) {
    for (size_t i = 0; i + 1 < chain.size(); ++i)
        if (!(refines(chain[i], chain[i + 1])) || chain[i] == chain[i + 1])
            throw std::invalid_argument("chain_to_layered: chain not strictly coarsening");
    return LayeredTree{chain};
}

/// The tree obtained by collapsing unary vertices and forgetting layers: its
/// inner edges are the proper, non-singleton blocks appearing anywhere in
/// the chain.
inline ReducedTree layered_to_tree(const LayeredTree& L, int n_leaves) {
    std::set<std::uint32_t> edges;
    const std::uint32_t full = (1u << n_leaves) - 1;
    for (const Partition& p : L.layers)
        for (const auto& b : p.blocks) {
            if (b.size() < 2) continue;
            std::uint32_t mask = 0;
            for (int x : b) mask |= 1u << x;
            if (mask != full) edges.insert(mask);
        }
    if (edges.empty())
        throw std::invalid_argument("layered_to_tree: chain has no non-trivial proper block");
    return ReducedTree{n_leaves, std::vector<std::uint32_t>(edges.begin(), edges.end())};
}

/// Vertices of layer i are the blocks of layer i; a vertex is unary when its
/// block already occurs in the layer below (or is a singleton, for layer 0).
inline std::vector<std::vector<int>> non_unary_blocks_per_layer(const LayeredTree& L) {
    std::vector<std::vector<int>> out;   // indices into layers[i].blocks
    for (size_t i = 0; i < L.layers.size(); ++i) {
        std::vector<int> idx;
        for (size_t b = 0; b < L.layers[i].blocks.size(); ++b) {
            const auto& blk = L.layers[i].blocks[b];
            bool unary;
            if (i == 0) {
                unary = blk.size() == 1;
            } else {
                unary = std::find(L.layers[i - 1].blocks.begin(), L.layers[i - 1].blocks.end(),
                                  blk) != L.layers[i - 1].blocks.end();
            }
            if (!unary) idx.push_back(static_cast<int>(b));
        }
        out.push_back(std::move(idx));
    }
    return out;
}

inline bool is_elementary(const LayeredTree& L) {
    for (const auto& layer : non_unary_blocks_per_layer(L))
        if (layer.size() != 1) return false;
    return true;
}

/// One orbit of non-unary vertices per layer, under the H-action on blocks.
inline bool is_H_elementary(const LayeredTree& L, const GSet& A, const Subgroup& H) {
    auto per_layer = non_unary_blocks_per_layer(L);
    for (size_t i = 0; i < L.layers.size(); ++i) {
        const Partition& p = L.layers[i];
        if (per_layer[i].empty()) return false;
        // orbit count of the non-unary blocks
        std::set<std::vector<int>> pool;
        for (int b : per_layer[i]) pool.insert(p.blocks[b]);
        std::set<std::vector<int>> orbit;
        std::vector<std::vector<int>> todo{p.blocks[per_layer[i][0]]};
        orbit.insert(todo[0]);
        while (!todo.empty()) {
            std::vector<int> blk = std::move(todo.back());
            todo.pop_back();
            for (int h : H.members) {
                std::vector<int> img;
                for (int x : blk) img.push_back(A.act(h, x));
                std::sort(img.begin(), img.end());
                if (pool.count(img) && orbit.insert(img).second) todo.push_back(img);
            }
        }
        if (orbit.size() != pool.size()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Measured trees and the tree space
// ---------------------------------------------------------------------------

/// A reduced tree with rational inner-edge lengths in (0,1], at least one of
/// them exactly 1.
struct MeasuredTree {
    ReducedTree tree;
    std::map<std::uint32_t, Rational> lengths;

    friend bool operator==(const MeasuredTree& a, const MeasuredTree& b) {
        return a.tree == b.tree && a.lengths == b.lengths;
    }
};

inline void validate_measured(const MeasuredTree& M) {
    if (M.lengths.size() != M.tree.edges.size())
        throw std::invalid_argument("measured tree: lengths do not match edges");
    Rational maxlen(0);
    for (std::uint32_t e : M.tree.edges) {
        auto it = M.lengths.find(e);
        if (it == M.lengths.end())
            throw std::invalid_argument("measured tree: missing edge length");
        if (it->second <= 0 || it->second > 1)
            throw std::invalid_argument("measured tree: length outside (0,1]");
        maxlen = std::max(maxlen, it->second);
    }
    if (maxlen != 1) throw std::invalid_argument("measured tree: no edge of length 1");
}

inline MeasuredTree measured_image(const MeasuredTree& M, const Perm& sigma) {
    MeasuredTree out;
    out.tree = tree_image(M.tree, sigma);
    for (const auto& [e, l] : M.lengths) out.lengths[mask_image(e, sigma)] = l;
    return out;
}

/// A strict chain under the face relation together with barycentric
/// coordinates; trees[0] is the largest tree, each next one a contraction.
struct TreeChain {
    std::vector<ReducedTree> trees;
    std::vector<Rational> coords;
};

/// Collapse inner edges from shortest upward: the chain of distinct shapes
/// swept out as the collapse threshold runs through (0, 1], with the time
/// each shape persists as its coordinate.
inline TreeChain tree_to_chain(const MeasuredTree& M) {
    validate_measured(M);
    std::vector<Rational> values;
    for (const auto& [e, l] : M.lengths) values.push_back(l);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    TreeChain out;
    out.trees.push_back(M.tree);
    out.coords.push_back(values[0]);
    for (size_t k = 1; k < values.size(); ++k) {
        std::vector<std::uint32_t> edges;
        for (std::uint32_t e : M.tree.edges)
            if (M.lengths.at(e) >= values[k]) edges.push_back(e);
        out.trees.push_back(ReducedTree{M.tree.n_leaves, std::move(edges)});
        out.coords.push_back(values[k] - values[k - 1]);
    }
    return out;
}

/// Inverse assignment of lengths: edges surviving to the last tree get
/// length 1; edges dropped between steps k and k+1 get 1 minus the tail sum
/// of coordinates past k.
inline MeasuredTree chain_to_tree(const TreeChain& C) {
    if (C.trees.empty() || C.trees.size() != C.coords.size())
        throw std::invalid_argument("chain_to_tree: malformed chain");
    Rational total(0);
    for (const Rational& c : C.coords) {
        if (c <= 0) throw std::invalid_argument("chain_to_tree: coordinates must be positive");
        total += c;
    }
    if (total != 1) throw std::invalid_argument("chain_to_tree: coordinates must sum to 1");
    for (size_t k = 0; k + 1 < C.trees.size(); ++k) {
        const auto &big = C.trees[k].edges, &small = C.trees[k + 1].edges;
        if (small.size() >= big.size() ||
            !std::includes(big.begin(), big.end(), small.begin(), small.end()))
            throw std::invalid_argument("chain_to_tree: not a strict chain of contractions");
    }
    MeasuredTree M;
    M.tree = C.trees[0];
    const size_t last = C.trees.size() - 1;
    Rational tail(0);   // sum of coords past the current step
    // edges of the last tree have length 1
    for (std::uint32_t e : C.trees[last].edges) M.lengths[e] = Rational(1);
    for (size_t k = last; k-- > 0;) {
        tail += C.coords[k + 1];
        for (std::uint32_t e : C.trees[k].edges)
            if (!M.lengths.count(e)) M.lengths[e] = Rational(1) - tail;
    }
    validate_measured(M);
    return M;
}

/// The space of measured A-trees as a simplicial complex: vertices are the
/// one-inner-edge trees (equivalently the candidate leaf sets) and the
/// simplices are the laminar families, one per tree shape.
struct TreeSpace {
    SimplicialComplex complex;
    std::vector<std::uint32_t> vertex_masks;        // vertex index -> leaf set
    std::vector<Perm> vertex_action;                // per group element
};

inline TreeSpace build_tree_space(const GSet& A, int guard = 7) {
    std::vector<ReducedTree> trees = enumerate_reduced_trees(A.size, guard);
    TreeSpace S;
    const std::uint32_t full = (1u << A.size) - 1;
    for (std::uint32_t s = 0; s <= full; ++s)
        if (popcount32(s) >= 2 && s != full) S.vertex_masks.push_back(s);
    std::map<std::uint32_t, int> vid;
    for (size_t i = 0; i < S.vertex_masks.size(); ++i)
        vid[S.vertex_masks[i]] = static_cast<int>(i);

    std::vector<std::vector<int>> simplices;
    simplices.reserve(trees.size());
    for (const ReducedTree& T : trees) {
        std::vector<int> s;
        s.reserve(T.edges.size());
        for (std::uint32_t e : T.edges) s.push_back(vid.at(e));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::logic_error("build_tree_space: repeated collapse vertex");
        simplices.push_back(std::move(s));
    }
    S.complex = complex_from_faces(static_cast<int>(S.vertex_masks.size()), simplices);
    for (int g = 0; g < A.group->order(); ++g) {
        std::vector<int> im(S.vertex_masks.size());
        for (size_t i = 0; i < S.vertex_masks.size(); ++i)
            im[i] = vid.at(mask_image(S.vertex_masks[i], A.action[g]));
        S.vertex_action.emplace_back(std::move(im));
    }
    return S;
}

/// The space of H-equivariant measured trees, built orbitwise: vertices are
/// invariant trees with one orbit of inner edges, and an invariant tree with
/// m orbits spans an (m-1)-simplex on its orbit collapses.
struct EquivariantTreeSpace {
    SimplicialComplex complex;
    std::vector<std::vector<std::uint32_t>> vertex_orbits;
};

inline EquivariantTreeSpace build_equivariant_tree_space(const GSet& A, const Subgroup& H,
                                                         int guard = 6) {
    if (A.size > guard)
        throw std::runtime_error("build_equivariant_tree_space: guard exceeded");
    EquivariantTreeSpace S;
    std::vector<std::vector<std::uint32_t>> orbits = invariant_edge_orbits(A, H);
    std::map<std::vector<std::uint32_t>, int> vid;
    for (const auto& orb : orbits) {
        vid[orb] = static_cast<int>(S.vertex_orbits.size());
        S.vertex_orbits.push_back(orb);
    }
    std::vector<ReducedTree> trees = enumerate_invariant_trees(A, H, guard);
    std::vector<std::vector<int>> simplices;
    for (const ReducedTree& T : trees) {
        // split the edge family into H-orbits
        std::set<std::uint32_t> remaining(T.edges.begin(), T.edges.end());
        std::vector<int> s;
        while (!remaining.empty()) {
            std::uint32_t seed = *remaining.begin();
            std::set<std::uint32_t> orb;
            for (int h : H.members) orb.insert(mask_image(seed, A.action[h]));
            std::vector<std::uint32_t> key(orb.begin(), orb.end());
            s.push_back(vid.at(key));
            for (std::uint32_t x : orb) remaining.erase(x);
        }
        std::sort(s.begin(), s.end());
        simplices.push_back(std::move(s));
    }
    S.complex = complex_from_faces(static_cast<int>(S.vertex_orbits.size()), simplices);
    return S;
}

/// Uniformly seeded random measured tree over an enumerated shape list:
/// random shape, random rational lengths in (0,1] rescaled so the maximum is
/// exactly 1.
inline MeasuredTree random_measured_tree(const std::vector<ReducedTree>& shapes,
                                         std::mt19937_64& rng) {
    if (shapes.empty()) throw std::invalid_argument("random_measured_tree: no shapes");
    const ReducedTree& T = shapes[rng() % shapes.size()];
    MeasuredTree M;
    M.tree = T;
    Rational maxlen(0);
    for (std::uint32_t e : T.edges) {
        std::uint64_t q = 1 + rng() % 8;
        std::uint64_t p = 1 + rng() % q;
        Rational len = Rational(Int(p), Int(q));
        M.lengths[e] = len;
        maxlen = std::max(maxlen, len);
    }
    for (auto& [e, l] : M.lengths) l /= maxlen;
    return M;
}

// ---------------------------------------------------------------------------
// Tree literal grammar
// ---------------------------------------------------------------------------

namespace detail {

struct TreeParser {
    const std::string& text;
    size_t pos = 0;
    const std::vector<std::string>& names;   // leaf names; empty -> 1-based ints
    int n_leaves;
    std::vector<std::uint32_t> edges;
    std::map<std::uint32_t, Rational> lengths;
    bool any_length = false;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    int leaf_of(const std::string& token) const {
        if (!names.empty()) {
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == token) return static_cast<int>(i);
            throw std::invalid_argument("tree literal: unknown leaf name '" + token + "'");
        }
        int v = 0;
        for (char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw std::invalid_argument("tree literal: bad leaf token '" + token + "'");
            v = v * 10 + (c - '0');
        }
        if (v < 1 || v > n_leaves)
            throw std::invalid_argument("tree literal: leaf index out of range");
        return v - 1;
    }

    // returns the leaf mask of the parsed subtree
    std::uint32_t parse_group(bool is_root) {
        skip_ws();
        if (pos >= text.size() || text[pos] != '(')
            throw std::invalid_argument("tree literal: expected '('");
        ++pos;
        std::uint32_t mask = 0;
        int children = 0;
        while (true) {
            skip_ws();
            if (pos >= text.size()) throw std::invalid_argument("tree literal: unterminated");
            if (text[pos] == ')') { ++pos; break; }
            if (text[pos] == '(') {
                std::uint32_t sub = parse_group(false);
                mask |= sub;
            } else {
                std::string token;
                while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
                       text[pos] != '(' && text[pos] != ')' && text[pos] != '@')
                    token.push_back(text[pos++]);
                mask |= 1u << leaf_of(token);
            }
            ++children;
        }
        if (children < 2)
            throw std::invalid_argument("tree literal: vertex with fewer than 2 children");
        if (!is_root) {
            edges.push_back(mask);
            skip_ws();
            if (pos < text.size() && text[pos] == '@') {
                ++pos;
                std::string lit;
                while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                             text[pos] == '/'))
                    lit.push_back(text[pos++]);
                lengths[mask] = parse_rational(lit);
                any_length = true;
            }
        }
        return mask;
    }
};

} // namespace detail

/// Parse the nested-parenthesis tree literal, e.g. "((1 2) (3 4))" or with
/// measured inner edges "((1 2)@1/2 ((3 4)@1/2 (5 6)@2/3)@1)".  Leaves are
/// 1-based integers, or names when `names` is nonempty.
inline MeasuredTree parse_tree_literal(const std::string& text, int n_leaves,
                                       const std::vector<std::string>& names = {}) {
    detail::TreeParser P{text, 0, names, n_leaves, {}, {}, false};
    std::uint32_t root_mask = P.parse_group(true);
    const std::uint32_t full = (1u << n_leaves) - 1;
    if (root_mask != full)
        throw std::invalid_argument("tree literal: not all leaves present");
    MeasuredTree M;
    M.tree = tree_from_edges(n_leaves, P.edges);
    if (P.any_length) {
        if (P.lengths.size() != M.tree.edges.size())
            throw std::invalid_argument("tree literal: lengths must cover all inner edges");
        M.lengths = std::move(P.lengths);
        validate_measured(M);
    }
    return M;
}

/// Render a tree (optionally measured) in the literal grammar.
inline std::string render_tree(const MeasuredTree& M,
                               const std::vector<std::string>& names = {}) {
    RootedView V = rooted_view(M.tree);
    struct Render {
        const MeasuredTree& M;
        const RootedView& V;
        const std::vector<std::string>& names;
        std::string run(int node) const {
            std::vector<std::string> parts;
            auto it = V.children.find(node);
            if (it != V.children.end())
                for (int c : it->second) {
                    if (c < -1) {
                        int leaf = ~(c + 1);
                        parts.push_back(leaf < static_cast<int>(names.size())
                                            ? names[leaf]
                                            : std::to_string(leaf + 1));
                    } else {
                        std::string sub = run(c);
                        auto lt = M.lengths.find(M.tree.edges[c]);
                        if (lt != M.lengths.end()) sub += "@" + rational_to_string(lt->second);
                        parts.push_back(std::move(sub));
                    }
                }
            std::sort(parts.begin(), parts.end());
            std::string out = "(";
            for (size_t i = 0; i < parts.size(); ++i) {
                if (i) out += ' ';
                out += parts[i];
            }
            out += ')';
            return out;
        }
    } render{M, V, names};
    return render.run(-1);
}

} // namespace eqp

#endif
