// Test-only oracles, kept independent of the library code paths they check.
#ifndef EQP_TEST_ORACLES_HPP
#define EQP_TEST_ORACLES_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "eqp/gset.hpp"
#include "eqp/partition.hpp"
#include "eqp/tree.hpp"

namespace oracles {

/// Every permutation of n points, via std::next_permutation.
inline std::vector<eqp::Perm> symmetric_group_perms(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 0);
    std::vector<eqp::Perm> out;
    do {
        out.emplace_back(std::vector<int>(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

/// Subgroup count by brute force over all subsets of the element table.
/// Only sensible for very small groups.
inline int exhaustive_subgroup_count(const eqp::Group& G) {
    const int n = G.order();
    int count = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (!(mask & 1)) continue;   // must contain the identity
        bool closed = true;
        for (int a = 0; a < n && closed; ++a) {
            if (!(mask & (1u << a))) continue;
            if (!(mask & (1u << G.inv[a]))) closed = false;
            for (int b = 0; b < n && closed; ++b) {
                if (!(mask & (1u << b))) continue;
                if (!(mask & (1u << G.mul[a][b]))) closed = false;
            }
        }
        if (closed) ++count;
    }
    return count;
}

/// The recursive tree construction: a tree on a leaf set is a root whose
/// children partition the set into at least two blocks, each block a single
/// leaf or recursively a tree.  Returns inner-edge families (the empty
/// family is the corolla).
inline std::set<std::vector<std::uint32_t>> subtree_families(const std::vector<int>& leaves) {
    std::set<std::vector<std::uint32_t>> out;
    const int k = static_cast<int>(leaves.size());
    if (k < 2) return out;
    for (const eqp::Partition& p : eqp::all_partitions(k)) {
        if (p.block_count() < 2) continue;
        // per-block alternatives: nothing for singletons; for larger blocks
        // the block edge plus any subtree family on it
        std::vector<std::vector<std::vector<std::uint32_t>>> choices;
        for (const auto& blk : p.blocks) {
            if (blk.size() == 1) continue;
            std::vector<int> sub;
            std::uint32_t mask = 0;
            for (int i : blk) {
                sub.push_back(leaves[i]);
                mask |= 1u << leaves[i];
            }
            std::vector<std::vector<std::uint32_t>> alts;
            for (const auto& fam : subtree_families(sub)) {
                std::vector<std::uint32_t> with_edge = fam;
                with_edge.push_back(mask);
                std::sort(with_edge.begin(), with_edge.end());
                alts.push_back(std::move(with_edge));
            }
            std::vector<std::uint32_t> corolla{mask};
            alts.push_back(corolla);
            choices.push_back(std::move(alts));
        }
        // cross product of the per-block alternatives
        std::vector<std::vector<std::uint32_t>> acc{{}};
        for (const auto& alts : choices) {
            std::vector<std::vector<std::uint32_t>> next;
            for (const auto& base : acc)
                for (const auto& alt : alts) {
                    std::vector<std::uint32_t> fam = base;
                    fam.insert(fam.end(), alt.begin(), alt.end());
                    std::sort(fam.begin(), fam.end());
                    next.push_back(std::move(fam));
                }
            acc = std::move(next);
        }
        for (auto& fam : acc) out.insert(std::move(fam));
    }
    return out;
}

inline std::set<std::vector<std::uint32_t>> recursive_tree_enumeration(int n) {
    std::vector<int> leaves(n);
    std::iota(leaves.begin(), leaves.end(), 0);
    std::set<std::vector<std::uint32_t>> fams = subtree_families(leaves);
    fams.erase(std::vector<std::uint32_t>{});   // drop the corolla
    return fams;
}

/// All homomorphisms from H (as a standalone group) to the symmetric group
/// on k points, as full action tables.
inline std::vector<std::vector<eqp::Perm>> all_actions(const eqp::Group& H, int k) {
    std::vector<eqp::Perm> sym = symmetric_group_perms(k);
    // choose a small generating set greedily
    std::vector<int> gens;
    {
        eqp::Subgroup span = eqp::subgroup_closure(H, {});
        for (int g = 1; g < H.order() && span.order() < H.order(); ++g) {
            if (span.contains(g)) continue;
            std::vector<int> seed = span.members;
            seed.push_back(g);
            span = eqp::subgroup_closure(H, seed);
            gens.push_back(g);
        }
    }
    std::vector<std::vector<eqp::Perm>> out;
    std::vector<int> pick(gens.size(), 0);
    while (true) {
        // try to extend the generator assignment to a homomorphism by
        // breadth-first closure over the element table
        std::vector<int> image(H.order(), -1);
        image[0] = 0;   // identity -> identity (sym[0] is the identity)
        bool ok = true;
        bool progress = true;
        std::map<std::vector<int>, int> sym_index;
        for (size_t i = 0; i < sym.size(); ++i) sym_index[sym[i].images()] = static_cast<int>(i);
        for (size_t i = 0; i < gens.size(); ++i) image[gens[i]] = pick[i];
        while (progress && ok) {
            progress = false;
            for (int a = 0; a < H.order() && ok; ++a) {
                if (image[a] < 0) continue;
                for (int b = 0; b < H.order(); ++b) {
                    if (image[b] < 0) continue;
                    int ab = H.mul[a][b];
                    int im = sym_index.at(eqp::compose(sym[image[a]], sym[image[b]]).images());
                    if (image[ab] < 0) {
                        image[ab] = im;
                        progress = true;
                    } else if (image[ab] != im) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        for (int a = 0; a < H.order(); ++a)
            if (image[a] < 0) ok = false;
        if (ok) {
            std::vector<eqp::Perm> table;
            for (int a = 0; a < H.order(); ++a) table.push_back(sym[image[a]]);
            out.push_back(std::move(table));
        }
        // advance the odometer
        size_t pos = 0;
        while (pos < pick.size()) {
            if (++pick[pos] < static_cast<int>(sym.size())) break;
            pick[pos] = 0;
            ++pos;
        }
        if (pos >= pick.size()) break;
    }
    return out;
}

/// The abstract-surjection route to the equivariant partitions of A as an
/// H-set: enumerate H-sets B with |B| < |A|, all equivariant surjections
/// A -> B, and record their fiber partitions.  The quotient by equivariant
/// automorphisms of B happens for free at the fiber-partition level.
inline std::set<eqp::Partition> surjection_partition_oracle(const eqp::GSet& A,
                                                            const eqp::Subgroup& H) {
    eqp::Group Hgrp = eqp::subgroup_as_group(*A.group, H);
    // the restricted action of H on A, indexed by Hgrp's element order
    std::vector<eqp::Perm> restricted;
    for (int h = 0; h < Hgrp.order(); ++h)
        restricted.push_back(A.action[A.group->index_of(Hgrp.elements[h])]);

    std::set<eqp::Partition> out;
    for (int k = 1; k < A.size; ++k) {
        for (const auto& action_B : all_actions(Hgrp, k)) {
            // all equivariant surjections f : A -> B
            std::vector<int> f(A.size, 0);
            while (true) {
                bool surjective = true, equivariant = true;
                std::vector<bool> hit(k, false);
                for (int a = 0; a < A.size; ++a) hit[f[a]] = true;
                for (int b = 0; b < k; ++b)
                    if (!hit[b]) surjective = false;
                if (surjective) {
                    for (int h = 0; h < Hgrp.order() && equivariant; ++h)
                        for (int a = 0; a < A.size; ++a)
                            if (f[restricted[h](a)] != action_B[h](f[a])) {
                                equivariant = false;
                                break;
                            }
                    if (equivariant) {
                        std::vector<std::vector<int>> fibers(k);
                        for (int a = 0; a < A.size; ++a) fibers[f[a]].push_back(a);
                        eqp::Partition p = eqp::Partition::from_blocks(std::move(fibers));
                        if (!p.is_trivial()) out.insert(p);
                    }
                }
                int pos = 0;
                while (pos < A.size) {
                    if (++f[pos] < k) break;
                    f[pos] = 0;
                    ++pos;
                }
                if (pos >= A.size) break;
            }
        }
    }
    return out;
}

} // namespace oracles

#endif
