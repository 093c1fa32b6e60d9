#ifndef EQP_POSET_HPP
#define EQP_POSET_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/gset.hpp"

namespace eqp {

/// A finite poset with a compatible group action.
///
/// Objects are referred to by index; `labels` holds a canonical display form
/// per object, so that two independent constructions of the same poset can be
/// matched object-by-object.  A null group means the trivial action.
struct ActedPoset {
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq;     // reflexive, transitively closed
    GroupPtr group;                         // null = trivial action
    std::vector<std::vector<int>> action;   // [element][object] -> object

    int size() const { return static_cast<int>(labels.size()); }
    int group_order() const { return group ? group->order() : 1; }

    bool less(int a, int b) const { return a != b && leq[a][b]; }

    int act(int element, int object) const {
        return group ? action[element][object] : object;
    }

    /// Stabilizer of an object inside the acting group.
    Subgroup object_stabilizer(int object) const {
        if (!group) throw std::logic_error("object_stabilizer: trivial action");
        Subgroup S;
        S.parent = group.get();
        for (int g = 0; g < group->order(); ++g)
            if (action[g][object] == object) S.members.push_back(g);
        return S;
    }

    bool is_partial_order() const {
        const int n = size();
        for (int a = 0; a < n; ++a) {
            if (!leq[a][a]) return false;
            for (int b = 0; b < n; ++b) {
                if (a != b && leq[a][b] && leq[b][a]) return false;
                for (int c = 0; c < n; ++c)
                    if (leq[a][b] && leq[b][c] && !leq[a][c]) return false;
            }
        }
        return true;
    }

    /// Action is by order automorphisms and a homomorphism on indices.
    bool is_valid_action() const {
        if (!group) return true;
        if (static_cast<int>(action.size()) != group->order()) return false;
        const int n = size();
        for (int g = 0; g < group->order(); ++g) {
            std::vector<bool> hit(n, false);
            for (int i = 0; i < n; ++i) {
                int j = action[g][i];
                if (j < 0 || j >= n || hit[j]) return false;
                hit[j] = true;
            }
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (leq[a][b] != static_cast<bool>(leq[action[g][a]][action[g][b]]))
                        return false;
        }
        for (int i = 0; i < n; ++i)
            if (action[group->id_index][i] != i) return false;
        for (int g = 0; g < group->order(); ++g)
            for (int h = 0; h < group->order(); ++h) {
                int gh = group->mul[g][h];
                for (int i = 0; i < n; ++i)
                    if (action[g][action[h][i]] != action[gh][i]) return false;
            }
        return true;
    }
};

/// Full subposet on the given (sorted) object indices, with trivial action.
inline ActedPoset induced_subposet(const ActedPoset& P, const std::vector<int>& objs) {
    ActedPoset Q;
    for (int i : objs) Q.labels.push_back(P.labels[i]);
    const int m = static_cast<int>(objs.size());
    Q.leq.assign(m, std::vector<bool>(m, false));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) Q.leq[a][b] = P.leq[objs[a]][objs[b]];
    return Q;
}

/// Full subposet on the given objects with the action restricted to a
/// subgroup H of the acting group; the result acts through H repackaged as a
/// standalone group.  Every object must be moved within the set by all of H.
inline ActedPoset induced_subposet_with_action(const ActedPoset& P,
                                               const std::vector<int>& objs,
                                               const Subgroup& H) {
    if (!P.group || H.parent != P.group.get())
        throw std::invalid_argument("induced_subposet_with_action: bad subgroup");
    ActedPoset Q = induced_subposet(P, objs);
    std::map<int, int> pos;
    for (size_t i = 0; i < objs.size(); ++i) pos[objs[i]] = static_cast<int>(i);
    GroupPtr Hgrp = std::make_shared<Group>(subgroup_as_group(*P.group, H));
    Q.group = Hgrp;
    for (int h = 0; h < Hgrp->order(); ++h) {
        int g = P.group->index_of(Hgrp->elements[h]);
        std::vector<int> im;
        im.reserve(objs.size());
        for (int i : objs) {
            auto it = pos.find(P.action[g][i]);
            if (it == pos.end())
                throw std::invalid_argument("induced_subposet_with_action: set not H-stable");
            im.push_back(it->second);
        }
        Q.action.push_back(std::move(im));
    }
    return Q;
}

/// Objects fixed by every element of H, as a full subposet with trivial
/// residual action.
inline ActedPoset fixed_subposet(const ActedPoset& P, const Subgroup& H) {
    if (P.group && H.parent != P.group.get())
        throw std::invalid_argument("fixed_subposet: subgroup of a different group");
    std::vector<int> objs;
    for (int i = 0; i < P.size(); ++i) {
        bool fixed = true;
        if (P.group)
            for (int h : H.members)
                if (P.action[h][i] != i) { fixed = false; break; }
        if (fixed) objs.push_back(i);
    }
    return induced_subposet(P, objs);
}

/// All nonempty strict chains of P (optionally restricted to objects passing
/// `filter`), each as an increasing index sequence, in lexicographic order.
inline std::vector<std::vector<int>> enumerate_strict_chains(
    const ActedPoset& P, const std::vector<bool>* filter = nullptr,
    long long guard = 5'000'000) {
    std::vector<std::vector<int>> chains;
    const int n = P.size();
    std::vector<int> cur;
    auto allowed = [&](int i) { return !filter || (*filter)[i]; };
    std::vector<std::vector<int>> ups(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (P.less(a, b) && allowed(b)) ups[a].push_back(b);

    struct Rec {
        std::vector<std::vector<int>>& chains;
        const std::vector<std::vector<int>>& ups;
        std::vector<int>& cur;
        long long guard;
        void run(int last) {
            chains.push_back(cur);
            if (static_cast<long long>(chains.size()) > guard)
                throw std::runtime_error("enumerate_strict_chains: chain count guard exceeded");
            for (int next : ups[last]) {
                cur.push_back(next);
                run(next);
                cur.pop_back();
            }
        }
    } rec{chains, ups, cur, guard};

    for (int start = 0; start < n; ++start) {
        if (!allowed(start)) continue;
        cur.push_back(start);
        rec.run(start);
        cur.pop_back();
    }
    return chains;
}

/// The poset of nonempty strict chains ordered by subchain containment, with
/// the inherited chainwise action.
struct ChainPoset {
    ActedPoset poset;
    std::vector<std::vector<int>> chains;   // parallel to poset objects
};

inline std::string chain_label(const ActedPoset& base, const std::vector<int>& chain) {
    std::ostringstream out;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) out << " < ";
        out << base.labels[chain[i]];
    }
    return out.str();
}

inline ChainPoset chain_poset(const ActedPoset& P, const std::vector<bool>* filter = nullptr,
                              long long guard = 5'000'000) {
    ChainPoset C;
    C.chains = enumerate_strict_chains(P, filter, guard);
    const int m = static_cast<int>(C.chains.size());
    for (const auto& c : C.chains) C.poset.labels.push_back(chain_label(P, c));
    C.poset.leq.assign(m, std::vector<bool>(m, false));
    auto subchain = [](const std::vector<int>& a, const std::vector<int>& b) {
        // a and b increasing; test a subset of b
        size_t i = 0;
        for (int x : b) {
            if (i < a.size() && a[i] == x) ++i;
        }
        return i == a.size();
    };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (C.chains[a].size() <= C.chains[b].size() && subchain(C.chains[a], C.chains[b]))
                C.poset.leq[a][b] = true;
    if (P.group) {
        std::map<std::vector<int>, int> id;
        for (int i = 0; i < m; ++i) id[C.chains[i]] = i;
        C.poset.group = P.group;
        for (int g = 0; g < P.group->order(); ++g) {
            std::vector<int> im(m);
            for (int i = 0; i < m; ++i) {
                std::vector<int> moved;
                moved.reserve(C.chains[i].size());
                for (int x : C.chains[i]) moved.push_back(P.action[g][x]);
                im[i] = id.at(moved);
            }
            C.poset.action.push_back(std::move(im));
        }
    }
    return C;
}

/// An object comparable to every other object, if any: a contractibility
/// certificate for the order complex.
inline std::optional<int> has_cone_point(const ActedPoset& P) {
    for (int i = 0; i < P.size(); ++i) {
        bool cone = true;
        for (int j = 0; j < P.size(); ++j)
            if (!P.leq[i][j] && !P.leq[j][i]) { cone = false; break; }
        if (cone) return i;
    }
    return std::nullopt;
}

namespace detail {

/// Iterated neighbourhood-color refinement on both posets at once, so the
/// color ids are comparable across them.
inline std::pair<std::vector<int>, std::vector<int>> joint_order_invariants(
    const ActedPoset& P, const ActedPoset& Q) {
    auto initial = [](const ActedPoset& X) {
        std::vector<long long> color(X.size());
        for (int i = 0; i < X.size(); ++i) {
            int down = 0, up = 0;
            for (int j = 0; j < X.size(); ++j) {
                if (X.less(j, i)) ++down;
                if (X.less(i, j)) ++up;
            }
            color[i] = down * 100003LL + up;
        }
        return color;
    };
    std::vector<long long> cp = initial(P), cq = initial(Q);
    for (int round = 0; round < 3; ++round) {
        auto signature = [](const ActedPoset& X, const std::vector<long long>& color, int i) {
            std::vector<long long> sig{color[i], -1};
            std::vector<long long> dn, up;
            for (int j = 0; j < X.size(); ++j) {
                if (X.less(j, i)) dn.push_back(color[j]);
                if (X.less(i, j)) up.push_back(color[j]);
            }
            std::sort(dn.begin(), dn.end());
            std::sort(up.begin(), up.end());
            sig.insert(sig.end(), dn.begin(), dn.end());
            sig.push_back(-2);
            sig.insert(sig.end(), up.begin(), up.end());
            return sig;
        };
        std::vector<std::vector<long long>> sp(P.size()), sq(Q.size());
        std::map<std::vector<long long>, int> canon;
        for (int i = 0; i < P.size(); ++i) {
            sp[i] = signature(P, cp, i);
            canon.emplace(sp[i], 0);
        }
        for (int i = 0; i < Q.size(); ++i) {
            sq[i] = signature(Q, cq, i);
            canon.emplace(sq[i], 0);
        }
        int next = 0;
        for (auto& [sig, id] : canon) id = next++;   // rank by sorted signature
        for (int i = 0; i < P.size(); ++i) cp[i] = canon.at(sp[i]);
        for (int i = 0; i < Q.size(); ++i) cq[i] = canon.at(sq[i]);
    }
    return {std::vector<int>(cp.begin(), cp.end()), std::vector<int>(cq.begin(), cq.end())};
}

} // namespace detail

/// An order isomorphism P -> Q as an index map, if one exists.  Tries the
/// canonical-label matching first; falls back to backtracking with invariant
/// pruning, giving up past `node_cap` search nodes.
inline std::optional<std::vector<int>> poset_isomorphic(const ActedPoset& P, const ActedPoset& Q,
                                                        long long node_cap = 1'000'000) {
    const int n = P.size();
    if (n != Q.size()) return std::nullopt;
    if (n == 0) return std::vector<int>{};

    // Fast path: both posets use canonical labels for their objects.
    {
        std::map<std::string, int> qpos;
        bool unique = true;
        for (int i = 0; i < Q.size() && unique; ++i)
            unique = qpos.emplace(Q.labels[i], i).second;
        if (unique) {
            std::vector<int> f(n, -1);
            bool total = true;
            for (int i = 0; i < n && total; ++i) {
                auto it = qpos.find(P.labels[i]);
                if (it == qpos.end())
                    total = false;
                else
                    f[i] = it->second;
            }
            if (total) {
                bool ok = true;
                for (int a = 0; a < n && ok; ++a)
                    for (int b = 0; b < n && ok; ++b)
                        if (P.leq[a][b] != static_cast<bool>(Q.leq[f[a]][f[b]])) ok = false;
                if (ok) return f;
            }
        }
    }

    auto [ip, iq] = detail::joint_order_invariants(P, Q);
    {
        std::vector<int> sp = ip, sq = iq;
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq) return std::nullopt;
    }

    // Assign P-objects in order of ascending candidate count.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<int> cand_count(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (iq[j] == ip[i]) ++cand_count[i];
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return cand_count[a] < cand_count[b]; });

    std::vector<int> f(n, -1);
    std::vector<bool> used(n, false);
    long long nodes = 0;

    struct Search {
        const ActedPoset &P, &Q;
        const std::vector<int>&ip, &iq, &order;
        std::vector<int>& f;
        std::vector<bool>& used;
        long long& nodes;
        long long cap;
        bool run(int k) {
            if (k == static_cast<int>(order.size())) return true;
            int i = order[k];
            for (int j = 0; j < Q.size(); ++j) {
                if (used[j] || iq[j] != ip[i]) continue;
                if (++nodes > cap)
                    throw std::runtime_error("poset_isomorphic: search budget exceeded");
                bool ok = true;
                for (int k2 = 0; k2 < k && ok; ++k2) {
                    int i2 = order[k2];
                    if (P.leq[i][i2] != static_cast<bool>(Q.leq[j][f[i2]])) ok = false;
                    if (P.leq[i2][i] != static_cast<bool>(Q.leq[f[i2]][j])) ok = false;
                }
                if (!ok) continue;
                f[i] = j;
                used[j] = true;
                if (run(k + 1)) return true;
                f[i] = -1;
                used[j] = false;
            }
            return false;
        }
    } search{P, Q, ip, iq, order, f, used, nodes, node_cap};

    if (search.run(0)) return f;
    return std::nullopt;
}

/// The poset S(G, H) of subgroups strictly between H and G, ordered by
/// inclusion, with trivial action.
inline ActedPoset between_subgroup_poset(const Group& G, const Subgroup& H,
                                         int order_guard = 512) {
    if (!is_subgroup(G, H))
        throw std::invalid_argument("between_subgroup_poset: H is not a subgroup of G");
    std::vector<Subgroup> all = all_subgroups(G, order_guard);
    std::vector<Subgroup> mid;
    for (const Subgroup& K : all)
        if (K.order() > H.order() && K.order() < G.order() && K.contains(H))
            mid.push_back(K);
    ActedPoset P;
    const int m = static_cast<int>(mid.size());
    for (const Subgroup& K : mid) {
        std::ostringstream out;
        out << "{";
        for (size_t i = 0; i < K.members.size(); ++i) {
            if (i) out << " ";
            out << K.members[i];
        }
        out << "}";
        P.labels.push_back(out.str());
    }
    P.leq.assign(m, std::vector<bool>(m, false));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) P.leq[a][b] = mid[b].contains(mid[a]);
    return P;
}

} // namespace eqp

#endif
