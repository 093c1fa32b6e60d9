#ifndef EQP_QUILLEN_HPP
#define EQP_QUILLEN_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqp/homology.hpp"
#include "eqp/poset.hpp"

namespace eqp {

/// A map between acted posets on object indices.  The source poset's stored
/// order is always read as the arrow direction; the target category may run
/// with or against its stored order, which shows up here as the map being
/// monotone or antitone.
struct PosetMap {
    const ActedPoset* src = nullptr;
    const ActedPoset* dst = nullptr;
    std::vector<int> object_map;

    enum class Variance { Monotone, Antitone };

    Variance variance() const {
        bool mono = true, anti = true;
        for (int a = 0; a < src->size(); ++a)
            for (int b = 0; b < src->size(); ++b) {
                if (!src->less(a, b)) continue;
                if (!dst->leq[object_map[a]][object_map[b]]) mono = false;
                if (!dst->leq[object_map[b]][object_map[a]]) anti = false;
            }
        if (mono) return Variance::Monotone;
        if (anti) return Variance::Antitone;
        throw std::invalid_argument("PosetMap: map is neither monotone nor antitone");
    }

    bool is_equivariant() const {
        if (!src->group && !dst->group) return true;
        if (!src->group || !dst->group) return false;
        if (src->group->elements != dst->group->elements) return false;
        for (int g = 0; g < src->group->order(); ++g)
            for (int i = 0; i < src->size(); ++i)
                if (dst->action[g][object_map[i]] != object_map[src->action[g][i]]) return false;
        return true;
    }
};

/// How a fiber over a target object is cut out of the source.
enum class FiberSide {
    MapLeqTarget,   // { c : F(c) <= d }
    MapGeqTarget,   // { c : F(c) >= d }
};

inline std::vector<int> fiber_objects(const PosetMap& F, int d, FiberSide side) {
    std::vector<int> out;
    for (int c = 0; c < F.src->size(); ++c) {
        bool in = (side == FiberSide::MapLeqTarget) ? F.dst->leq[F.object_map[c]][d]
                                                    : F.dst->leq[d][F.object_map[c]];
        if (in) out.push_back(c);
    }
    return out;
}

/// Which way the target category's arrows run relative to its stored order.
/// Partition-style posets read arrows along the stored order; tree posets
/// store a tree above its contractions while the arrows point toward the
/// contractions.
enum class TargetArrows {
    AlongStoredOrder,      // arrow x -> y iff x <= y
    OppositeStoredOrder,   // arrow x -> y iff y <= x
};

/// The category of source objects under a target object d, as a poset with
/// the action of the stabilizer of d.
inline ActedPoset undercategory(const PosetMap& F, int d, TargetArrows arrows) {
    FiberSide side = (arrows == TargetArrows::OppositeStoredOrder) ? FiberSide::MapLeqTarget
                                                                   : FiberSide::MapGeqTarget;
    std::vector<int> objs = fiber_objects(F, d, side);
    if (!F.dst->group) return induced_subposet(*F.src, objs);
    return induced_subposet_with_action(*F.src, objs, F.dst->object_stabilizer(d));
}

/// The category of source objects over a target object d.
inline ActedPoset overcategory(const PosetMap& F, int d, TargetArrows arrows) {
    FiberSide side = (arrows == TargetArrows::OppositeStoredOrder) ? FiberSide::MapGeqTarget
                                                                   : FiberSide::MapLeqTarget;
    std::vector<int> objs = fiber_objects(F, d, side);
    if (!F.dst->group) return induced_subposet(*F.src, objs);
    return induced_subposet_with_action(*F.src, objs, F.dst->object_stabilizer(d));
}

/// Contractibility verdict for one (target orbit, subgroup) fiber.
struct FiberCheck {
    std::string target;
    std::string subgroup;         // sorted member indices of H
    int fiber_size = 0;
    bool has_cone = false;
    std::string cone_label;
    bool acyclic = false;         // reduced integral homology vanishes
    bool connected = false;
    bool pass = false;
};

struct QuillenReport {
    bool pass = true;
    std::string convention;
    std::vector<FiberCheck> fibers;
    int orbits_scanned = 0;
    bool equivariance_ok = true;   // sampled fiber-translation check
};

namespace detail {

inline std::string subgroup_label(const Subgroup& H) {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < H.members.size(); ++i) {
        if (i) out << " ";
        out << H.members[i];
    }
    out << "}";
    return out.str();
}

/// Scan all fibers of F: one representative per target orbit, all subgroups
/// of the representative's stabilizer.  Each H-fixed fiber must carry a cone
/// point or have vanishing reduced integral homology.
inline QuillenReport check_fibers(const PosetMap& F, FiberSide side,
                                  const std::string& convention) {
    if (!F.is_equivariant()) throw std::invalid_argument("check_fibers: map not equivariant");
    QuillenReport rep;
    rep.convention = convention;
    const ActedPoset& dst = *F.dst;

    std::vector<Subgroup> subgroups;
    if (dst.group) subgroups = all_subgroups(*dst.group);

    std::vector<bool> seen(dst.size(), false);
    for (int d = 0; d < dst.size(); ++d) {
        if (seen[d]) continue;
        for (int g = 0; g < dst.group_order(); ++g) seen[dst.act(g, d)] = true;
        ++rep.orbits_scanned;

        std::vector<int> fiber = fiber_objects(F, d, side);
        std::vector<Subgroup> relevant;
        if (dst.group) {
            Subgroup stab = dst.object_stabilizer(d);
            for (const Subgroup& H : subgroups)
                if (stab.contains(H)) relevant.push_back(H);
        } else {
            relevant.push_back(Subgroup{nullptr, {0}});
        }

        for (const Subgroup& H : relevant) {
            std::vector<int> fixed;
            for (int c : fiber) {
                bool ok = true;
                if (dst.group)
                    for (int h : H.members)
                        if (F.src->action[h][c] != c) { ok = false; break; }
                if (ok) fixed.push_back(c);
            }
            ActedPoset sub = induced_subposet(*F.src, fixed);
            FiberCheck fc;
            fc.target = dst.labels[d];
            fc.subgroup = dst.group ? subgroup_label(H) : "{0}";
            fc.fiber_size = sub.size();
            auto cone = has_cone_point(sub);
            if (cone) {
                fc.has_cone = true;
                fc.cone_label = sub.labels[*cone];
                fc.pass = true;
                fc.acyclic = true;
                fc.connected = true;
            } else {
                HomologyResult H0 = reduced_homology(order_complex(sub));
                fc.acyclic = H0.trivial();
                fc.connected = sub.size() > 0 && H0.betti_at(0) == 0;
                fc.pass = fc.acyclic && sub.size() > 0;
            }
            if (!fc.pass) rep.pass = false;
            rep.fibers.push_back(std::move(fc));
        }
    }

    // Sample the fiber-translation property: g carries the fiber over d to
    // the fiber over g.d.
    if (dst.group) {
        for (int d = 0; d < std::min(dst.size(), 4); ++d)
            for (int g = 0; g < std::min(dst.group_order(), 4); ++g) {
                std::vector<int> f1 = fiber_objects(F, d, side);
                for (int& c : f1) c = F.src->action[g][c];
                std::sort(f1.begin(), f1.end());
                std::vector<int> f2 = fiber_objects(F, dst.action[g][d], side);
                if (f1 != f2) rep.equivariance_ok = false;
            }
        if (!rep.equivariance_ok) rep.pass = false;
    }
    return rep;
}

} // namespace detail

/// Fibers for homotopy finality: the undercategory of each target object d,
/// the source objects c with an arrow d -> F(c).
inline QuillenReport check_G_finality(const PosetMap& F, TargetArrows arrows) {
    F.variance();   // validates that the map respects the orders at all
    if (arrows == TargetArrows::OppositeStoredOrder)
        return detail::check_fibers(
            F, FiberSide::MapLeqTarget,
            "undercategory d|F = { c : F(c) <= d } (target arrows opposite stored order)");
    return detail::check_fibers(
        F, FiberSide::MapGeqTarget,
        "undercategory d|F = { c : F(c) >= d } (target arrows along stored order)");
}

/// Fibers for homotopy initiality: the overcategory of each target object d,
/// the source objects c with an arrow F(c) -> d.
inline QuillenReport check_G_initiality(const PosetMap& F, TargetArrows arrows) {
    F.variance();
    if (arrows == TargetArrows::OppositeStoredOrder)
        return detail::check_fibers(
            F, FiberSide::MapGeqTarget,
            "overcategory F|d = { c : F(c) >= d } (target arrows opposite stored order)");
    return detail::check_fibers(
        F, FiberSide::MapLeqTarget,
        "overcategory F|d = { c : F(c) <= d } (target arrows along stored order)");
}

/// The simplicial chain map induced by a poset map on order complexes in
/// degree d: image of each chain, squashed to zero when degenerate, with the
/// reordering sign.
inline RationalMatrix induced_chain_map(const SimplicialComplex& Ksrc,
                                        const SimplicialComplex& Kdst,
                                        const std::vector<int>& vertex_map, int d) {
    const long long ns = Ksrc.face_count(d);
    const long long nt = Kdst.face_count(d);
    RationalMatrix M = rational_zeros(static_cast<int>(nt), static_cast<int>(ns));
    for (long long j = 0; j < ns; ++j) {
        const auto& f = Ksrc.faces[d][j];
        std::vector<int> img;
        img.reserve(f.size());
        for (int v : f) img.push_back(vertex_map[v]);
        int sign = 1;
        for (size_t a = 0; a < img.size(); ++a)
            for (size_t b = a + 1; b < img.size(); ++b) {
                if (img[a] > img[b]) sign = -sign;
            }
        std::vector<int> sorted = img;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        int idx = Kdst.face_index(d, sorted);
        if (idx < 0) throw std::logic_error("induced_chain_map: image is not a simplex");
        M[idx][static_cast<int>(j)] = Rational(sign);
    }
    return M;
}

struct RealizationCheck {
    std::string subgroup;
    std::vector<long long> betti_src;
    std::vector<long long> betti_dst;
    bool betti_equal = false;
    std::vector<int> iso_degrees;   // degrees where the induced map has full rank
    bool induced_iso = false;
    bool pass = false;
};

struct RealizationReport {
    bool pass = true;
    std::vector<RealizationCheck> checks;
};

/// Betti agreement plus induced-map rank check on all H-fixed posets, for
/// every subgroup H of the acting group.
inline RealizationReport check_realization_equivalence(const PosetMap& F,
                                                       long long chain_guard = 5'000'000) {
    if (!F.is_equivariant())
        throw std::invalid_argument("check_realization_equivalence: map not equivariant");
    RealizationReport rep;
    std::vector<Subgroup> subgroups;
    if (F.src->group)
        subgroups = all_subgroups(*F.src->group);
    else
        subgroups.push_back(Subgroup{nullptr, {0}});

    for (const Subgroup& H : subgroups) {
        RealizationCheck rc;
        rc.subgroup = F.src->group ? detail::subgroup_label(H) : "{0}";

        std::vector<int> src_objs, dst_objs;
        std::vector<int> src_pos(F.src->size(), -1), dst_pos(F.dst->size(), -1);
        for (int i = 0; i < F.src->size(); ++i) {
            bool fixed = true;
            if (F.src->group)
                for (int h : H.members)
                    if (F.src->action[h][i] != i) { fixed = false; break; }
            if (fixed) {
                src_pos[i] = static_cast<int>(src_objs.size());
                src_objs.push_back(i);
            }
        }
        for (int i = 0; i < F.dst->size(); ++i) {
            bool fixed = true;
            if (F.dst->group)
                for (int h : H.members)
                    if (F.dst->action[h][i] != i) { fixed = false; break; }
            if (fixed) {
                dst_pos[i] = static_cast<int>(dst_objs.size());
                dst_objs.push_back(i);
            }
        }
        ActedPoset srcH = induced_subposet(*F.src, src_objs);
        ActedPoset dstH = induced_subposet(*F.dst, dst_objs);
        std::vector<int> mapH(srcH.size());
        for (size_t i = 0; i < src_objs.size(); ++i) {
            int t = dst_pos[F.object_map[src_objs[i]]];
            if (t < 0) throw std::logic_error("fixed objects must map to fixed objects");
            mapH[i] = t;
        }

        SimplicialComplex Ks = order_complex(srcH, chain_guard);
        SimplicialComplex Kd = order_complex(dstH, chain_guard);
        HomologyResult Hs = reduced_homology(Ks);
        HomologyResult Hd = reduced_homology(Kd);
        int top = std::max(Ks.dim(), Kd.dim());
        rc.betti_src = Hs.betti_vector(top);
        rc.betti_dst = Hd.betti_vector(top);
        rc.betti_equal = rc.betti_src == rc.betti_dst;

        rc.induced_iso = true;
        for (int d = 0; d <= top; ++d) {
            long long b = Hs.betti_at(d);
            if (b != Hd.betti_at(d)) {
                rc.induced_iso = false;
                continue;
            }
            if (b == 0) continue;
            if (d > Ks.dim() || d > Kd.dim()) {
                rc.induced_iso = false;
                continue;
            }
            RationalMatrix M = induced_chain_map(Ks, Kd, mapH, d);
            HomologyBasis Bs = homology_basis(Ks, d);
            HomologyBasis Bd = homology_basis(Kd, d);
            // coordinates of the images of source cycles in the target
            // homology basis
            const int nb = static_cast<int>(Bd.boundary_basis.size());
            const int h = static_cast<int>(Bd.cycle_reps.size());
            RationalMatrix A = rational_zeros(static_cast<int>(Kd.face_count(d)), nb + h);
            for (int j = 0; j < nb; ++j)
                for (int r = 0; r < static_cast<int>(Kd.face_count(d)); ++r)
                    A[r][j] = Bd.boundary_basis[j][r];
            for (int j = 0; j < h; ++j)
                for (int r = 0; r < static_cast<int>(Kd.face_count(d)); ++r)
                    A[r][nb + j] = Bd.cycle_reps[j][r];
            RationalMatrix images =
                rational_zeros(static_cast<int>(Kd.face_count(d)),
                               static_cast<int>(Bs.cycle_reps.size()));
            for (size_t i = 0; i < Bs.cycle_reps.size(); ++i)
                for (int c = 0; c < static_cast<int>(Ks.face_count(d)); ++c) {
                    const Rational& v = Bs.cycle_reps[i][c];
                    if (v == 0) continue;
                    for (int r = 0; r < static_cast<int>(Kd.face_count(d)); ++r)
                        if (M[r][c] != 0) images[r][i] += M[r][c] * v;
                }
            RationalMatrix x = detail::rational_solve_many(A, images);
            RationalMatrix induced = rational_zeros(h, static_cast<int>(Bs.cycle_reps.size()));
            for (int r = 0; r < h; ++r)
                for (size_t c = 0; c < Bs.cycle_reps.size(); ++c) induced[r][c] = x[nb + r][c];
            if (rational_rank(induced) == b)
                rc.iso_degrees.push_back(d);
            else
                rc.induced_iso = false;
        }
        rc.pass = rc.betti_equal && rc.induced_iso;
        if (!rc.pass) rep.pass = false;
        rep.checks.push_back(std::move(rc));
    }
    return rep;
}

} // namespace eqp

#endif
