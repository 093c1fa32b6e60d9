#include <catch2/catch_amalgamated.hpp>

#include "eqp/checks.hpp"
#include "eqp/quillen.hpp"

using namespace eqp;

namespace {

Scenario natural_scenario(const char* group_spec, int degree) {
    Scenario s;
    s.group = make_group(group_spec, degree);
    s.gset.group = s.group;
    s.gset.size = degree;
    for (int g = 0; g < s.group->order(); ++g) s.gset.action.push_back(s.group->elements[g]);
    return s;
}

} // namespace

TEST_CASE("identity map passes every fiber with a cone certificate") {
    GSet A = trivial_gset(make_group("", 0), 4);
    PartitionPoset P = build_partition_poset(A);
    std::vector<int> id(P.poset.size());
    std::iota(id.begin(), id.end(), 0);
    PosetMap F{&P.poset, &P.poset, id};
    QuillenReport rep = check_G_finality(F, TargetArrows::AlongStoredOrder);
    CHECK(rep.pass);
    for (const FiberCheck& f : rep.fibers) CHECK(f.has_cone);
    QuillenReport rep2 = check_G_initiality(F, TargetArrows::AlongStoredOrder);
    CHECK(rep2.pass);
}

TEST_CASE("fibers of the layer-forgetting and last-vertex functors") {
    // last-vertex overcategory at a partition d: chains with last element
    // under d; layer-forgetting undercategory at a tree d: chains whose tree
    // is d or one of its faces
    Scenario s = natural_scenario("(1 2)(3 4)", 4);
    checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);

    PosetMap last{&M.chains.poset, &M.partitions.poset, M.last_vertex};
    for (int d = 0; d < M.partitions.poset.size(); ++d) {
        std::vector<int> fiber = fiber_objects(last, d, FiberSide::MapLeqTarget);
        for (int c : fiber)
            CHECK(M.partitions.poset.leq[M.chains.chains[c].back()][d]);
    }

    PosetMap phi{&M.chains.poset, &M.trees.poset, M.phi};
    for (int d = 0; d < M.trees.poset.size(); ++d) {
        std::vector<int> fiber = fiber_objects(phi, d, FiberSide::MapLeqTarget);
        for (int c : fiber) {
            const ReducedTree& T = M.trees.objects[M.phi[c]];
            const ReducedTree& D = M.trees.objects[d];
            CHECK(std::includes(D.edges.begin(), D.edges.end(), T.edges.begin(),
                                T.edges.end()));
        }
    }
}

TEST_CASE("finality and initiality pass on small scenarios with group action") {
    for (const char* spec : {"(1 2)(3 4)", "(1 2 3 4)", "(1 2)"}) {
        Scenario s = natural_scenario(spec, 4);
        checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);
        PosetMap phi{&M.chains.poset, &M.trees.poset, M.phi};
        PosetMap last{&M.chains.poset, &M.partitions.poset, M.last_vertex};
        INFO(spec);
        QuillenReport rf = check_G_finality(phi, TargetArrows::OppositeStoredOrder);
        CHECK(rf.pass);
        CHECK(rf.equivariance_ok);
        QuillenReport ri = check_G_initiality(last, TargetArrows::AlongStoredOrder);
        CHECK(ri.pass);
        // every fiber is nonempty and connected
        for (const FiberCheck& f : rf.fibers) {
            CHECK(f.fiber_size > 0);
            CHECK(f.connected);
        }
    }
}

TEST_CASE("fiber monotonicity in the subgroup") {
    Scenario s = natural_scenario("(1 2 3 4)", 4);
    checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);
    PosetMap phi{&M.chains.poset, &M.trees.poset, M.phi};
    auto subs = all_subgroups(*s.group);
    for (int d = 0; d < M.trees.poset.size(); ++d) {
        Subgroup stab = M.trees.poset.object_stabilizer(d);
        std::vector<int> fiber = fiber_objects(phi, d, FiberSide::MapLeqTarget);
        for (const Subgroup& H : subs) {
            if (!stab.contains(H)) continue;
            for (const Subgroup& K : subs) {
                if (!H.contains(K)) continue;
                auto fixed_under = [&](const Subgroup& X) {
                    std::vector<int> out;
                    for (int c : fiber) {
                        bool ok = true;
                        for (int x : X.members)
                            if (M.chains.poset.action[x][c] != c) { ok = false; break; }
                        if (ok) out.push_back(c);
                    }
                    return out;
                };
                std::vector<int> fh = fixed_under(H);
                std::vector<int> fk = fixed_under(K);
                for (int c : fh)
                    CHECK(std::find(fk.begin(), fk.end(), c) != fk.end());
            }
        }
    }
}

TEST_CASE("induced chain maps commute with the boundary") {
    Scenario s = natural_scenario("(1 2)(3 4)", 4);
    checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);
    SimplicialComplex Ks = order_complex(M.chains.poset);
    SimplicialComplex Kd = order_complex(M.trees.poset);
    for (int d = 1; d <= std::min(Ks.dim(), Kd.dim()); ++d) {
        RationalMatrix f_d = induced_chain_map(Ks, Kd, M.phi, d);
        RationalMatrix f_dm1 = induced_chain_map(Ks, Kd, M.phi, d - 1);
        IntegerMatrix bs = boundary_matrix(Ks, d, false);
        IntegerMatrix bd = boundary_matrix(Kd, d, false);
        // compare f_{d-1} * boundary_src with boundary_dst * f_d entrywise
        const int rows = static_cast<int>(Kd.face_count(d - 1));
        const int cols = static_cast<int>(Ks.face_count(d));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                Rational lhs(0), rhs(0);
                for (int k = 0; k < static_cast<int>(Ks.face_count(d - 1)); ++k) {
                    Int v = bs.get(k, j);
                    if (v != 0 && f_dm1[i][k] != 0) lhs += f_dm1[i][k] * Rational(v);
                }
                for (int k = 0; k < static_cast<int>(Kd.face_count(d)); ++k) {
                    Int v = bd.get(i, k);
                    if (v != 0 && f_d[k][j] != 0) rhs += Rational(v) * f_d[k][j];
                }
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("realization equivalence on the zig-zag legs") {
    for (const char* spec : {"(1 2)(3 4)", "(1 2 3 4)"}) {
        Scenario s = natural_scenario(spec, 4);
        checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);
        PosetMap phi{&M.chains.poset, &M.trees.poset, M.phi};
        PosetMap last{&M.chains.poset, &M.partitions.poset, M.last_vertex};
        INFO(spec);
        RealizationReport rp = check_realization_equivalence(phi);
        CHECK(rp.pass);
        for (const RealizationCheck& c : rp.checks) {
            CHECK(c.betti_equal);
            CHECK(c.induced_iso);
        }
        CHECK(check_realization_equivalence(last).pass);
    }
}

TEST_CASE("under- and overcategories as acted posets") {
    SECTION("identity map: the undercategory of d is its principal up-set") {
        Scenario s = natural_scenario("(1 2)(3 4)", 4);
        PartitionPoset P = build_partition_poset(s.gset);
        std::vector<int> id(P.poset.size());
        std::iota(id.begin(), id.end(), 0);
        PosetMap F{&P.poset, &P.poset, id};
        for (int d = 0; d < P.poset.size(); ++d) {
            ActedPoset U = undercategory(F, d, TargetArrows::AlongStoredOrder);
            int expect = 0;
            for (int c = 0; c < P.poset.size(); ++c)
                if (P.poset.leq[d][c]) ++expect;
            CHECK(U.size() == expect);
            auto cone = has_cone_point(U);
            REQUIRE(cone.has_value());
            CHECK(U.labels[*cone] == P.poset.labels[d]);
            CHECK(U.is_valid_action());
        }
    }
    SECTION("last-vertex overcategories carry the stabilizer action") {
        Scenario s = natural_scenario("(1 2 3 4)", 4);
        checks::impl::ChainMaps M = checks::impl::build_chain_maps(s);
        PosetMap last{&M.chains.poset, &M.partitions.poset, M.last_vertex};
        for (int d = 0; d < M.partitions.poset.size(); ++d) {
            ActedPoset O = overcategory(last, d, TargetArrows::AlongStoredOrder);
            CHECK(O.is_partial_order());
            CHECK(O.is_valid_action());
            CHECK(O.group->order() ==
                  M.partitions.poset.object_stabilizer(d).order());
        }
    }
}

TEST_CASE("poset map validation") {
    GSet A = trivial_gset(make_group("", 0), 3);
    PartitionPoset P = build_partition_poset(A);
    ChainPoset C = chain_poset(P.poset);
    std::vector<int> bad(C.poset.size(), 0);
    PosetMap F{&C.poset, &P.poset, bad};
    // constant maps are monotone, so this validates
    CHECK(F.variance() == PosetMap::Variance::Monotone);
    CHECK(F.is_equivariant());   // trivial actions on both sides
}
