#include <catch2/catch_amalgamated.hpp>

#include "eqp/group.hpp"
#include "eqp/homology.hpp"
#include "eqp/poset.hpp"
#include "oracles.hpp"

using namespace eqp;

TEST_CASE("generate_group closes small generator sets") {
    Group c2 = parse_group("(1 2)");
    CHECK(c2.order() == 2);
    Group c4 = parse_group("(1 2 3 4)");
    CHECK(c4.order() == 4);

    Group s3 = parse_group("(1 2);(1 2 3)");
    REQUIRE(s3.order() == 6);
    // independent route: the full symmetric group by direct enumeration
    std::set<std::vector<int>> expected;
    for (const Perm& p : oracles::symmetric_group_perms(3)) expected.insert(p.images());
    std::set<std::vector<int>> got;
    for (const Perm& p : s3.elements) got.insert(p.images());
    CHECK(got == expected);

    CHECK(s3.id_index == 0);
    CHECK(s3.elements[0].is_identity());
    CHECK_THROWS_AS(generate_group({parse_cycles("(1 2)", 2), parse_cycles("(1 2 3)", 3)}, 3),
                    std::invalid_argument);
}

TEST_CASE("element ordering is deterministic") {
    Group a = parse_group("(1 2);(1 2 3)");
    Group b = parse_group("(1 2 3);(1 2)");   // same generators, different order
    REQUIRE(a.order() == b.order());
    for (int i = 0; i < a.order(); ++i) CHECK(a.elements[i] == b.elements[i]);
}

TEST_CASE("multiplication table and inverses") {
    Group s3 = parse_group("(1 2);(1 2 3)");
    for (int x = 0; x < s3.order(); ++x) {
        CHECK(s3.mul[0][x] == x);
        CHECK(s3.mul[x][s3.inv[x]] == 0);
        for (int y = 0; y < s3.order(); ++y)
            CHECK(compose(s3.elements[x], s3.elements[y]) == s3.elements[s3.mul[x][y]]);
    }
}

TEST_CASE("all_subgroups finds every subgroup exactly once") {
    Group s3 = parse_group("(1 2);(1 2 3)");
    auto subs = all_subgroups(s3);
    CHECK(static_cast<int>(subs.size()) == oracles::exhaustive_subgroup_count(s3));
    CHECK(subs.size() == 6);
    // orders: 1, 2, 2, 2, 3, 6
    std::vector<int> orders;
    for (const auto& H : subs) orders.push_back(H.order());
    CHECK(orders == std::vector<int>{1, 2, 2, 2, 3, 6});

    Group c4 = parse_group("(1 2 3 4)");
    auto c4subs = all_subgroups(c4);
    CHECK(static_cast<int>(c4subs.size()) == oracles::exhaustive_subgroup_count(c4));
    CHECK(c4subs.size() == 3);

    Group e = trivial_group(1);
    CHECK(all_subgroups(e).size() == 1);

    // Lagrange, validity, closure under conjugation
    for (const auto& H : subs) {
        CHECK(is_subgroup(s3, H));
        CHECK(s3.order() % H.order() == 0);
        for (int g = 0; g < s3.order(); ++g) {
            Subgroup K = conjugate_subgroup(s3, H, g);
            bool found = false;
            for (const auto& L : subs)
                if (L.members == K.members) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("all_subgroups respects the order guard") {
    Group s4 = parse_group("(1 2);(1 2 3 4)");
    CHECK_THROWS_AS(all_subgroups(s4, 8), std::runtime_error);
}

TEST_CASE("normalizers and Weyl groups") {
    Group s3 = parse_group("(1 2);(1 2 3)");
    SECTION("Weyl group of the trivial subgroup is the whole group") {
        Group w = weyl_group(s3, trivial_subgroup(s3));
        CHECK(w.order() == s3.order());
    }
    SECTION("W_{C4}(C2) has order 2") {
        Group c4 = parse_group("(1 2 3 4)");
        Subgroup c2 = subgroup_closure(c4, {c4.index_of(parse_cycles("(1 3)(2 4)", 4))});
        REQUIRE(c2.order() == 2);
        Subgroup n = normalizer(c4, c2);
        CHECK(n.order() == 4);
        CHECK(weyl_group(c4, c2).order() == 2);
    }
    SECTION("W of a point stabilizer in S3 is trivial") {
        Subgroup h = subgroup_closure(s3, {s3.index_of(parse_cycles("(1 2)", 3))});
        // exhaustive scan oracle
        int n_count = 0;
        for (int g = 0; g < s3.order(); ++g)
            if (conjugate_subgroup(s3, h, g).members == h.members) ++n_count;
        Subgroup n = normalizer(s3, h);
        CHECK(n.order() == n_count);
        CHECK(weyl_group(s3, h).order() == 1);
        CHECK(n.contains(h));
    }
    SECTION("Weyl group order equals normalizer index over the subgroup") {
        for (const auto& H : all_subgroups(s3)) {
            Subgroup n = normalizer(s3, H);
            CHECK(weyl_group(s3, H).order() * H.order() == n.order());
        }
    }
}

TEST_CASE("solvability, normality, conjugacy") {
    Group s3 = parse_group("(1 2);(1 2 3)");
    CHECK(is_solvable(s3));
    Group c4 = parse_group("(1 2 3 4)");
    CHECK(is_solvable(c4));

    Subgroup a = subgroup_closure(s3, {s3.index_of(parse_cycles("(1 2)", 3))});
    Subgroup b = subgroup_closure(s3, {s3.index_of(parse_cycles("(2 3)", 3))});
    CHECK(are_conjugate(s3, a, b));
    CHECK_FALSE(is_normal(a, s3));
    Subgroup a3 = subgroup_closure(s3, {s3.index_of(parse_cycles("(1 2 3)", 3))});
    CHECK(is_normal(a3, s3));
    CHECK(is_subconjugate(s3, a, s3.order() == 6 ? full_subgroup(s3) : a));
    CHECK_FALSE(is_subconjugate(s3, a3, a));
}

TEST_CASE("intermediate subgroup posets") {
    Group s3 = parse_group("(1 2);(1 2 3)");
    ActedPoset p = between_subgroup_poset(s3, trivial_subgroup(s3));
    REQUIRE(p.size() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(p.less(i, j) == false);   // four incomparable subgroups

    Group c4 = parse_group("(1 2 3 4)");
    CHECK(between_subgroup_poset(c4, trivial_subgroup(c4)).size() == 1);
    Group c2 = parse_group("(1 2)");
    CHECK(between_subgroup_poset(c2, trivial_subgroup(c2)).size() == 0);
}

TEST_CASE("cycle parsing round-trips") {
    Perm p = parse_cycles("(1 2 3)(4 5)", 6);
    CHECK(cycle_string(p) == "(1 2 3)(4 5)");
    CHECK(p.parity() == -1);
    CHECK(parse_cycles("()", 3).is_identity());
    CHECK(parse_cycles("", 3).is_identity());
    CHECK_THROWS_AS(parse_cycles("(1 7)", 4), std::invalid_argument);
    CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)", 4), std::invalid_argument);
}

// Hidden: takes about two minutes, dominated by subgroup enumeration.
// Run explicitly with:  test_groups "[.slow]"
TEST_CASE("the subgroup lattice of PSL(2,7) is a wedge of 48+48 spheres", "[.slow]") {
    Group g = parse_group("(1 2 3 4 5 6 7);(1 8)(2 7)(3 4)(5 6)");
    REQUIRE(g.order() == 168);
    ActedPoset S = between_subgroup_poset(g, trivial_subgroup(g));
    CHECK(S.size() == 177);
    eqp::HomologyResult H = eqp::reduced_homology(eqp::order_complex(S));
    CHECK(H.betti_at(1) == 48);
    CHECK(H.betti_at(2) == 48);
    CHECK(H.torsion_free());
}
