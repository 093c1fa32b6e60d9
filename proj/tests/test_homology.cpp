#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "eqp/homology.hpp"
#include "eqp/partition.hpp"

using namespace eqp;

TEST_CASE("smith normal form basics") {
    SECTION("coprime diagonal collapses to 1 | product") {
        IntegerMatrix M(2, 2);
        M.set(0, 0, 2);
        M.set(1, 1, 3);
        auto d = smith_normal_form(M);
        REQUIRE(d.size() == 2);
        CHECK(d[0] == 1);
        CHECK(d[1] == 6);
    }
    SECTION("zero matrix has no factors") {
        IntegerMatrix M(3, 4);
        CHECK(smith_normal_form(M).empty());
    }
    SECTION("divisibility chain") {
        IntegerMatrix M(3, 3);
        M.set(0, 0, 4);
        M.set(1, 1, 6);
        M.set(2, 2, 10);
        auto d = smith_normal_form(M);
        REQUIRE(d.size() == 3);
        for (size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] % d[i] == 0);
        Int prod = 1;
        for (const Int& x : d) prod *= x;
        CHECK(prod == 240);   // |det| preserved
    }
    SECTION("transforms are unimodular and diagonalize") {
        IntegerMatrix M(3, 4);
        std::mt19937_64 rng(7);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c) M.set(r, c, static_cast<int>(rng() % 9) - 4);
        SnfTransforms T = smith_normal_form_with_transforms(M);
        // U*M*V must be diagonal with the invariant factors
        std::vector<std::vector<Int>> dense(3, std::vector<Int>(4, 0));
        for (const auto& [rc, v] : M.entries) dense[rc.first][rc.second] = v;
        std::vector<std::vector<Int>> um(3, std::vector<Int>(4, 0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 3; ++k) um[i][j] += T.U[i][k] * dense[k][j];
        std::vector<std::vector<Int>> umv(3, std::vector<Int>(4, 0));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) umv[i][j] += um[i][k] * T.V[k][j];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 4; ++j) {
                if (i == j && i < static_cast<int>(T.factors.size()))
                    CHECK(abs(umv[i][j]) == T.factors[i]);
                else
                    CHECK(umv[i][j] == 0);
            }
        // sparse and dense routes agree
        CHECK(T.factors == smith_normal_form(M));
    }
    SECTION("sparse and dense reductions agree on random matrices") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 40; ++trial) {
            int rows = 1 + static_cast<int>(rng() % 7);
            int cols = 1 + static_cast<int>(rng() % 7);
            int spread = 1 + static_cast<int>(rng() % 12);
            IntegerMatrix M(rows, cols);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c)
                    if (rng() % 3) M.set(r, c, static_cast<int>(rng() % (2 * spread + 1)) - spread);
            auto sparse = smith_normal_form(M);
            auto dense = smith_normal_form_with_transforms(M).factors;
            INFO("trial " << trial << ", " << rows << "x" << cols);
            CHECK(sparse == dense);
            for (size_t i = 0; i + 1 < sparse.size(); ++i)
                CHECK(sparse[i + 1] % sparse[i] == 0);
        }
    }
    SECTION("invariant under row and column permutation") {
        std::mt19937_64 rng(11);
        IntegerMatrix M(4, 5);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 5; ++c)
                if (rng() % 2) M.set(r, c, static_cast<int>(rng() % 7) - 3);
        auto base = smith_normal_form(M);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<int> rp(4), cp(5);
            std::iota(rp.begin(), rp.end(), 0);
            std::iota(cp.begin(), cp.end(), 0);
            std::shuffle(rp.begin(), rp.end(), rng);
            std::shuffle(cp.begin(), cp.end(), rng);
            IntegerMatrix P(4, 5);
            for (const auto& [rc, v] : M.entries) P.set(rp[rc.first], cp[rc.second], v);
            CHECK(smith_normal_form(P) == base);
        }
    }
}

namespace {

SimplicialComplex triangle_boundary() {
    return complex_from_maximal(3, {{0, 1}, {1, 2}, {0, 2}});
}

} // namespace

TEST_CASE("reduced homology of standard complexes") {
    SECTION("circle") {
        SimplicialComplex K = triangle_boundary();
        IntegerMatrix d1 = boundary_matrix(K, 1);
        CHECK(snf_rank(d1) == 2);
        HomologyResult H = reduced_homology(K);
        CHECK(H.betti_at(0) == 0);
        CHECK(H.betti_at(1) == 1);
        CHECK(H.torsion_free());
    }
    SECTION("filled triangle is acyclic") {
        SimplicialComplex K = complex_from_maximal(3, {{0, 1, 2}});
        CHECK(reduced_homology(K).trivial());
    }
    SECTION("two points") {
        SimplicialComplex K = complex_from_maximal(2, {{0}, {1}});
        HomologyResult H = reduced_homology(K);
        CHECK(H.betti_at(0) == 1);
    }
    SECTION("empty complex") {
        SimplicialComplex K;
        HomologyResult H = reduced_homology(K);
        CHECK(H.betti_at(-1) == 1);
        CHECK(euler_poincare_consistent(K, H));
    }
    SECTION("boundaries compose to zero and Euler agrees") {
        GSet A = trivial_gset(make_group("", 0), 5);
        SimplicialComplex K = order_complex(build_partition_poset(A).poset);
        CHECK(boundary_squares_to_zero(K));
        HomologyResult H = reduced_homology(K);
        CHECK(euler_poincare_consistent(K, H));
        CHECK(H.betti_at(2) == 24);
        CHECK(H.torsion_free());
        for (int d : {-1, 0, 1}) CHECK(H.betti_at(d) == 0);
    }
}

TEST_CASE("order complex matches the nerve chain counts") {
    GSet A = trivial_gset(make_group("", 0), 4);
    PartitionPoset P = build_partition_poset(A);
    SimplicialComplex K = order_complex(P.poset);
    CHECK(K.face_count(0) == 13);
    CHECK(K.face_count(1) == 18);
    CHECK(K.dim() == 1);
    HomologyResult H = reduced_homology(K);
    CHECK(H.betti_at(1) == 6);
}

TEST_CASE("induced actions on homology") {
    SECTION("identity acts as the identity matrix") {
        SimplicialComplex K = triangle_boundary();
        HomologyBasis B = homology_basis(K, 1);
        RationalMatrix M = induced_homology_action(K, Perm::identity(3), 1, B);
        REQUIRE(M.size() == 1);
        CHECK(M[0][0] == 1);
        CHECK(matrix_trace(M) == Rational(reduced_homology(K).betti_at(1)));
    }
    SECTION("the antipodal swap on two points negates the reduced class") {
        SimplicialComplex K = complex_from_maximal(2, {{0}, {1}});
        RationalMatrix M = induced_homology_action(K, Perm({1, 0}), 0);
        REQUIRE(M.size() == 1);
        CHECK(matrix_trace(M) == Rational(-1));
    }
    SECTION("permutation character of the 3-point partition complex") {
        auto S3 = make_group("(1 2);(1 2 3)");
        GSet A = coset_gset(S3, trivial_subgroup(*S3));
        // natural action of S3 on 3 points
        GSet N;
        N.group = S3;
        N.size = 3;
        for (int g = 0; g < S3->order(); ++g) N.action.push_back(S3->elements[g]);
        PartitionPoset P = build_partition_poset(N);
        SimplicialComplex K = order_complex(P.poset);
        std::vector<Perm> vertex_action;
        for (int g = 0; g < S3->order(); ++g) {
            std::vector<int> im(P.poset.size());
            for (int i = 0; i < P.poset.size(); ++i) im[i] = P.poset.action[g][i];
            vertex_action.emplace_back(std::move(im));
        }
        CharacterVector chi = character(K, vertex_action, S3, 0);
        REQUIRE(chi.constant_on_classes());
        // classes ordered e, transpositions, 3-cycles
        auto values = chi.class_values();
        REQUIRE(values.size() == 3);
        CHECK(values[0] == 2);
        CHECK(values[1] == 0);
        CHECK(values[2] == -1);
        // trace formula agrees (homology concentrated in degree 0)
        HomologyResult H = reduced_homology(K);
        CharacterVector chi2 = character_via_trace_formula(K, vertex_action, S3, 0, H);
        CHECK(chi2.values == chi.values);
    }
    SECTION("functoriality on sampled pairs") {
        auto S3 = make_group("(1 2);(1 2 3)");
        GSet N;
        N.group = S3;
        N.size = 3;
        for (int g = 0; g < S3->order(); ++g) N.action.push_back(S3->elements[g]);
        PartitionPoset P = build_partition_poset(N);
        SimplicialComplex K = order_complex(P.poset);
        auto act_perm = [&](int g) {
            std::vector<int> im(P.poset.size());
            for (int i = 0; i < P.poset.size(); ++i) im[i] = P.poset.action[g][i];
            return Perm(im);
        };
        HomologyBasis B = homology_basis(K, 0);
        for (int g = 0; g < S3->order(); ++g)
            for (int h = 0; h < S3->order(); ++h) {
                RationalMatrix Mg = induced_homology_action(K, act_perm(g), 0, B);
                RationalMatrix Mh = induced_homology_action(K, act_perm(h), 0, B);
                RationalMatrix Mgh = induced_homology_action(K, act_perm(S3->mul[g][h]), 0, B);
                RationalMatrix prod = rational_zeros(static_cast<int>(Mg.size()),
                                                     static_cast<int>(Mg.size()));
                for (size_t i = 0; i < Mg.size(); ++i)
                    for (size_t j = 0; j < Mg.size(); ++j)
                        for (size_t k = 0; k < Mg.size(); ++k) prod[i][j] += Mg[i][k] * Mh[k][j];
                CHECK(prod == Mgh);
            }
    }
    SECTION("character values are equal at g and its inverse") {
        auto S3 = make_group("(1 2);(1 2 3)");
        GSet N;
        N.group = S3;
        N.size = 3;
        for (int g = 0; g < S3->order(); ++g) N.action.push_back(S3->elements[g]);
        PartitionPoset P = build_partition_poset(N);
        SimplicialComplex K = order_complex(P.poset);
        std::vector<Perm> vertex_action;
        for (int g = 0; g < S3->order(); ++g) {
            std::vector<int> im(P.poset.size());
            for (int i = 0; i < P.poset.size(); ++i) im[i] = P.poset.action[g][i];
            vertex_action.emplace_back(std::move(im));
        }
        CharacterVector chi = character(K, vertex_action, S3, 0);
        for (int g = 0; g < S3->order(); ++g) CHECK(chi.values[g] == chi.values[S3->inv[g]]);
    }
}

TEST_CASE("rational elimination utilities") {
    RationalMatrix A = rational_zeros(3, 3);
    A[0] = {Rational(1), Rational(2), Rational(3)};
    A[1] = {Rational(2), Rational(4), Rational(6)};
    A[2] = {Rational(0), Rational(1), Rational(1)};
    CHECK(rational_rank(A) == 2);
    auto kernel = rational_kernel(A);
    REQUIRE(kernel.size() == 1);
    for (int r = 0; r < 3; ++r) {
        Rational dot(0);
        for (int c = 0; c < 3; ++c) dot += A[r][c] * kernel[0][c];
        CHECK(dot == 0);
    }
    auto x = rational_solve(A, {Rational(6), Rational(12), Rational(2)});
    REQUIRE(x.has_value());
    for (int r = 0; r < 3; ++r) {
        Rational dot(0);
        for (int c = 0; c < 3; ++c) dot += A[r][c] * (*x)[c];
        CHECK(dot == Rational(r == 2 ? 2 : 6 * (r + 1)));
    }
    CHECK_FALSE(rational_solve(A, {Rational(1), Rational(0), Rational(0)}).has_value());

    // the mod-p rank certificate agrees with the integral rank
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        IntegerMatrix M(4, 6);
        std::vector<std::vector<std::int64_t>> dense(4, std::vector<std::int64_t>(6, 0));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 6; ++c) {
                int v = static_cast<int>(rng() % 5) - 2;
                M.set(r, c, v);
                dense[r][c] = v;
            }
        CHECK(mod_p_rank(dense, 1'000'003) == snf_rank(M));
    }
}

TEST_CASE("flat text export lists exactly the maximal faces") {
    SimplicialComplex K = complex_from_maximal(4, {{0, 1, 2}, {2, 3}});
    std::ostringstream out;
    export_maximal_faces(K, out);
    CHECK(out.str() == "2 3\n0 1 2\n");
}
