#include "oracles.hpp"

#include "shape/errors.hpp"
#include "shape/exactlat.hpp"

#include <doctest.h>

#include <random>

using namespace shape;

namespace {

GramMatrix a_n(std::size_t n) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return GramMatrix(g);
}

GramMatrix ell_i_minus_j(std::size_t n, long ell) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = (i == j) ? ell - 1 : -1;
    return GramMatrix(g);
}

bool is_hnf(const IntMatrix &h) {
    // lower echelon, positive pivots, entries left of a pivot in [0, pivot)
    std::size_t col = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = col + 1; j < h.cols(); ++j)
            if (h(i, j) != 0) return false;
        if (col < h.cols() && h(i, col) != 0) {
            if (h(i, col) < 0) return false;
            for (std::size_t j = 0; j < col; ++j)
                if (h(i, j) < 0 || h(i, j) >= h(i, col)) return false;
            ++col;
        }
    }
    return true;
}

} // namespace

TEST_CASE("hnf: identity and gcd row") {
    auto r = hnf(IntMatrix::identity(3));
    CHECK(r.h == IntMatrix::identity(3));
    CHECK(r.u == IntMatrix::identity(3));

    auto g = hnf(IntMatrix{{1, 1, 1}});
    CHECK(g.h == IntMatrix{{1, 0, 0}});
    CHECK(g.rank == 1);
}

TEST_CASE("hnf: [[2,4],[0,2]] matches brute force over small unimodular transforms") {
    const IntMatrix m{{2, 4}, {0, 2}};
    std::set<std::vector<long>> found;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b)
            for (long c = -3; c <= 3; ++c)
                for (long d = -3; d <= 3; ++d) {
                    if (std::abs(a * d - b * c) != 1) continue;
                    IntMatrix h = m * IntMatrix{{a, b}, {c, d}};
                    if (is_hnf(h)) found.insert({h(0, 0).get_si(), h(0, 1).get_si(), h(1, 0).get_si(), h(1, 1).get_si()});
                }
    REQUIRE(found.size() == 1);
    CHECK(*found.begin() == std::vector<long>{2, 0, 0, 2});
    auto r = hnf(m);
    CHECK(r.h == IntMatrix{{2, 0}, {0, 2}});
    CHECK(m * r.u == r.h);
}

TEST_CASE("hnf: property on random matrices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
    for (int t = 0; t < 200; ++t) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = val(rng);
        auto r = hnf(m);
        CHECK(m * r.u == r.h);
        CHECK(abs(det_exact(r.u)) == 1);
        CHECK(is_hnf(r.h));
    }
}

TEST_CASE("int_kernel") {
    SUBCASE("sum-zero sublattice") {
        IntMatrix k = int_kernel(IntMatrix{{1, 1, 1}});
        REQUIRE(k.cols() == 2);
        CHECK((IntMatrix{{1, 1, 1}} * k).is_zero());
        // same lattice as {(1,-1,0),(0,1,-1)}: equal HNFs
        IntMatrix ref{{1, 0}, {-1, 1}, {0, -1}};
        CHECK(hnf(k).h == hnf(ref).h);
    }
    SUBCASE("invertible matrix has trivial kernel") {
        CHECK(int_kernel(IntMatrix{{2, 1}, {1, 1}}).cols() == 0);
    }
    SUBCASE("[[2,2]] is generated by (1,-1), not (2,-2)") {
        IntMatrix k = int_kernel(IntMatrix{{2, 2}});
        REQUIRE(k.cols() == 1);
        // every small solution is an integer multiple of the basis vector
        for (long x = -6; x <= 6; ++x)
            for (long y = -6; y <= 6; ++y)
                if (2 * x + 2 * y == 0) CHECK(mpz_divisible_p(Int(x).get_mpz_t(), k(0, 0).get_mpz_t()));
        CHECK(abs(k(0, 0)) == 1);
        CHECK(k(1, 0) == -k(0, 0));
    }
    SUBCASE("saturation on random matrices") {
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<int> val(-6, 6);
        for (int t = 0; t < 100; ++t) {
            IntMatrix m(2, 5);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 5; ++j) m(i, j) = val(rng);
            IntMatrix k = int_kernel(m);
            CHECK((m * k).is_zero());
            for (const auto &d : smith_invariants(k)) CHECK(d == 1);
        }
    }
}

TEST_CASE("det_exact against cofactor expansion") {
    CHECK(det_exact(IntMatrix{{2, -1}, {-1, 2}}) == 3);
    CHECK(det_exact(IntMatrix::identity(6)) == 1);
    CHECK(det_exact(ell_i_minus_j(4, 5).matrix()) == 125);
    CHECK(oracle::cofactor_det(ell_i_minus_j(4, 5).matrix()) == 125);
    CHECK(det_exact(IntMatrix{{0, 1}, {1, 0}}) == -1);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> val(-20, 20);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 5;
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = val(rng);
        CHECK(det_exact(m) == oracle::cofactor_det(m));
    }
}

TEST_CASE("smith invariants") {
    CHECK(smith_invariants(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});
    CHECK(smith_invariants(IntMatrix{{2, 4}, {6, 8}}) == std::vector<Int>{2, 4});
    CHECK(smith_invariants(IntMatrix{{0, 0}, {0, 0}}).empty());
}

TEST_CASE("unimodular_inverse") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        IntMatrix u = oracle::random_unimodular(4, rng);
        CHECK(u * unimodular_inverse(u) == IntMatrix::identity(4));
    }
    CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), ShapeError);
}

TEST_CASE("lll_reduce") {
    SUBCASE("[[4,2],[2,2]]") {
        auto r = lll_reduce(GramMatrix{{4, 2}, {2, 2}});
        CHECK(r.gram == GramMatrix{{2, 0}, {0, 2}});
        CHECK(congruence(GramMatrix{{4, 2}, {2, 2}}, r.transform) == r.gram);
    }
    SUBCASE("reduced A2 stays put up to signs") {
        auto r = lll_reduce(a_n(2));
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) CHECK(abs(r.gram(i, j)) == abs(a_n(2)(i, j)));
    }
    SUBCASE("scaling commutes") {
        auto g = GramMatrix{{4, 2}, {2, 2}}.scaled_by(100);
        CHECK(lll_reduce(g).gram == GramMatrix{{200, 0}, {0, 200}});
        CHECK(lll_reduce(a_n(2).scaled_by(100)).gram == lll_reduce(a_n(2)).gram.scaled_by(100));
    }
    SUBCASE("random conjugates: determinant, witness, LLL conditions") {
        std::mt19937_64 rng(17);
        for (int t = 0; t < 60; ++t) {
            GramMatrix g = congruence(t % 2 ? a_n(4) : ell_i_minus_j(4, 5), oracle::random_unimodular(4, rng, 20));
            auto r = lll_reduce(g);
            CHECK(r.gram.determinant() == g.determinant());
            CHECK(congruence(g, r.transform) == r.gram);
            CHECK(abs(det_exact(r.transform)) == 1);
            // independent GSO check of size reduction and the Lovász condition
            const std::size_t n = 4;
            std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
            std::vector<Rat> b(n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    Rat s = r.gram(i, j);
                    for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
                    mu[i][j] = s / b[j];
                    CHECK(abs(mu[i][j]) <= Rat(1, 2));
                }
                Rat s = r.gram(i, i);
                for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
                b[i] = s;
                if (i > 0) CHECK(b[i] >= (Rat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * b[i - 1]);
            }
        }
    }
    SUBCASE("indefinite input") {
        CHECK_THROWS_AS(lll_reduce(GramMatrix{{1, 2}, {2, 1}}), ShapeError);
    }
}

TEST_CASE("short_vectors") {
    CHECK(short_vectors(a_n(2), 2).size() == 3);
    CHECK(short_vectors(a_n(4), 2).size() == 10);
    CHECK(short_vectors(a_n(3), 0).empty());
    CHECK_THROWS_AS(short_vectors(GramMatrix{{0, 0}, {0, 1}}, 3), ShapeError);

    SUBCASE("agrees with box enumeration for rank <= 4, bound <= 10") {
        std::mt19937_64 rng(23);
        std::vector<GramMatrix> grams{a_n(1), a_n(2), a_n(3), a_n(4), ell_i_minus_j(4, 5), GramMatrix{{4, 2}, {2, 2}},
                                      GramMatrix{{2, 3}, {3, 5}}, GramMatrix{{3, 1, 0}, {1, 3, 1}, {0, 1, 3}}};
        for (int t = 0; t < 6; ++t) grams.push_back(congruence(a_n(3), oracle::random_unimodular(3, rng, 6)));
        for (const auto &g : grams)
            for (long bound = 0; bound <= 10; ++bound)
                CHECK(short_vectors(g, bound) == oracle::box_short_vectors(g.matrix(), bound));
    }
    SUBCASE("kissing numbers n(n+1) of A_n") {
        for (std::size_t n = 1; n <= 6; ++n) CHECK(2 * short_vectors(a_n(n), 2).size() == n * (n + 1));
    }
}

TEST_CASE("is_isometric") {
    SUBCASE("sign flip") {
        auto w = is_isometric(GramMatrix{{2, -1}, {-1, 2}}, GramMatrix{{2, 1}, {1, 2}});
        REQUIRE(w);
        CHECK(verify_witness(GramMatrix{{2, -1}, {-1, 2}}, GramMatrix{{2, 1}, {1, 2}}, *w));
    }
    SUBCASE("determinant mismatch") {
        CHECK_FALSE(is_isometric(GramMatrix{{2, 0}, {0, 2}}, GramMatrix{{2, -1}, {-1, 2}}));
    }
    SUBCASE("same determinant, not isometric") {
        // det 16: 4I_2 versus [[2,0],[0,8]]
        CHECK_FALSE(is_isometric(GramMatrix{{4, 0}, {0, 4}}, GramMatrix{{2, 0}, {0, 8}}));
    }
    SUBCASE("rank mismatch") {
        CHECK_THROWS_AS(is_isometric(a_n(2), a_n(3)), ShapeError);
    }
    SUBCASE("random conjugates of A4 and 5I-J; symmetry") {
        std::mt19937_64 rng(29);
        for (const auto &g : {a_n(4), ell_i_minus_j(4, 5)}) {
            for (int t = 0; t < 100; ++t) {
                GramMatrix h = congruence(g, oracle::random_unimodular(4, rng, 16));
                auto w = is_isometric(g, h);
                REQUIRE(w);
                CHECK(verify_witness(g, h, *w));
                IsometryWitness back{unimodular_inverse(w->transform)};
                CHECK(verify_witness(h, g, back));
            }
        }
    }
}

TEST_CASE("classify_form") {
    QuadForm q(2);
    q.coeff(0, 0) = 1;
    q.coeff(0, 1) = -1;
    q.coeff(1, 1) = 1;
    auto c = classify_form(q);
    CHECK(c.primitive);
    CHECK(c.det_doubled == 3);
    CHECK_FALSE(c.even_lattice);
    CHECK(q.to_string() == "x^2 - x*y + y^2");

    QuadForm q2 = q;
    for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {1, 1}}) q2.coeff(i, j) *= 2;
    auto c2 = classify_form(q2);
    CHECK_FALSE(c2.primitive);
    CHECK(c2.even_lattice);
    CHECK(q2.content() == 2);

    auto z = classify_form(QuadForm(1));
    CHECK(z.integral);
    CHECK_FALSE(z.primitive);

    CHECK(QuadForm::from_doubled_gram(q.doubled_gram()) == q);
}
