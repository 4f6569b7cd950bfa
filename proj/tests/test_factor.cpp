#include "doctest.h"

#include <random>

#include "fqt/factor.hpp"
#include "test_util.hpp"

using namespace fqt;

TEST_CASE("small factorizations") {
    Field f2 = Field::create(2, 1);
    Poly x = Poly::x(f2);
    Poly xp1 = Poly::from_ints(f2, {1, 1});

    Factorization fa = factorize(Poly::from_ints(f2, {0, 1, 1}));  // X^2 + X
    REQUIRE(fa.factors.size() == 2);
    CHECK(fa.lead.is_one());
    CHECK(fa.factors[0] == std::pair<Poly, std::uint32_t>{x, 1});
    CHECK(fa.factors[1] == std::pair<Poly, std::uint32_t>{xp1, 1});

    Factorization fb = factorize(Poly::from_ints(f2, {0, 0, 1, 0, 1}));  // X^4 + X^2
    REQUIRE(fb.factors.size() == 2);
    CHECK(fb.factors[0] == std::pair<Poly, std::uint32_t>{x, 2});
    CHECK(fb.factors[1] == std::pair<Poly, std::uint32_t>{xp1, 2});

    Field f3 = Field::create(3, 1);
    Poly c = Poly::from_ints(f3, {1, 0, 1});  // X^2 + 1
    // root-search oracle: -1 is a nonsquare mod 3, so no roots
    for (Residue r = 0; r < 3; ++r) CHECK((r * r + 1) % 3 != 0);
    Factorization fc = factorize(c);
    REQUIRE(fc.factors.size() == 1);
    CHECK(fc.factors[0] == std::pair<Poly, std::uint32_t>{c, 1});
    CHECK(is_irreducible(c));

    CHECK_THROWS_AS(factorize(Poly::zero(f2)), ZeroPolynomialError);
}

TEST_CASE("p-th power detection in the squarefree step") {
    Field f2 = Field::create(2, 1);
    Poly xp1 = Poly::from_ints(f2, {1, 1});
    // (X+1)^4 has zero derivative; naive derivative-gcd squarefree stalls here
    Factorization fa = factorize(xp1.pow(4));
    REQUIRE(fa.factors.size() == 1);
    CHECK(fa.factors[0] == std::pair<Poly, std::uint32_t>{xp1, 4});

    Poly irred = Poly::from_ints(f2, {1, 1, 1});
    Factorization fb = factorize(irred.pow(2));
    REQUIRE(fb.factors.size() == 1);
    CHECK(fb.factors[0] == std::pair<Poly, std::uint32_t>{irred, 2});

    Field f3 = Field::create(3, 1);
    Poly g = Poly::from_ints(f3, {1, 1});  // X + 1
    Poly h = Poly::from_ints(f3, {2, 1});  // X + 2
    Factorization fc = factorize(g.pow(3) * h.pow(6) * Poly::x(f3));
    REQUIRE(fc.factors.size() == 3);
    CHECK(fc.reconstruct() == g.pow(3) * h.pow(6) * Poly::x(f3));
}

TEST_CASE("factorize-reconstruct identity on random polynomials") {
    std::mt19937_64 rng(37);
    for (auto [p, k] : {std::pair<int, int>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        Field f = Field::create(p, k);
        for (int trial = 0; trial < 60; ++trial) {
            Poly a = testutil::random_nonzero_poly(f, 20, rng);
            Factorization fact = factorize(a, /*seed=*/trial);
            CHECK(fact.reconstruct() == a);
            for (const auto& [pi, m] : fact.factors) {
                CHECK(pi.is_monic());
                CHECK(is_irreducible(pi));
                CHECK(m >= 1);
            }
        }
    }
}

TEST_CASE("irreducible counts match the necklace formula and exhaustion") {
    CHECK(count_irreducibles(7, 2) == 18);    // (2^7 - 2) / 7
    CHECK(count_irreducibles(11, 2) == 186);  // (2^11 - 2) / 11
    CHECK(count_irreducibles(5, 3) == 48);    // (3^5 - 3) / 5
    CHECK(count_irreducibles(1, 5) == 5);
    CHECK(count_irreducibles(4, 2) == 3);     // composite degree needs mobius terms

    // exhaustive cross-check for small d * log q
    for (auto [d, p] : {std::pair<int, int>{7, 2}, {5, 3}, {4, 2}, {2, 5}}) {
        Field f = Field::create(p, 1);
        std::uint64_t count = 0;
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<std::uint64_t> digits;
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                digits.push_back(c % p);
                c /= p;
            }
            digits.push_back(1);
            if (is_irreducible(Poly::from_ints(f, digits))) ++count;
        }
        CHECK(count == count_irreducibles(d, p));
    }
}

TEST_CASE("irreducible enumeration is canonical and coprime") {
    Field f2 = Field::create(2, 1);
    auto polys = enumerate_irreducibles(f2, 7, 18);
    REQUIRE(polys.size() == 18);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        CHECK(polys[i].is_monic());
        CHECK(polys[i].degree() == 7);
        CHECK(is_irreducible(polys[i]));
        if (i > 0) CHECK(poly_less(polys[i - 1], polys[i]));
        for (std::size_t j = 0; j < i; ++j)
            CHECK(gcd(polys[i], polys[j]).degree() == 0);
    }

    Field f5 = Field::create(5, 1);
    auto linears = enumerate_irreducibles(f5, 1, 5);
    for (std::uint64_t j = 0; j < 5; ++j)
        CHECK(linears[j] == Poly::from_ints(f5, {j, 1}));

    CHECK_THROWS_AS(enumerate_irreducibles(f2, 2, 2), NotEnoughIrreduciblesError);
}
