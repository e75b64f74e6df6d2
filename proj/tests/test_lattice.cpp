#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "qgkm/lattice.hpp"
#include "qgkm/polynomial.hpp"

using namespace qgkm;
using namespace qgkm::test;

TEST_CASE("canonicalize normalizes the sign of the first nonzero coordinate", "[lattice]") {
    CHECK(uw({-1, 2}).rep() == wv({1, -2}));
    CHECK(uw({0, -3}).rep() == wv({0, 3}));
    CHECK(uw({2, 1}).rep() == wv({2, 1}));
    CHECK_THROWS_AS(canonicalize(wv({0, 0})), Error);
    try {
        canonicalize(wv({0, 0, 0}));
        FAIL("expected ZeroWeight");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroWeight);
    }
}

TEST_CASE("canonicalize identifies w and -w", "[lattice]") {
    for (int trial = 0; trial < 200; ++trial) {
        const WeightVector w = random_nonzero_vector(1 + trial % 5, 4);
        CHECK(canonicalize(w) == canonicalize(-w));
    }
}

TEST_CASE("rank over Q agrees with the minor-expansion oracle", "[lattice]") {
    // frozen values confirmed by rank_oracle (largest nonzero minor)
    const std::vector<std::vector<WeightVector>> inputs = {
        {wv({1, 0}), wv({0, 1})},
        {wv({1, 1}), wv({2, 2})},
        {wv({2, 0, 0}), wv({1, 1, 0}), wv({1, -1, 0})},
    };
    const std::vector<int> expected = {2, 1, 2};
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        CHECK(rank_oracle(inputs[i]) == expected[i]);
        CHECK(rank_over_q(inputs[i]) == expected[i]);
    }
    // any 2 of the 3 vectors in the third input are independent
    const auto& rows = inputs[2];
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            CHECK(rank_over_q({rows[i], rows[j]}) == 2);

    for (int trial = 0; trial < 100; ++trial) {
        std::vector<WeightVector> rows2;
        const std::size_t m = 2 + trial % 3;
        for (std::size_t r = 0; r < 1 + trial % 4; ++r)
            rows2.push_back(random_vector(m, 3));
        CHECK(rank_over_q(rows2) == rank_oracle(rows2));
    }
}

TEST_CASE("rank over Q ignores sign flips and input order", "[lattice]") {
    std::vector<WeightVector> rows = {wv({2, 0, 1}), wv({1, 1, 0}), wv({0, -1, 3})};
    const int base = rank_over_q(rows);
    std::vector<WeightVector> flipped = {-rows[1], rows[2], -rows[0]};
    CHECK(rank_over_q(flipped) == base);
}

TEST_CASE("unsigned congruence solves s*y = x + c*a", "[lattice]") {
    auto c1 = unsigned_congruence(uw({0, 1}), uw({0, 1}), uw({1, 1}));
    REQUIRE(c1);
    CHECK(c1->sign == 1);
    CHECK(c1->c == 0);

    auto c2 = unsigned_congruence(uw({1, 0}), uw({0, 1}), uw({1, 1}));
    REQUIRE(c2);
    CHECK(c2->sign == -1);
    CHECK(c2->c == -1);

    CHECK_FALSE(unsigned_congruence(uw({1, 0}), uw({0, 1}), uw({1, 0})));
}

TEST_CASE("unsigned congruence properties", "[lattice]") {
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = 2 + trial % 3;
        const WeightVector x = random_nonzero_vector(m), a = random_nonzero_vector(m);
        if (proportional(x, a)) continue;
        // reflexive case: (x, x, a) -> (+1, 0)
        const auto refl = unsigned_congruence(canonicalize(x), canonicalize(x), canonicalize(a));
        REQUIRE(refl);
        CHECK(refl->sign == 1);
        CHECK(refl->c == 0);

        // flipping the modulus lift negates the congruence constant
        std::uniform_int_distribution<int> coin(0, 5);
        WeightVector y = x + Int(coin(test_rng()) - 2) * a;
        if (y.is_zero() || proportional(y, a)) continue;
        const auto fwd = congruent_lifts(canonicalize(y), x, a);
        REQUIRE(fwd.size() == 1);
        const auto neg = congruent_lifts(canonicalize(y), x, -a);
        REQUIRE(neg.size() == 1);
        CHECK(fwd[0].c == -neg[0].c);
        CHECK(fwd[0].lift == neg[0].lift);
    }
}

TEST_CASE("kernel basis spans the kernel lattice of the form", "[lattice]") {
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + trial % 5;
        const WeightVector a = random_nonzero_vector(m, 5);
        const auto basis = kernel_basis(a);
        REQUIRE(basis.size() == m - 1);
        for (const auto& k : basis) {
            Int dot = 0;
            for (std::size_t i = 0; i < m; ++i) dot += a.coords[i] * k.coords[i];
            CHECK(dot == 0);
        }
        if (m > 1) CHECK(rank_over_q(basis) == static_cast<int>(m) - 1);
    }
}

TEST_CASE("divisibility by a linear form", "[lattice]") {
    const std::size_t m = 2;
    Polynomial x0 = Polynomial::variable(m, 0), x1 = Polynomial::variable(m, 1);
    CHECK(divides_linear(uw({1, -1}), x0 * x0 - x1 * x1));
    CHECK_FALSE(divides_linear(uw({1, -1}), x0 * x0 + x1 * x1));
    CHECK(divides_linear(uw({1, 0}), Polynomial::zero(m)));
}

TEST_CASE("divisibility agrees with the pivot-substitution oracle", "[lattice]") {
    std::uniform_int_distribution<int> cdist(-3, 3);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t m = 2 + trial % 2;
        const UnsignedWeight a = canonicalize(random_nonzero_vector(m, 2));
        Polynomial p = Polynomial::zero(m);
        for (const auto& e : monomials_of_degree(m, 2))
            p.add_term(e, Rat(cdist(test_rng())));
        CHECK(divides_linear(a, p) == divides_linear_oracle(a, p));
        // the ideal property: a | p implies a | p*q
        Polynomial q = Polynomial::zero(m);
        for (const auto& e : monomials_of_degree(m, 1))
            q.add_term(e, Rat(cdist(test_rng())));
        const Polynomial form = Polynomial::linear_form(a.rep());
        CHECK(divides_linear(a, form * p));
        if (divides_linear(a, p)) CHECK(divides_linear(a, p * q));
    }
}
