#include <doctest.h>

#include <cmath>

#include "densities.hpp"

using namespace pellrank;
using densities::rat;

TEST_CASE("alpha and beta") {
    double a = densities::alpha();
    CHECK(std::abs(a - 0.41942) < 1e-5);
    CHECK(std::abs((1 - a) - 0.58057) < 1e-5);
    CHECK(std::abs(a - densities::alpha_inverse_form()) < 1e-12);
    double b = densities::beta();
    CHECK(b > 1.25);  // beta > 5/4
    CHECK(a * b >= 0.538);
    // the series evaluates to 1.2832651...; the displayed constant truncates
    CHECK(b == doctest::Approx(1.2832651213).epsilon(1e-9));
}

TEST_CASE("theorem 2 densities") {
    CHECK(densities::theorem2_density_over_alpha(0, 0) == rat(1));
    CHECK(densities::theorem2_density_over_alpha(1, 0) == rat(1, 4));
    CHECK(densities::theorem2_density_over_alpha(2, 0) == rat(1, 32));
    CHECK_THROWS_AS(densities::theorem2_density_over_alpha(1, 2), std::domain_error);

    SUBCASE("factorization through the stationary law and Q(n|m), exact") {
        for (int n = 0; n <= 8; ++n)
            for (int m = 0; m <= n; ++m) {
                rat lhs = densities::theorem2_density_over_alpha(n, m);
                rat rhs = densities::stationary_over_alpha(n) * densities::q_prob(n, m);
                CHECK(lhs == rhs);
            }
    }

    SUBCASE("m = 0 ties to the beta summand") {
        for (int n = 0; n <= 8; ++n) {
            rat expect = rat(1, boost::multiprecision::cpp_int(1) << (n * (n + 3) / 2));
            CHECK(densities::theorem2_density_over_alpha(n, 0) == expect);
        }
    }

    SUBCASE("the (n, m) table is dominated by the stationary mass") {
        for (int n = 0; n <= 8; ++n) {
            rat sum = 0;
            for (int m = 0; m <= n; ++m) sum += densities::theorem2_density_over_alpha(n, m);
            CHECK(sum <= densities::stationary_over_alpha(n));
        }
    }
}

TEST_CASE("corank distribution") {
    auto d1 = densities::corank_dist_enumerated(1);
    CHECK(d1 == std::vector<rat>{rat(1, 2), rat(1, 2)});
    auto d2 = densities::corank_dist_enumerated(2);
    CHECK((d2 == std::vector<rat>{rat(1, 2), rat(3, 8), rat(1, 8)}));
    for (int n = 0; n <= 5; ++n) CHECK(densities::corank_dist_enumerated(n) == densities::corank_dist_chain(n));
    CHECK_THROWS_AS(densities::corank_dist_enumerated(6), std::length_error);
}

TEST_CASE("markov chain") {
    SUBCASE("rows are exactly stochastic and only move by one") {
        for (int i = 0; i <= 30; ++i) {
            rat row = 0;
            for (int j = 0; j <= 31; ++j) {
                rat p = densities::transition(i, j);
                if (j < i - 1 || j > i + 1) CHECK(p == 0);
                row += p;
            }
            CHECK(row == 1);
        }
    }
    SUBCASE("pi is an exact fixed point") {
        for (int j = 0; j <= 20; ++j) {
            rat lhs = 0;
            for (int i = std::max(0, j - 1); i <= j + 1; ++i)
                lhs += densities::stationary_over_alpha(i) * densities::transition(i, j);
            CHECK(lhs == densities::stationary_over_alpha(j));
        }
    }
    SUBCASE("pi values and normalization") {
        auto pi = densities::markov_stationary(24);
        double a = densities::alpha();
        CHECK(pi[0] == doctest::Approx(a).epsilon(1e-12));
        CHECK(pi[1] == doctest::Approx(a).epsilon(1e-12));
        double sum = 0;
        for (double v : pi) sum += v;
        CHECK(std::abs(sum - 1.0) < 1e-10);
        // fixed point to 1e-12 in doubles as well
        for (int j = 0; j <= 20; ++j) {
            double lhs = 0;
            for (int i = std::max(0, j - 1); i <= j + 1; ++i)
                lhs += pi[std::size_t(i)] * static_cast<double>(densities::transition(i, j));
            CHECK(std::abs(lhs - pi[std::size_t(j)]) < 1e-12);
        }
    }
}

TEST_CASE("Q(n2|n3)") {
    CHECK(densities::q_prob(0, 0) == rat(1));
    CHECK(densities::q_prob(1, 0) == rat(1, 4));
    CHECK(densities::q_prob(1, 1) == rat(1, 4));
    CHECK_THROWS_AS(densities::q_prob(1, 2), std::domain_error);
    for (int n2 = 0; n2 <= 3; ++n2)
        for (int n3 = 0; n3 <= n2; ++n3)
            CHECK(densities::q_prob(n2, n3) == densities::q_prob_bruteforce(n2, n3));
}
