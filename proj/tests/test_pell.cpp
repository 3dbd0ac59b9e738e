#include <doctest.h>

#include "arith.hpp"
#include "pell.hpp"

using namespace pellrank;
using arith::i64;
using pell::bigint;

TEST_CASE("negative Pell by period parity") {
    auto v5 = pell::neg_pell_by_period(5);
    CHECK(v5.solvable);
    REQUIRE(v5.witness.has_value());
    CHECK(v5.witness->first == 2);
    CHECK(v5.witness->second == 1);

    CHECK_FALSE(pell::neg_pell_by_period(8).solvable);

    auto v65 = pell::neg_pell_by_period(65);
    CHECK(v65.solvable);
    CHECK(v65.witness->first == 8);
    CHECK(v65.witness->second == 1);

    CHECK_THROWS_AS(pell::neg_pell_by_period(49), std::domain_error);
}

TEST_CASE("negative Pell by unit norm") {
    CHECK(pell::neg_pell_by_unit(5).solvable);   // unit 2 + sqrt(5), norm -1
    CHECK_FALSE(pell::neg_pell_by_unit(8).solvable);  // unit 3 + sqrt(8), norm +1
    CHECK(pell::neg_pell_by_unit(221).solvable == pell::neg_pell_by_period(221).solvable);
}

TEST_CASE("period parity agrees with the unit norm for every non-square D <= 1e5") {
    for (i64 d = 2; d <= 100000; ++d) {
        if (arith::is_square64(d)) continue;
        auto a = pell::neg_pell_by_period(d);
        auto b = pell::neg_pell_by_unit(d);
        if (a.solvable != b.solvable) REQUIRE_MESSAGE(a.solvable == b.solvable, "D=", d);
        if (a.solvable) {
            bigint x = a.witness->first, y = a.witness->second;
            REQUIRE(x * x - bigint(d) * y * y == -1);
        }
    }
}

TEST_CASE("a prime factor 3 mod 4 forces unsolvability") {
    for (i64 d = 2; d <= 100000; ++d) {
        if (arith::is_square64(d)) continue;
        bool has3 = false;
        for (auto& [p, e] : arith::factor_generic(d).factors)
            if (p % 4 == 3) has3 = true;
        if (!has3) continue;
        if (pell::neg_pell_by_period(d).solvable) REQUIRE_MESSAGE(false, "D=", d);
    }
}

TEST_CASE("fundamental verdict implies Pell-family membership") {
    for (i64 d = 5; d <= 20000; ++d) {
        if (!arith::is_fundamental_discriminant(d)) continue;
        if (pell::neg_pell_fundamental(d)) CHECK(arith::in_pell_family(d));
        // literal solvability also forces membership for fundamental D
        if (!arith::is_square64(d) && pell::neg_pell_by_period(d).solvable)
            CHECK(arith::in_pell_family(d));
    }
}

TEST_CASE("PellDiscriminant validation") {
    auto pd = pell::PellDiscriminant::make(40);
    CHECK(pd.pell_family);
    CHECK(pd.prime_factors.omega() == 2);
    CHECK_THROWS_AS(pell::PellDiscriminant::make(20), std::domain_error);
    CHECK_THROWS_AS(pell::PellDiscriminant::make(-4), std::domain_error);
}

TEST_CASE("radicand") {
    CHECK(pell::radicand(5) == 5);
    CHECK(pell::radicand(8) == 2);
    CHECK(pell::radicand(40) == 10);
}
