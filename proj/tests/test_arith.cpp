#include <doctest.h>

#include <numeric>
#include <set>

#include "arith.hpp"
#include "rng.hpp"

using namespace pellrank;
using arith::i64;

TEST_CASE("kronecker symbol examples") {
    CHECK(arith::kronecker(5, 11) == 1);
    CHECK(arith::kronecker(2, 7) == 1);
    CHECK(arith::kronecker(3, 9) == 0);
    CHECK_THROWS_AS(arith::kronecker(3, 0), std::domain_error);
}

TEST_CASE("kronecker quadratic reciprocity, exhaustive below 10^4") {
    // (a|b)(b|a) = (-1)^{(a-1)(b-1)/4} for odd coprime a, b
    for (i64 a = 3; a < 10000; a += 2) {
        for (i64 b = a + 2; b < 10000; b += 2) {
            if (std::gcd(a, b) != 1) continue;
            int lhs = arith::kronecker(a, b) * arith::kronecker(b, a);
            int rhs = ((a % 4 == 3) && (b % 4 == 3)) ? -1 : 1;
            if (lhs != rhs) {
                REQUIRE_MESSAGE(lhs == rhs, "a=", a, " b=", b);
            }
        }
    }
}

TEST_CASE("kronecker multiplicativity, randomized") {
    rng::Xoshiro256 gen(7);
    for (int t = 0; t < 2000; ++t) {
        i64 a = i64(gen.below(4000)) - 2000;
        i64 b = i64(gen.below(4000)) - 2000;
        i64 n = i64(gen.below(3999)) + 1;
        if (a == 0 || b == 0) continue;
        CHECK(arith::kronecker(a * b, n) == arith::kronecker(a, n) * arith::kronecker(b, n));
    }
}

TEST_CASE("hilbert symbol examples and properties") {
    CHECK(arith::hilbert(-1, -1, i64(arith::Place::infinity)) == -1);
    CHECK(arith::hilbert(2, 5, 5) == -1);
    CHECK(arith::hilbert(5, 29, 2) == 1);
    CHECK_THROWS_AS(arith::hilbert(0, 3, 5), std::domain_error);

    // product over all relevant places is +1 (Hilbert reciprocity)
    rng::Xoshiro256 gen(11);
    for (int t = 0; t < 1000; ++t) {
        i64 a = i64(gen.below(400)) - 200;
        i64 b = i64(gen.below(400)) - 200;
        if (a == 0 || b == 0) continue;
        std::set<i64> places{-1, 2};
        for (i64 v : {a < 0 ? -a : a, b < 0 ? -b : b})
            for (auto& [p, e] : arith::factor_generic(v).factors)
                if (p != 2) places.insert(p);
        int prod = 1;
        for (i64 v : places) prod *= arith::hilbert(a, b, v);
        CHECK(prod == 1);
        // symmetry and bilinearity on a sample place
        CHECK(arith::hilbert(a, b, 2) == arith::hilbert(b, a, 2));
    }
}

TEST_CASE("factor sieve") {
    arith::FactorSieve sieve(1000000);
    auto f10 = sieve.factor(10);
    REQUIRE(f10.factors.size() == 2);
    CHECK(f10.factors[0] == std::pair<i64, int>{2, 1});
    CHECK(f10.factors[1] == std::pair<i64, int>{5, 1});
    auto f97 = sieve.factor(97);
    REQUIRE(f97.factors.size() == 1);
    CHECK(f97.factors[0] == std::pair<i64, int>{97, 1});

    SUBCASE("prime count to 1e6 against an independent sieve") {
        std::vector<bool> comp(1000001, false);
        i64 count = 0;
        for (i64 p = 2; p <= 1000000; ++p) {
            if (comp[std::size_t(p)]) continue;
            ++count;
            for (i64 m = p * p; m <= 1000000; m += p) comp[std::size_t(m)] = true;
        }
        CHECK(count == 78498);
        CHECK(sieve.prime_count() == count);
    }

    SUBCASE("factorizations match trial division below 1e5") {
        for (i64 n = 2; n <= 100000; ++n) {
            auto f = sieve.factor(n);
            i64 v = 1;
            i64 m = n;
            for (auto& [p, e] : f.factors) {
                for (int k = 0; k < e; ++k) {
                    REQUIRE(m % p == 0);
                    m /= p;
                    v *= p;
                }
            }
            CHECK(m == 1);
            CHECK(v == n);
        }
    }

    CHECK_THROWS_AS(arith::FactorSieve(i64{1} << 40), std::length_error);
}

TEST_CASE("segmented factorization agrees with direct factorization") {
    arith::segmented_factor_range(99990, 100100, [&](i64 n, const std::vector<std::pair<i64, int>>& f) {
        auto direct = arith::factor_generic(n);
        CHECK(f == direct.factors);
    });
}

TEST_CASE("continued fraction of sqrt(D)") {
    auto c2 = arith::sqrt_continued_fraction(2);
    CHECK(c2.a0 == 1);
    CHECK(c2.period == std::vector<i64>{2});
    auto c5 = arith::sqrt_continued_fraction(5);
    CHECK(c5.a0 == 2);
    CHECK(c5.period == std::vector<i64>{4});
    auto c8 = arith::sqrt_continued_fraction(8);
    CHECK(c8.a0 == 2);
    CHECK((c8.period == std::vector<i64>{1, 4}));
    CHECK_THROWS_AS(arith::sqrt_continued_fraction(49), std::domain_error);

    SUBCASE("last period term is 2*a0 and convergents satisfy the Q-identity") {
        for (i64 d = 2; d <= 500; ++d) {
            if (arith::is_square64(d)) continue;
            auto cf = arith::sqrt_continued_fraction(d);
            CHECK(cf.period.back() == 2 * cf.a0);
            // walk convergents against the (m, q) recurrence: p_k^2 - d q_k^2 = (-1)^{k+1} q_{k+1}
            i64 m = 0, q = 1;
            arith::i128 pm1 = cf.a0, pm2 = 1, qm1 = 1, qm2 = 0;
            for (std::size_t k = 0; k < cf.period.size(); ++k) {
                m = q * ((cf.a0 + m) / q) - m;
                q = (d - m * m) / q;
                arith::i128 lhs = pm1 * pm1 - arith::i128(d) * qm1 * qm1;
                arith::i128 expect = (k % 2 == 0) ? -arith::i128(q) : arith::i128(q);
                CHECK(lhs == expect);
                arith::i128 pn = arith::i128(cf.period[k]) * pm1 + pm2;
                arith::i128 qn = arith::i128(cf.period[k]) * qm1 + qm2;
                pm2 = pm1;
                pm1 = pn;
                qm2 = qm1;
                qm1 = qn;
            }
        }
    }
}

TEST_CASE("fundamental discriminants and the Pell family") {
    CHECK(arith::is_fundamental_discriminant(5));
    CHECK_FALSE(arith::is_fundamental_discriminant(20));
    CHECK(arith::is_fundamental_discriminant(12));
    CHECK(arith::in_pell_family(5));
    CHECK_FALSE(arith::in_pell_family(12));
    CHECK(arith::in_pell_family(40));

    arith::FactorSieve sieve(100000);
    for (i64 d = 2; d <= 100000; ++d) CHECK(arith::in_pell_family(d, sieve) == arith::in_pell_family(d));
}

TEST_CASE("square classes") {
    auto c = arith::SquareClass::from_integer(-360);  // -360 = -1 * 2^3 * 3^2 * 5
    CHECK(c.sign == -1);
    CHECK(c.two_exp == 1);
    CHECK(c.odd == 5);
    CHECK(c.value() == -10);
    CHECK(arith::SquareClass::from_integer(1).is_trivial());
    CHECK(arith::SquareClass::from_integer(49).is_trivial());

    rng::Xoshiro256 gen(5);
    for (int t = 0; t < 500; ++t) {
        i64 a = i64(gen.below(5000)) + 1;
        i64 b = i64(gen.below(5000)) + 1;
        if (gen.coin()) a = -a;
        if (gen.coin()) b = -b;
        auto prod = arith::SquareClass::from_integer(a) * arith::SquareClass::from_integer(b);
        auto direct = arith::SquareClass::from_integer(a * b);
        CHECK(prod == direct);
        // odd part squarefree by trial division
        for (i64 p = 3; p * p <= prod.odd; p += 2)
            if (prod.odd % p == 0) CHECK(prod.odd % (p * p) != 0);
    }
}

TEST_CASE("field discriminants") {
    CHECK(arith::SquareClass::from_integer(5).field_discriminant() == 5);
    CHECK(arith::SquareClass::from_integer(2).field_discriminant() == 8);
    CHECK(arith::SquareClass::from_integer(-1).field_discriminant() == -4);
    CHECK(arith::SquareClass::from_integer(-5).field_discriminant() == -20);
    CHECK(arith::SquareClass::from_integer(13).field_discriminant() == 13);
}

TEST_CASE("two squares and modular square roots") {
    rng::Xoshiro256 gen(13);
    for (int t = 0; t < 300; ++t) {
        // build a random product of primes 1 mod 4 (and optionally 2)
        i64 a = 1;
        for (int k = 0; k < 3; ++k) {
            i64 p = 5 + 4 * i64(gen.below(500));
            if (arith::is_prime(arith::u64(p)) && a % p != 0 && a < 100000) a *= p;
        }
        if (gen.coin()) a *= 2;
        auto [x, y] = arith::two_squares(a);
        CHECK(x * x + y * y == a);
    }
    for (i64 p : {5LL, 13LL, 97LL, 1000003LL}) {
        for (int t = 0; t < 20; ++t) {
            i64 a = i64(gen.below(arith::u64(p - 1))) + 1;
            if (arith::kronecker(a, p) != 1) continue;
            i64 r = arith::sqrt_mod_prime(a, p);
            CHECK(arith::mulmod(arith::u64(r), arith::u64(r), arith::u64(p)) == arith::u64(a % p));
        }
    }
}
