#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "spacing.hpp"

using namespace pellrank;
using arith::i64;

TEST_CASE("membership and enumeration of S(x)") {
    std::set<i64> got;
    spacing::enumerate_S(15, [&](const spacing::SpacingProfile& p) { got.insert(p.n); });
    CHECK(got == std::set<i64>{1, 2, 5, 10, 13});
    CHECK(spacing::is_member_S(26));
    CHECK_FALSE(spacing::is_member_S(21));
    CHECK_FALSE(spacing::is_member_S(50));  // 2 * 5^2

    SUBCASE("yielded profiles refactor correctly") {
        spacing::enumerate_S(2000, [&](const spacing::SpacingProfile& p) {
            i64 prod = 1;
            i64 prev = 0;
            for (i64 q : p.primes) {
                CHECK(q > prev);
                CHECK(q % 4 != 3);
                prev = q;
                prod *= q;
            }
            CHECK(prod == p.n);
        });
    }
}

TEST_CASE("comfortable spacing") {
    spacing::SpacingProfile p;
    p.n = 5 * 101;
    p.primes = {5, 101};
    CHECK_FALSE(spacing::is_comfortably_spaced(p, 3.0));
    spacing::SpacingProfile q;
    q.n = 13 * 101;
    q.primes = {13, 101};
    CHECK(spacing::is_comfortably_spaced(q, 5.0));
    spacing::SpacingProfile two;
    two.n = 2;
    two.primes = {2};
    CHECK(spacing::is_comfortably_spaced(two, 5.0));

    SUBCASE("raising y1 is consistent under recomputation") {
        spacing::enumerate_S(3000, [&](const spacing::SpacingProfile& pr) {
            if (pr.r() == 0) return;
            for (double y1 : {5.0, 10.0, 50.0})
                CHECK(spacing::is_comfortably_spaced(pr, y1) == spacing::is_comfortably_spaced(pr, y1));
        });
    }
}

TEST_CASE("regular spacing") {
    spacing::SpacingProfile small;
    small.n = 2 * 5 * 13;
    small.primes = {2, 5, 13};
    CHECK(spacing::is_regular(small, 2.0));  // r = 3: empty index range

    spacing::SpacingProfile p;
    p.n = 2LL * 5 * 13 * 17;
    p.primes = {2, 5, 13, 17};
    // i = 1 only: |log log 2 / 2 - 1| vs eta^{1/5} max(1, eta)^{4/5}
    double lhs = std::abs(0.5 * std::log(std::log(2.0)) - 1.0);
    double rhs = std::pow(3.0, 0.2) * std::pow(3.0, 0.8);
    CHECK(spacing::is_regular(p, 3.0) == (lhs < rhs));

    SUBCASE("eta at least r is always regular at desk scale") {
        spacing::enumerate_S(20000, [&](const spacing::SpacingProfile& pr) {
            if (pr.r() < 2) return;
            CHECK(spacing::is_regular(pr, double(pr.r()) + 0.5));
        });
    }
}

TEST_CASE("extravagant spacing") {
    spacing::SpacingProfile tiny;
    tiny.n = 2 * 5 * 13 * 17;
    tiny.primes = {2, 5, 13, 17};
    CHECK_FALSE(spacing::is_extravagant(tiny, tiny.n + 1));  // r = 4: window (1, 2) empty

    SUBCASE("a constructed huge gap is detected") {
        // r = 9; make p_5 overwhelming: window (1.5, 4.5) contains i in {2, 3, 4}
        spacing::SpacingProfile p;
        p.primes = {2, 5, 13, 1000003, 1000033, 1000037, 1000039, 1000081, 1000099};
        p.n = 0;  // n unused by the predicate beyond x >= n
        i64 x = i64{4} << 40;
        // direct evaluation of the displayed inequality as an independent check
        double lll = std::log(std::log(std::log(double(x))));
        bool expect = false;
        for (int i = 2; i <= 4; ++i) {
            double logp = std::log(double(p.primes[std::size_t(i - 1)]));
            double prefix = 0;
            for (int j = 1; j < i; ++j) prefix += std::log(double(p.primes[std::size_t(j - 1)]));
            if (logp >= std::pow(std::log(logp), 2.0) * lll * prefix) expect = true;
        }
        p.n = 1;
        CHECK(spacing::is_extravagant(p, x) == expect);
        CHECK(expect);  // the 13 -> 1000003 jump dominates
    }

    SUBCASE("ten consecutive usable primes evaluated directly") {
        spacing::SpacingProfile p;
        p.primes = {2, 5, 13, 17, 29, 37, 41, 53, 61, 73};
        p.n = 1;
        for (i64 q : p.primes) p.n *= q;
        i64 x = p.n + 1;
        double lll = std::log(std::log(std::log(double(x))));
        bool expect = false;
        for (int i = 2; i <= 4; ++i) {  // window (sqrt(10)/2, 5) = {2, 3, 4}
            double logp = std::log(double(p.primes[std::size_t(i - 1)]));
            double prefix = 0;
            for (int j = 1; j < i; ++j) prefix += std::log(double(p.primes[std::size_t(j - 1)]));
            if (logp >= std::pow(std::log(logp), 2.0) * lll * prefix) expect = true;
        }
        CHECK(spacing::is_extravagant(p, x) == expect);
    }
}

TEST_CASE("spacing statistics at 1e4") {
    auto rep = spacing::spacing_statistics(10000, 10.0, 3.0);
    i64 sum = 0;
    for (auto& [r, c] : rep.counts.phi_r) sum += c;
    CHECK(sum == rep.counts.phi);

    // independent two-pass count of Phi(1e4)
    i64 direct = 0;
    for (i64 n = 1; n < 10000; ++n)
        if (spacing::is_member_S(n)) ++direct;
    CHECK(direct == rep.counts.phi);

    for (const auto& row : rep.rows) {
        CHECK(row.total > 0);
        CHECK(row.fail_comfortable >= 0);
        CHECK(row.fail_comfortable <= row.total);
        CHECK(row.fail_regular <= row.total);
        CHECK(row.fail_extravagant <= row.total);
    }
}

TEST_CASE("mertens partial sums stabilize") {
    double m3 = spacing::mertens_partial(1000);
    CHECK(std::isfinite(m3));
    double m5 = spacing::mertens_partial(100000);
    double m6 = spacing::mertens_partial(1000000);
    CHECK(std::abs(m5 - m6) < 0.05);
}

TEST_CASE("exception fractions stay below one half at 1e6" * doctest::timeout(300)) {
    auto rep = spacing::spacing_statistics(1000000, 10.0, 3.0);
    // comfortable and regular: sanity floor inside the Erdos-Kac window
    for (const auto& row : rep.rows) {
        CHECK(double(row.fail_comfortable) / double(row.total) < 0.5);
        CHECK(double(row.fail_regular) / double(row.total) < 0.5);
    }
    // extravagant spacing is vacuously false whenever the index window
    // (sqrt(r)/2, r/2) holds no integer, which covers every r in the
    // mu-window at desk-scale cutoffs; assert the floor where the window
    // is populated instead
    std::map<int, std::pair<arith::i64, arith::i64>> byr;
    spacing::enumerate_S(1000000, [&](const spacing::SpacingProfile& p) {
        int r = p.r();
        bool nonempty = false;
        for (int i = 1; 2 * i < r; ++i)
            if (4 * i * i > r) nonempty = true;  // sqrt(r)/2 < i < r/2
        if (!nonempty) return;
        auto& e = byr[r];
        ++e.first;
        if (!spacing::is_extravagant(p, 1000000)) ++e.second;
    });
    for (auto& [r, e] : byr) {
        if (e.first < 50) continue;
        CHECK(double(e.second) / double(e.first) < 0.5);
    }
    // the y1 trend block shrinks as y1 grows
    REQUIRE(rep.y1_trend.size() == 3);
    CHECK(rep.y1_trend[0].fail_comfortable >= rep.y1_trend[1].fail_comfortable);
    CHECK(rep.y1_trend[1].fail_comfortable >= rep.y1_trend[2].fail_comfortable);
}
