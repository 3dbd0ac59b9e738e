#include <doctest.h>

#include <map>

#include "arith.hpp"
#include "quadforms.hpp"
#include "redei.hpp"

using namespace pellrank;
using arith::i64;
using quadforms::ClassGroup;

TEST_CASE("class numbers of small discriminants") {
    CHECK(ClassGroup(5).class_number() == 1);
    CHECK(ClassGroup(8).class_number() == 1);
    CHECK(ClassGroup(40).class_number() == 2);
    CHECK_THROWS_AS(ClassGroup(21, 10), std::length_error);
    CHECK_THROWS_AS(ClassGroup(20), std::domain_error);
}

TEST_CASE("two-sylow extraction from composition tables") {
    // trivial group
    auto t0 = quadforms::two_sylow_of_table(1, 0, [](int, int) { return 0; });
    CHECK(t0.cyclic_orders.empty());
    // order 2
    auto t1 = quadforms::two_sylow_of_table(2, 0, [](int a, int b) { return a ^ b; });
    CHECK(t1.cyclic_orders == std::vector<i64>{2});
    // synthetic Z/4 x Z/2, elements (a, b) with a mod 4 and b mod 2
    auto compose = [](int x, int y) {
        int ax = x & 3, bx = x >> 2, ay = y & 3, by = y >> 2;
        return ((ax + ay) & 3) | (((bx + by) & 1) << 2);
    };
    auto t2 = quadforms::two_sylow_of_table(8, 0, compose);
    CHECK((t2.cyclic_orders == std::vector<i64>{2, 4}));
}

TEST_CASE("profiles of documented discriminants") {
    auto p5 = ClassGroup(5).profile();
    CHECK(p5.rk4_narrow == 0);
    CHECK(p5.rk8_narrow == 0);
    CHECK(p5.neg_pell);

    auto p40 = ClassGroup(40).profile();
    CHECK(p40.rk2 == 1);
    CHECK(p40.rk4_narrow == 0);
    CHECK(p40.neg_pell);  // 3^2 - 10 = -1

    auto p205 = ClassGroup(205).profile();  // CL+ = Z/4, CL = Z/2
    CHECK(p205.rk4_narrow == 1);
    CHECK(p205.rk4_ordinary == 0);
    CHECK_FALSE(p205.neg_pell);

    // cross-checked against the symbol side
    auto p1105 = ClassGroup(1105).profile();
    std::vector<i64> primes{5, 13, 17};
    auto sp = redei::symbolic_profile(1105, primes);
    CHECK(p1105.rk4_narrow == sp.rk4_narrow);
    CHECK(p1105.rk8_narrow == sp.rk8_narrow);
    CHECK(p1105.rk4_ordinary == sp.rk4_ordinary);
    CHECK(p1105.neg_pell == sp.neg_pell);
}

TEST_CASE("composition is a commutative associative group law (all fundamental D <= 1000)") {
    for (i64 d = 5; d <= 1000; ++d) {
        if (!arith::is_fundamental_discriminant(d)) continue;
        ClassGroup g(d);
        int n = g.num_classes();
        int id = g.identity();
        const std::size_t un = std::size_t(n);
        std::vector<std::vector<int>> table(un, std::vector<int>(un));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) table[std::size_t(i)][std::size_t(j)] = g.compose(i, j);
        for (int i = 0; i < n; ++i) {
            CHECK(table[std::size_t(i)][std::size_t(id)] == i);
            for (int j = 0; j < n; ++j) {
                CHECK(table[std::size_t(i)][std::size_t(j)] == table[std::size_t(j)][std::size_t(i)]);
                for (int k = 0; k < n; ++k) {
                    int lhs = table[std::size_t(table[std::size_t(i)][std::size_t(j)])][std::size_t(k)];
                    int rhs = table[std::size_t(i)][std::size_t(table[std::size_t(j)][std::size_t(k)])];
                    if (lhs != rhs) REQUIRE_MESSAGE(lhs == rhs, "associativity fails at D=", d);
                }
            }
        }
        // each row is a permutation (cancellation)
        for (int i = 0; i < n; ++i) {
            std::vector<bool> seen(std::size_t(n), false);
            for (int j = 0; j < n; ++j) {
                CHECK_FALSE(seen[std::size_t(table[std::size_t(i)][std::size_t(j)])]);
                seen[std::size_t(table[std::size_t(i)][std::size_t(j)])] = true;
            }
        }
    }
}

TEST_CASE("narrow 2-rank is omega - 1 and neg_pell matches rank coincidence (Pell D <= 1e4)") {
    for (i64 d = 5; d <= 10000; ++d) {
        if (!arith::in_pell_family(d)) continue;
        ClassGroup g(d);
        auto narrow = g.two_sylow();
        auto ordinary = g.two_sylow_ordinary();
        int omega = arith::factor_generic(d).omega();
        CHECK(narrow.rank_pow(1) == omega - 1);
        bool ranks_match = true;
        for (int k = 1; k <= 6; ++k)
            if (narrow.rank_pow(k) != ordinary.rank_pow(k)) ranks_match = false;
        CHECK(g.neg_pell() == ranks_match);
        CHECK(g.class_number() == g.class_number_ordinary() * (g.neg_pell() ? 1 : 2));
    }
}

TEST_CASE("oracle artin pairing matches the symbol construction") {
    for (i64 d : {145LL, 205LL, 1105LL, 3281LL}) {
        ClassGroup g(d);
        auto pm = redei::pairing_matrix(d);
        for (const auto& a : pm.row_basis)
            for (const auto& b : pm.col_basis) {
                int via_symbols = redei::artin_pairing(d, a, b);
                int via_oracle = g.artin_pairing(a.value(), b.value());
                if (via_symbols != via_oracle)
                    REQUIRE_MESSAGE(via_symbols == via_oracle, "D=", d, " a=", a.value(), " b=", b.value());
            }
    }
}
