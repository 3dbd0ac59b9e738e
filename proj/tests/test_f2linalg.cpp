#include <doctest.h>

#include "densities.hpp"
#include "f2linalg.hpp"
#include "rng.hpp"

using namespace pellrank;
using f2linalg::F2Matrix;

TEST_CASE("rank examples") {
    CHECK(F2Matrix::identity(3).rank() == 3);
    CHECK(F2Matrix(4, 4).rank() == 0);
    F2Matrix ones = F2Matrix::from_bits(3, 3, [](int, int) { return 1; });
    CHECK(ones.rank() == 1);
}

TEST_CASE("kernel basis") {
    CHECK(F2Matrix::identity(4).kernel_basis().empty());
    auto zero_kernel = F2Matrix(3, 3).kernel_basis();
    REQUIRE(zero_kernel.size() == 3);
    F2Matrix r1 = F2Matrix::from_bits(2, 2, [](int r, int c) { return (r == 0 && c >= 0) ? 1 : 0; });
    CHECK(r1.rank() == 1);
    CHECK(r1.kernel_basis().size() == 1);

    rng::Xoshiro256 gen(3);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + int(gen.below(9));
        F2Matrix m = F2Matrix::from_bits(n, n, [&](int, int) { return int(gen.coin()); });
        for (const auto& v : m.kernel_basis()) {
            auto mv = m.mul_vector(v);
            for (int b : mv) CHECK(b == 0);
        }
        CHECK(m.rank() + int(m.kernel_basis().size()) == n);
    }
}

TEST_CASE("rank equals rank of the transpose") {
    rng::Xoshiro256 gen(17);
    for (int t = 0; t < 1000; ++t) {
        int rows = 1 + int(gen.below(12)), cols = 1 + int(gen.below(12));
        F2Matrix m = F2Matrix::from_bits(rows, cols, [&](int, int) { return int(gen.coin()); });
        CHECK(m.rank() == m.transposed().rank());
    }
}

TEST_CASE("random symmetric sampling") {
    CHECK(F2Matrix::random_symmetric(0, 1).rows() == 0);
    auto a = F2Matrix::random_symmetric(8, 12345);
    auto b = F2Matrix::random_symmetric(8, 12345);
    CHECK(a == b);
    CHECK(a.symmetric());
    CHECK_FALSE(a == F2Matrix::random_symmetric(8, 54321));
}

TEST_CASE("exhaustive corank census matches the model distribution") {
    for (int n = 0; n <= 4; ++n) {
        auto expect = densities::corank_dist_chain(n);
        std::vector<long long> counts(std::size_t(n) + 1, 0);
        int bits = n * (n + 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
            F2Matrix m(n, n);
            int b = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    int v = int(mask >> b++ & 1);
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            ++counts[std::size_t(n - m.rank())];
        }
        long long total = 1LL << bits;
        for (int k = 0; k <= n; ++k)
            CHECK(densities::rat(counts[std::size_t(k)], total) == expect[std::size_t(k)]);
    }
}
