#ifndef PELLRANK_ARITH_HPP
#define PELLRANK_ARITH_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Elementary number-theoretic primitives: Kronecker/Hilbert symbols, sieves,
// factorization, continued fractions and square classes.

namespace pellrank::arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Overflow-checked 128-bit helpers. Desk-scale inputs never get close to the
// cap; a throw here means a bug, not a resource limit.
i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);
std::string to_string_i128(i128 v);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
i64 gcd64(i64 a, i64 b);
i64 isqrt64(i64 n);           // floor(sqrt(n)), exact
bool is_square64(i64 n);

bool is_prime(u64 n);         // deterministic Miller-Rabin below 2^64
u64 pollard_rho(u64 n);       // one nontrivial factor of composite n
void factor_u64(u64 n, std::vector<std::pair<u64, int>>& out);

// ---------------------------------------------------------------------------

struct Factorization {
    std::vector<std::pair<i64, int>> factors;  // primes strictly increasing

    i64 value() const;
    int omega() const { return static_cast<int>(factors.size()); }
    bool squarefree() const;
};

Factorization factor_generic(i64 n);  // trial division + rho; n >= 1

// Dense smallest-prime-factor table. Construction walks fixed-size segments;
// the table itself is held in memory, so `limit` is guarded.
class FactorSieve {
  public:
    explicit FactorSieve(i64 limit, std::size_t segment_size = (std::size_t{1} << 20),
                         i64 memory_budget = i64{1} << 28);
    i64 limit() const { return limit_; }
    i64 spf(i64 n) const;                // smallest prime factor, n in [2, limit]
    Factorization factor(i64 n) const;   // n in [1, limit]
    bool squarefree(i64 n) const;
    i64 prime_count() const;             // pi(limit)

  private:
    i64 limit_;
    std::vector<std::uint32_t> spf_;
};

// Streams factorizations of every integer in [lo, hi) using O(segment) memory.
// `fn` is called as fn(n, factors) with factors sorted ascending.
void segmented_factor_range(i64 lo, i64 hi,
                            const std::function<void(i64, const std::vector<std::pair<i64, int>>&)>& fn,
                            std::size_t segment_size = (std::size_t{1} << 20));

std::vector<i64> primes_below(i64 limit);

// ---------------------------------------------------------------------------

// An element of Q*/(Q*)^2 in canonical form sign * 2^two_exp * odd_part,
// with odd_part squarefree, odd and positive.
struct SquareClass {
    int sign = 1;        // +1 or -1
    int two_exp = 0;     // 0 or 1
    i64 odd = 1;         // squarefree odd positive

    static SquareClass from_integer(i64 n);  // n != 0, squares stripped
    static SquareClass one() { return {}; }

    i64 value() const { return sign * (i64{1} << two_exp) * odd; }
    bool is_trivial() const { return sign == 1 && two_exp == 0 && odd == 1; }
    bool even() const { return two_exp == 1; }
    bool positive() const { return sign > 0; }

    // field discriminant of Q(sqrt(this)): value() if = 1 mod 4, else 4*value()
    i64 field_discriminant() const;

    SquareClass operator*(const SquareClass& o) const;
    bool operator==(const SquareClass& o) const = default;

    std::vector<i64> odd_primes() const;   // prime factors of odd part
    bool pell_supported() const;           // every odd prime = 1 mod 4
};

// ---------------------------------------------------------------------------

int kronecker(i64 a, i64 n);  // n != 0

enum class Place : i64 { infinity = -1 };  // finite places are the prime itself, v=2 included

// Hilbert symbol (a,b)_v over Q_v; v = -1 encodes the real place.
int hilbert(i64 a, i64 b, i64 v);
int hilbert(const SquareClass& a, const SquareClass& b, i64 v);

// ---------------------------------------------------------------------------

struct ContinuedFraction {
    i64 a0 = 0;
    std::vector<i64> period;  // minimal repeating block; last entry is 2*a0
};

ContinuedFraction sqrt_continued_fraction(i64 d);  // d >= 2, not a square

bool is_fundamental_discriminant(i64 d);
bool in_pell_family(i64 d);  // positive fundamental, no prime factor = 3 mod 4
bool in_pell_family(i64 d, const FactorSieve& sieve);

// ---------------------------------------------------------------------------

// Square root of a mod odd prime p (a a QR); Tonelli-Shanks.
i64 sqrt_mod_prime(i64 a, i64 p);

// x with x^2 = n (exactly), n = u^2: used for square-part extraction
// Squarefree part: n = s * t^2 with s squarefree. Returns (s, t). n != 0.
std::pair<i64, i64> squarefree_part(i64 n);

// Two-squares decomposition a = x^2 + y^2 for a > 0 whose odd prime factors
// are all 1 mod 4. Cornacchia plus CRT descent.
std::pair<i64, i64> two_squares(i64 a);

}  // namespace pellrank::arith

#endif
