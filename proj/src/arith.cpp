#include "arith.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace pellrank::arith {

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("i128 mul overflow");
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("i128 add overflow");
    return r;
}

std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
    std::string s;
    while (u) {
        s.push_back(char('0' + int(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = m > 1 ? 1 : 0;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

i64 isqrt64(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square64(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt64(n);
    return r * r == n;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // Sufficient deterministic base set for n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if ((n & 1) == 0) return 2;
    {
        u64 r = u64(isqrt64(i64(n)));
        if (r * r == n) return r;
    }
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            if (x == y) {
                d = n;  // cycle closed without a factor; retry with another c
                break;
            }
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_u64(u64 n, std::vector<std::pair<u64, int>>& out) {
    std::vector<u64> stack;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        u64 m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_prime(m)) {
            bool merged = false;
            for (auto& [p, e] : out)
                if (p == m) {
                    ++e;
                    merged = true;
                    break;
                }
            if (!merged) out.emplace_back(m, 1);
            continue;
        }
        u64 d = pollard_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    // merge equal primes produced on separate stack branches
    std::vector<std::pair<u64, int>> merged;
    for (auto& [p, e] : out) {
        if (!merged.empty() && merged.back().first == p)
            merged.back().second += e;
        else
            merged.emplace_back(p, e);
    }
    out.swap(merged);
}

i64 Factorization::value() const {
    i64 v = 1;
    for (auto& [p, e] : factors)
        for (int i = 0; i < e; ++i) v = i64(checked_mul(v, p));
    return v;
}

bool Factorization::squarefree() const {
    for (auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

Factorization factor_generic(i64 n) {
    if (n < 1) throw std::domain_error("factor_generic: n must be positive");
    Factorization f;
    std::vector<std::pair<u64, int>> raw;
    factor_u64(u64(n), raw);
    for (auto& [p, e] : raw) f.factors.emplace_back(i64(p), e);
    return f;
}

FactorSieve::FactorSieve(i64 limit, std::size_t segment_size, i64 memory_budget) : limit_(limit) {
    if (limit < 2) throw std::domain_error("FactorSieve: limit must be >= 2");
    if (limit + 1 > memory_budget / i64(sizeof(std::uint32_t)))
        throw std::length_error("FactorSieve: limit exceeds memory budget");
    if (limit >= (i64{1} << 32)) throw std::length_error("FactorSieve: limit exceeds 32-bit spf range");
    spf_.assign(std::size_t(limit) + 1, 0);
    std::vector<i64> base = primes_below(isqrt64(limit) + 1);
    const i64 seg = i64(std::max<std::size_t>(segment_size, 1024));
    for (i64 lo = 2; lo <= limit; lo += seg) {
        i64 hi = std::min(limit + 1, lo + seg);
        for (i64 p : base) {
            if (p * p >= hi) break;
            i64 start = std::max(p * p, (lo + p - 1) / p * p);
            for (i64 m = start; m < hi; m += p)
                if (spf_[std::size_t(m)] == 0) spf_[std::size_t(m)] = std::uint32_t(p);
        }
        for (i64 m = lo; m < hi; ++m)
            if (spf_[std::size_t(m)] == 0) spf_[std::size_t(m)] = std::uint32_t(m);  // prime
    }
}

i64 FactorSieve::spf(i64 n) const {
    if (n < 2 || n > limit_) throw std::domain_error("FactorSieve::spf out of range");
    return spf_[std::size_t(n)];
}

Factorization FactorSieve::factor(i64 n) const {
    if (n < 1 || n > limit_) throw std::domain_error("FactorSieve::factor out of range");
    Factorization f;
    while (n > 1) {
        i64 p = spf_[std::size_t(n)];
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        f.factors.emplace_back(p, e);
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

bool FactorSieve::squarefree(i64 n) const { return factor(n).squarefree(); }

i64 FactorSieve::prime_count() const {
    i64 c = 0;
    for (i64 n = 2; n <= limit_; ++n)
        if (spf_[std::size_t(n)] == std::uint32_t(n)) ++c;
    return c;
}

void segmented_factor_range(i64 lo, i64 hi,
                            const std::function<void(i64, const std::vector<std::pair<i64, int>>&)>& fn,
                            std::size_t segment_size) {
    if (lo < 1) lo = 1;
    if (hi <= lo) return;
    std::vector<i64> base = primes_below(isqrt64(hi - 1) + 1);
    const i64 seg = i64(std::max<std::size_t>(segment_size, 1024));
    std::vector<i64> rem;
    std::vector<std::vector<std::pair<i64, int>>> facs;
    std::vector<std::pair<i64, int>> out;
    for (i64 s = lo; s < hi; s += seg) {
        i64 e = std::min(hi, s + seg);
        std::size_t n = std::size_t(e - s);
        rem.assign(n, 0);
        facs.assign(n, {});
        for (i64 i = s; i < e; ++i) rem[std::size_t(i - s)] = i;
        for (i64 p : base) {
            i64 start = (s + p - 1) / p * p;
            for (i64 m = start; m < e; m += p) {
                auto idx = std::size_t(m - s);
                int ex = 0;
                while (rem[idx] % p == 0) rem[idx] /= p, ++ex;
                facs[idx].emplace_back(p, ex);
            }
        }
        for (i64 i = s; i < e; ++i) {
            auto idx = std::size_t(i - s);
            out = facs[idx];
            if (rem[idx] > 1) out.emplace_back(rem[idx], 1);  // leftover prime > sqrt(hi)
            fn(i, out);
        }
    }
}

std::vector<i64> primes_below(i64 limit) {
    std::vector<i64> out;
    if (limit <= 2) return out;
    std::vector<bool> comp(std::size_t(limit), false);
    for (i64 p = 2; p < limit; ++p) {
        if (comp[std::size_t(p)]) continue;
        out.push_back(p);
        for (i64 m = p * p; m < limit; m += p) comp[std::size_t(m)] = true;
    }
    return out;
}

SquareClass SquareClass::from_integer(i64 n) {
    if (n == 0) throw std::domain_error("SquareClass: zero");
    SquareClass c;
    c.sign = n < 0 ? -1 : 1;
    i64 m = n < 0 ? -n : n;
    int v2 = 0;
    while (m % 2 == 0) m /= 2, ++v2;
    c.two_exp = v2 & 1;
    Factorization f = factor_generic(m);
    c.odd = 1;
    for (auto& [p, e] : f.factors)
        if (e & 1) c.odd = i64(checked_mul(c.odd, p));
    return c;
}

i64 SquareClass::field_discriminant() const {
    i64 v = value();
    if (v == 1) return 1;
    i64 mod4 = ((v % 4) + 4) % 4;
    return mod4 == 1 ? v : 4 * v;
}

SquareClass SquareClass::operator*(const SquareClass& o) const {
    SquareClass r;
    r.sign = sign * o.sign;
    r.two_exp = two_exp ^ o.two_exp;
    i64 g = std::gcd(odd, o.odd);
    r.odd = i64(checked_mul(odd / g, o.odd / g));
    return r;
}

std::vector<i64> SquareClass::odd_primes() const {
    std::vector<i64> out;
    for (auto& [p, e] : factor_generic(odd).factors) out.push_back(p);
    return out;
}

bool SquareClass::pell_supported() const {
    for (i64 p : odd_primes())
        if (p % 4 == 3) return false;
    return true;
}

int kronecker(i64 a, i64 n) {
    if (n == 0) throw std::domain_error("kronecker: n = 0");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v2 = 0;
    while (n % 2 == 0) n /= 2, ++v2;
    if (v2) {
        if (a % 2 == 0) return 0;
        i64 am8 = ((a % 8) + 8) % 8;
        if ((v2 & 1) && (am8 == 3 || am8 == 5)) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        int v = 0;
        while (a % 2 == 0) a /= 2, ++v;
        if (v & 1) {
            i64 nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) result = -result;
        }
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

// local exponents for the symbol at 2
int eps2(i64 u) { return int((((u - 1) / 2) % 2 + 2) % 2); }       // (u-1)/2 mod 2, u odd
int omega2(i64 u) { return int((((u * u - 1) / 8) % 2 + 2) % 2); } // (u^2-1)/8 mod 2, u odd

}  // namespace

int hilbert(i64 a, i64 b, i64 v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert: zero argument");
    if (v == i64(Place::infinity)) return (a < 0 && b < 0) ? -1 : 1;
    if (v < 2) throw std::domain_error("hilbert: bad place");
    if (v == 2) {
        int alpha = 0, beta = 0;
        while (a % 2 == 0) a /= 2, ++alpha;
        while (b % 2 == 0) b /= 2, ++beta;
        // omega overflows for |u| near 2^32; reduce mod 16 first
        i64 u = ((a % 16) + 16) % 16, w = ((b % 16) + 16) % 16;
        int e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
        return (e & 1) ? -1 : 1;
    }
    if (!is_prime(u64(v))) throw std::domain_error("hilbert: place not prime");
    int alpha = 0, beta = 0;
    while (a % v == 0) a /= v, ++alpha;
    while (b % v == 0) b /= v, ++beta;
    int r = 1;
    if ((alpha & 1) && (beta & 1) && ((v % 4) == 3)) r = -r;
    if (beta & 1) r *= kronecker(a, v);
    if (alpha & 1) r *= kronecker(b, v);
    return r;
}

int hilbert(const SquareClass& a, const SquareClass& b, i64 v) {
    return hilbert(a.value(), b.value(), v);
}

ContinuedFraction sqrt_continued_fraction(i64 d) {
    if (d < 2) throw std::domain_error("sqrt_continued_fraction: d < 2");
    i64 a0 = isqrt64(d);
    if (a0 * a0 == d) throw std::domain_error("sqrt_continued_fraction: perfect square");
    ContinuedFraction cf;
    cf.a0 = a0;
    // (m, q) recurrence: m' = q*floor((a0+m)/q) - m, q' = (d - m'^2)/q.
    i64 m = 0, q = 1;
    while (true) {
        m = q * ((a0 + m) / q) - m;
        q = (d - m * m) / q;
        i64 a = (a0 + m) / q;
        cf.period.push_back(a);
        if (q == 1) break;  // period of sqrt(d) ends at the first q = 1
    }
    return cf;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 1) return false;
    i64 mod4 = ((d % 4) + 4) % 4;
    if (mod4 == 1) {
        i64 m = d < 0 ? -d : d;
        return factor_generic(m).squarefree();
    }
    if (mod4 != 0) return false;
    i64 m = d / 4;
    i64 mm4 = ((m % 4) + 4) % 4;
    if (mm4 != 2 && mm4 != 3) return false;
    return factor_generic(m < 0 ? -m : m).squarefree();
}

bool in_pell_family(i64 d) {
    if (d <= 0 || !is_fundamental_discriminant(d)) return false;
    for (auto& [p, e] : factor_generic(d).factors)
        if (p % 4 == 3) return false;
    return true;
}

bool in_pell_family(i64 d, const FactorSieve& sieve) {
    if (d <= 0 || d > sieve.limit()) return in_pell_family(d);
    i64 mod4 = d % 4;
    Factorization f = sieve.factor(d);
    if (mod4 == 1) {
        if (!f.squarefree()) return false;
    } else if (mod4 == 0) {
        i64 m = d / 4;
        i64 mm4 = m % 4;
        if (mm4 != 2 && mm4 != 3) return false;
        if (!sieve.factor(m).squarefree()) return false;
    } else {
        return false;
    }
    for (auto& [p, e] : f.factors)
        if (p % 4 == 3) return false;
    return true;
}

i64 sqrt_mod_prime(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (p == 2) return a;
    if (a == 0) return 0;
    if (kronecker(a, p) != 1) throw std::domain_error("sqrt_mod_prime: not a QR");
    if (p % 4 == 3) return i64(powmod(u64(a), u64((p + 1) / 4), u64(p)));
    // Tonelli-Shanks
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    i64 z = 2;
    while (kronecker(z, p) != -1) ++z;
    u64 m = u64(s);
    u64 c = powmod(u64(z), u64(q), u64(p));
    u64 t = powmod(u64(a), u64(q), u64(p));
    u64 r = powmod(u64(a), u64((q + 1) / 2), u64(p));
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) tt = mulmod(tt, tt, u64(p)), ++i;
        u64 b = c;
        for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, u64(p));
        m = i;
        c = mulmod(b, b, u64(p));
        t = mulmod(t, c, u64(p));
        r = mulmod(r, b, u64(p));
    }
    return i64(r);
}

std::pair<i64, i64> squarefree_part(i64 n) {
    if (n == 0) throw std::domain_error("squarefree_part: zero");
    int sign = n < 0 ? -1 : 1;
    Factorization f = factor_generic(n < 0 ? -n : n);
    i64 s = sign, t = 1;
    for (auto& [p, e] : f.factors) {
        if (e & 1) s = i64(checked_mul(s, p));
        for (int i = 0; i < e / 2; ++i) t = i64(checked_mul(t, p));
    }
    return {s, t};
}

std::pair<i64, i64> two_squares(i64 a) {
    if (a <= 0) throw std::domain_error("two_squares: a <= 0");
    if (a == 1) return {1, 0};
    if (a == 2) return {1, 1};
    Factorization f = factor_generic(a);
    // peel a factor of 2: (x^2+y^2)*2 = (x+y)^2 + (x-y)^2
    if (a % 2 == 0) {
        auto [x, y] = two_squares(a / 2);
        return {x + y, x >= y ? x - y : y - x};
    }
    for (auto& [p, e] : f.factors)
        if (p % 4 == 3 && (e & 1)) throw std::domain_error("two_squares: not a sum of two squares");
    // Cornacchia on odd a: r = sqrt(-1) mod a via CRT over the prime factors.
    auto inv_mod = [](i64 x, i64 m) {
        i64 aa = ((x % m) + m) % m, bb = m, u0 = 1, u1 = 0;
        while (bb) {
            i64 qq = aa / bb;
            aa -= qq * bb;
            std::swap(aa, bb);
            u0 -= qq * u1;
            std::swap(u0, u1);
        }
        return ((u0 % m) + m) % m;
    };
    i64 r = 0;
    {
        i64 mod = 1;
        for (auto& [p, e] : f.factors) {
            if (e != 1) throw std::domain_error("two_squares: expected squarefree odd input");
            i64 rp = sqrt_mod_prime(-1, p);
            i64 diff = ((rp - r) % p + p) % p;
            i64 k = i64(mulmod(u64(diff), u64(inv_mod(mod, p)), u64(p)));
            r = r + i64(checked_mul(mod, k));
            mod = i64(checked_mul(mod, p));
            r %= mod;
        }
        if (r > mod / 2) r = mod - r;
        u64 rr = mulmod(static_cast<u64>(r), static_cast<u64>(r), static_cast<u64>(a));
        if (i64(rr) != a - 1) throw std::logic_error("two_squares: CRT sqrt(-1) failed");
    }
    // Euclidean descent
    i64 x = a, y = r;
    i64 bound = isqrt64(a);
    while (y > bound) {
        i64 t = x % y;
        x = y;
        y = t;
    }
    i64 rem2 = a - y * y;
    i64 other = isqrt64(rem2);
    if (other * other != rem2) throw std::logic_error("two_squares: descent failed");
    return {y, other};
}

}  // namespace pellrank::arith
