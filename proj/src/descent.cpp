#include "descent.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pellrank::redei {

namespace {

using arith::u64;
using arith::i128;

void primitivize(ConicSolution& s) {
    bigint g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(s.x), abs(s.y)), abs(s.z));
    if (g > 1) {
        s.x /= g;
        s.y /= g;
        s.z /= g;
    }
}

void check(const ConicSolution& s, i64 a, i64 b) {
    if (s.x == 0 && s.y == 0 && s.z == 0) throw std::logic_error("solve_conic: trivial solution");
    if (s.x * s.x != a * s.y * s.y + b * s.z * s.z) throw std::logic_error("solve_conic: verification failed");
}

// square root of a mod squarefree odd m (a coprime-or-not handled by caller per prime)
i64 sqrt_mod_squarefree(i64 a, i64 m) {
    i64 r = 0, mod = 1;
    for (auto& [p, e] : arith::factor_generic(m).factors) {
        if (e != 1) throw std::domain_error("sqrt_mod_squarefree: not squarefree");
        i64 rp;
        if (p == 2) {
            rp = ((a % 2) + 2) % 2;
        } else {
            i64 ap = ((a % p) + p) % p;
            rp = (ap == 0) ? 0 : arith::sqrt_mod_prime(ap, p);
        }
        // CRT
        if (mod == 1) {
            r = rp;
            mod = p;
            continue;
        }
        i64 minv = 0;
        {
            i64 aa = ((mod % p) + p) % p, bb = p, x0 = 1, x1 = 0;
            while (bb) {
                i64 q = aa / bb;
                aa -= q * bb;
                std::swap(aa, bb);
                x0 -= q * x1;
                std::swap(x0, x1);
            }
            minv = ((x0 % p) + p) % p;
        }
        i64 diff = ((rp - r) % p + p) % p;
        i64 k = i64(arith::mulmod(u64(diff), u64(minv), u64(p)));
        r = r + mod * k;
        mod *= p;
    }
    if (r > mod / 2) r -= mod;  // symmetric representative
    return r;
}

ConicSolution solve_impl(i64 a, i64 b, int depth) {
    if (depth > 128) throw std::logic_error("solve_conic: descent too deep");
    if (a == 1) return {1, 1, 0};
    if (b == 1) return {1, 0, 1};
    // |a| <= |b| for the descent step
    if (std::abs(a) > std::abs(b)) {
        ConicSolution s = solve_impl(b, a, depth + 1);
        std::swap(s.y, s.z);
        return s;
    }
    if (b == -1) {
        // x^2 + z^2 = a y^2: a > 0 sum of two squares (else no real/2-adic point)
        if (a < 0) throw std::domain_error("solve_conic: negative definite");
        auto [u, v] = arith::two_squares(a);
        return {u, 1, v};
    }
    if (a == -1) {
        if (b < 0) throw std::domain_error("solve_conic: negative definite");
        auto [u, v] = arith::two_squares(b);
        return {u, v, 1};
    }
    // find u = sqrt(a) mod |b|, |u| <= |b|/2
    i64 babs = std::abs(b);
    i64 u;
    try {
        u = sqrt_mod_squarefree(a, babs);
    } catch (const std::domain_error&) {
        throw std::domain_error("solve_conic: a is not a square mod b (pair not acceptable)");
    }
    i128 t = i128(u) * u - a;
    if (t == 0) throw std::logic_error("solve_conic: squarefree a equals u^2");
    if (t % b != 0) throw std::logic_error("solve_conic: descent congruence failed");
    i128 q = t / b;  // b * b1 * w^2 = u^2 - a  =>  q = b1 * w^2
    // strip the square part of q
    i64 qs = i64(q);
    auto [b1, w] = arith::squarefree_part(qs);
    ConicSolution s1 = solve_impl(a, b1, depth + 1);
    // (x1^2 - a y1^2)(u^2 - a) = b (b1 w z1)^2 with the norm-product identity
    ConicSolution s;
    s.x = s1.x * u + a * s1.y;
    s.y = s1.x + u * s1.y;
    s.z = b1 * w * s1.z;
    primitivize(s);
    check(s, a, b);
    return s;
}

}  // namespace

ConicSolution solve_conic(i64 a, i64 b) {
    if (a == 0 || b == 0) throw std::domain_error("solve_conic: zero coefficient");
    ConicSolution s = solve_impl(a, b, 0);
    primitivize(s);
    check(s, a, b);
    // sign normalization: x >= 0 for determinism
    if (s.x < 0) {
        s.x = -s.x;
        s.y = -s.y;
        s.z = -s.z;
    }
    return s;
}

}  // namespace pellrank::redei
