#include "quadforms.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pellrank::quadforms {

namespace {

i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// ax + by = gcd; returns {gcd, x, y}
std::array<i64, 3> xgcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
        old_t -= q * t;
        std::swap(old_t, t);
    }
    return {old_r, old_s, old_t};
}

TwoSylow sylow_from_sizes(const std::vector<std::size_t>& sizes) {
    std::vector<int> rk;
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        if (sizes[k - 1] % sizes[k] != 0) throw std::logic_error("two_sylow: bad size chain");
        std::size_t ratio = sizes[k - 1] / sizes[k];
        int r = 0;
        while ((std::size_t{1} << r) < ratio) ++r;
        if ((std::size_t{1} << r) != ratio) throw std::logic_error("two_sylow: non-2-power ratio");
        rk.push_back(r);
    }
    rk.push_back(0);
    TwoSylow s;
    for (std::size_t k = 0; k + 1 < rk.size(); ++k) {
        int count = rk[k] - rk[k + 1];
        if (count < 0) throw std::logic_error("two_sylow: rank sequence increases");
        for (int i = 0; i < count; ++i) s.cyclic_orders.push_back(i64{1} << (k + 1));
    }
    std::sort(s.cyclic_orders.begin(), s.cyclic_orders.end());
    return s;
}

}  // namespace

TwoSylow two_sylow_of_table(int n, int id, const std::function<int(int, int)>& compose) {
    (void)id;
    std::set<int> cur;
    for (int i = 0; i < n; ++i) cur.insert(i);
    std::vector<std::size_t> sizes{cur.size()};
    while (true) {
        std::set<int> next;
        for (int x : cur) next.insert(compose(x, x));
        if (next == cur) break;  // reached the odd part
        cur.swap(next);
        sizes.push_back(cur.size());
    }
    return sylow_from_sizes(sizes);
}

bool ClassGroup::is_reduced(const QuadForm& f) const {
    if (f.b <= 0) return false;
    if (i128(f.b) * f.b >= i128(d_)) return false;  // b < sqrt(D)
    i64 aa = f.a < 0 ? -f.a : f.a;
    // b > |sqrt(D) - 2|a||  <=>  (D + 4a^2 - b^2)^2 < 16 a^2 D
    i128 lhs = i128(d_) + 4 * i128(aa) * aa - i128(f.b) * f.b;
    if (lhs < 0) return true;
    return lhs * lhs < 16 * i128(aa) * aa * i128(d_);
}

QuadForm ClassGroup::rho(QuadForm f) const {
    i64 cabs = f.c < 0 ? -f.c : f.c;
    if (cabs == 0) throw std::logic_error("rho: degenerate form");
    i64 m = 2 * cabs;
    i64 t = ((-f.b) % m + m) % m;
    i64 bb;
    if (cabs > sqrt_d_) {
        bb = (t <= cabs) ? t : t - m;  // -|c| < bb <= |c|
    } else {
        bb = t + m * floor_div(sqrt_d_ - t, m);  // sqrt(D) - 2|c| < bb <= floor(sqrt(D))
    }
    i128 num = i128(bb) * bb - d_;
    i128 den = 4 * i128(f.c);
    if (num % den != 0) throw std::logic_error("rho: non-integral continuation");
    return QuadForm{f.c, bb, i64(num / den)};
}

QuadForm ClassGroup::reduce(QuadForm f) const {
    if (i128(f.b) * f.b - 4 * i128(f.a) * f.c != i128(d_)) throw std::domain_error("reduce: wrong discriminant");
    int guard = 0;
    while (!is_reduced(f)) {
        f = rho(f);
        if (++guard > 200000) throw std::logic_error("reduce: no convergence");
    }
    return f;
}

void ClassGroup::enumerate_classes() {
    std::vector<QuadForm> all;
    for (i64 aa = 1; aa <= sqrt_d_; ++aa) {
        i64 b = sqrt_d_;
        if (((b - d_) % 2 + 2) % 2 != 0) --b;  // b = D mod 2
        for (; b >= 1; b -= 2) {
            i128 bsq = i128(b) * b;
            if (bsq >= i128(d_)) continue;
            i128 lhs = i128(d_) + 4 * i128(aa) * aa - bsq;
            if (lhs >= 0 && lhs * lhs >= 16 * i128(aa) * aa * i128(d_)) break;  // below the window
            i128 num = bsq - d_;
            if (num % (4 * i128(aa)) != 0) continue;
            i64 c_pos = i64(num / (4 * i128(aa)));
            all.push_back(QuadForm{aa, b, c_pos});
            all.push_back(QuadForm{-aa, b, -c_pos});
        }
    }
    std::set<QuadForm> seen;
    for (const QuadForm& f : all) {
        if (seen.count(f)) continue;
        std::vector<QuadForm> cycle;
        QuadForm g = f;
        do {
            cycle.push_back(g);
            seen.insert(g);
            g = rho(g);
            if (!is_reduced(g)) throw std::logic_error("rho left the reduced set");
        } while (!(g == f));
        QuadForm canon = *std::min_element(cycle.begin(), cycle.end());
        int idx = int(reps_.size());
        reps_.push_back(canon);
        for (const QuadForm& h : cycle) class_index_[h] = idx;
    }
}

ClassGroup::ClassGroup(i64 d, i64 oracle_bound) : d_(d) {
    if (d > oracle_bound) throw std::length_error("ClassGroup: discriminant above oracle bound");
    if (d <= 0 || !arith::is_fundamental_discriminant(d))
        throw std::domain_error("ClassGroup: not a positive fundamental discriminant");
    sqrt_d_ = arith::isqrt64(d);
    enumerate_classes();

    i64 b0 = sqrt_d_;
    if (((b0 - d_) % 2 + 2) % 2 != 0) --b0;
    QuadForm principal{1, b0, i64((i128(b0) * b0 - d_) / 4)};
    identity_ = class_of(principal);
    QuadForm minus{-1, b0, i64((i128(b0) * b0 - d_) / -4)};
    sign_class_ = class_of(minus);
}

int ClassGroup::class_of(QuadForm f) const {
    QuadForm r = reduce(f);
    auto it = class_index_.find(r);
    if (it == class_index_.end()) throw std::logic_error("class_of: reduced form not in table");
    return it->second;
}

int ClassGroup::compose(int i, int j) const {
    QuadForm f1 = reps_[std::size_t(i)];
    QuadForm f2 = reps_[std::size_t(j)];
    const i64 a1 = f1.a;
    QuadForm g2 = f2;
    if (std::gcd(f2.a, a1) != 1) {
        // replace f2 by an equivalent form whose leading coefficient is
        // coprime to a1 (primitive forms represent such values)
        bool found = false;
        for (i64 y = 0; y <= 60 && !found; ++y) {
            for (i64 x = (y == 0 ? 1 : -60); x <= 60 && !found; ++x) {
                if (std::gcd(x, y) != 1) continue;
                i128 v = i128(f2.a) * x * x + i128(f2.b) * x * y + i128(f2.c) * y * y;
                if (v == 0) continue;
                i64 vm = i64(v % a1);
                if (std::gcd(vm < 0 ? -vm : vm, a1 < 0 ? -a1 : a1) != 1) continue;
                auto [g, u0, v0] = xgcd(x, y);
                if (g == -1) {
                    g = 1;
                    u0 = -u0;
                    v0 = -v0;
                }
                if (g != 1) continue;
                // unimodular [[x, -v0], [y, u0]]: det = x*u0 + y*v0 = 1
                i64 z = -v0, w = u0;
                i128 a_new = v;
                i128 b_new = 2 * (i128(f2.a) * x * z + i128(f2.c) * y * w) + i128(f2.b) * (i128(x) * w + i128(y) * z);
                i128 c_new = i128(f2.a) * z * z + i128(f2.b) * z * w + i128(f2.c) * w * w;
                g2 = QuadForm{i64(a_new), i64(b_new), i64(c_new)};
                found = true;
            }
        }
        if (!found) throw std::logic_error("compose: no coprime representation found");
    }
    // Dirichlet composition for gcd(a1, a2) = 1: b3 = b1 (2a1), b3 = b2 (2a2)
    const i64 a2 = g2.a;
    i128 a3 = i128(a1) * a2;
    i64 g = std::gcd(2 * a1, 2 * a2);  // = 2
    if ((g2.b - f1.b) % g != 0) throw std::logic_error("compose: CRT parity mismatch");
    i64 m2g = (2 * a2) / g;
    if (m2g < 0) m2g = -m2g;
    i64 t = 0;
    if (m2g > 1) {
        i64 lhs = ((2 * a1) / g) % m2g;
        auto [gg, inv, dummy] = xgcd(((lhs % m2g) + m2g) % m2g, m2g);
        (void)dummy;
        if (gg != 1 && gg != -1) throw std::logic_error("compose: moduli not coprime after gcd");
        i64 inv_pos = ((inv % m2g) + m2g) % m2g;
        i64 rhs = (((g2.b - f1.b) / g) % m2g + m2g) % m2g;
        t = i64((i128(rhs) * inv_pos) % m2g);
    }
    i128 b3 = i128(f1.b) + i128(2 * a1) * t;
    i128 mod = 2 * a3;
    if (mod < 0) mod = -mod;
    if (mod != 0) {
        b3 %= mod;
        if (b3 < 0) b3 += mod;
    }
    i128 num = b3 * b3 - d_;
    if (num % (4 * a3) != 0) throw std::logic_error("compose: c3 not integral");
    QuadForm f3{i64(a3), i64(b3), i64(num / (4 * a3))};
    return class_of(f3);
}

i64 ClassGroup::class_number_ordinary() const {
    return sign_class_ == identity_ ? class_number() : class_number() / 2;
}

int ClassGroup::ramified_class(i64 p) const {
    if (d_ % p != 0) throw std::domain_error("ramified_class: p does not divide D");
    if (p == 2) {
        i64 m = d_ / 8;
        return class_of(QuadForm{2, 4, 2 - m});
    }
    if (d_ % 2 != 0) return class_of(QuadForm{p, p, i64((i128(p) * p - d_) / (4 * i128(p)))});
    i64 m = d_ / 8;
    return class_of(QuadForm{p, 2 * p, p - 2 * (m / p)});
}

int ClassGroup::b_class(i64 b_signed) const {
    if (b_signed == 0) throw std::domain_error("b_class: zero");
    int cls = identity_;
    i64 b = b_signed < 0 ? -b_signed : b_signed;
    for (auto& [p, e] : arith::factor_generic(b).factors) {
        if (e != 1) throw std::domain_error("b_class: b not squarefree");
        cls = compose(cls, ramified_class(p));
    }
    if (b_signed < 0) cls = compose(cls, sign_class_);
    return cls;
}

TwoSylow ClassGroup::two_sylow() const {
    return two_sylow_of_table(num_classes(), identity_, [this](int i, int j) { return compose(i, j); });
}

TwoSylow ClassGroup::two_sylow_ordinary() const {
    const std::size_t tsize = sign_class_ == identity_ ? 1 : 2;
    std::set<int> cur;
    for (int i = 0; i < num_classes(); ++i) cur.insert(i);
    std::vector<std::size_t> sizes;
    while (true) {
        std::set<int> sat;
        for (int x : cur) {
            sat.insert(x);
            sat.insert(compose(x, sign_class_));
        }
        sizes.push_back(sat.size() / tsize);
        std::set<int> next;
        for (int x : cur) next.insert(compose(x, x));
        if (next == cur) break;
        cur.swap(next);
    }
    return sylow_from_sizes(sizes);
}

TwoPartProfile ClassGroup::profile() const {
    TwoPartProfile p;
    p.d = d_;
    TwoSylow narrow = two_sylow();
    TwoSylow ordinary = two_sylow_ordinary();
    p.rk2 = narrow.rank_pow(1);
    p.rk4_narrow = narrow.rank_pow(2);
    p.rk8_narrow = narrow.rank_pow(3);
    p.rk4_ordinary = ordinary.rank_pow(2);
    p.neg_pell = neg_pell();
    return p;
}

bool ClassGroup::in_two_cl(int idx) const {
    for (int x = 0; x < num_classes(); ++x)
        if (compose(x, x) == idx) return true;
    return false;
}

bool ClassGroup::in_four_cl(int idx) const {
    for (int x = 0; x < num_classes(); ++x) {
        int x2 = compose(x, x);
        if (compose(x2, x2) == idx) return true;
    }
    return false;
}

namespace {

struct SylowBasis {
    std::vector<int> gens;
    std::vector<i64> orders;
    std::map<int, std::vector<i64>> dlog;  // sylow element -> exponent vector
};

SylowBasis sylow_basis(int n, int id, const std::function<int(int, int)>& compose) {
    auto power = [&](int x, i64 e) {
        int acc = id, base = x;
        while (e) {
            if (e & 1) acc = compose(acc, base);
            base = compose(base, base);
            e >>= 1;
        }
        return acc;
    };
    i64 odd = n;
    while (odd % 2 == 0) odd /= 2;
    std::set<int> sylow;
    for (int x = 0; x < n; ++x) sylow.insert(power(x, odd));
    SylowBasis b;
    std::set<int> span{id};
    std::map<int, std::vector<i64>> span_dlog{{id, {}}};
    while (span.size() < sylow.size()) {
        int best = -1;
        i64 best_q = 0;
        for (int x : sylow) {
            if (span.count(x)) continue;
            i64 q = 1;
            int cur = x;
            while (!span.count(cur)) {
                cur = compose(cur, cur);
                q *= 2;
            }
            if (q > best_q) {
                best_q = q;
                best = x;
            }
        }
        if (best < 0) throw std::logic_error("sylow_basis: no generator found");
        // adjust so <g> meets the current span trivially
        int g = best;
        i64 q = best_q;
        std::vector<i64> he = span_dlog.at(power(g, q));
        for (std::size_t i = 0; i < he.size(); ++i) {
            if (he[i] % q != 0) throw std::logic_error("sylow_basis: direct-summand repair impossible");
            i64 corr = ((b.orders[i] - he[i] / q) % b.orders[i] + b.orders[i]) % b.orders[i];
            g = compose(g, power(b.gens[i], corr));
        }
        if (power(g, q) != id) throw std::logic_error("sylow_basis: repair failed");
        b.gens.push_back(g);
        b.orders.push_back(q);
        span.clear();
        span_dlog.clear();
        std::vector<i64> exps(b.gens.size(), 0);
        while (true) {
            int val = id;
            for (std::size_t i = 0; i < b.gens.size(); ++i) val = compose(val, power(b.gens[i], exps[i]));
            if (span.insert(val).second) span_dlog[val] = exps;
            std::size_t i = 0;
            for (; i < exps.size(); ++i) {
                if (++exps[i] < b.orders[i]) break;
                exps[i] = 0;
            }
            if (i == exps.size()) break;
        }
    }
    b.dlog = span_dlog;
    return b;
}

}  // namespace

int ClassGroup::artin_pairing(i64 a_pos, i64 b_signed) const {
    if (a_pos <= 0 || d_ % a_pos != 0) throw std::domain_error("artin_pairing: a must be a positive divisor of D");
    auto comp = [this](int i, int j) { return compose(i, j); };
    SylowBasis basis = sylow_basis(num_classes(), identity_, comp);
    auto chi_bit = [&](int cls) {
        // genus character chi_a: (a | n) for any primitively represented n
        // coprime to 2D
        const QuadForm& f = reps_[std::size_t(cls)];
        for (i64 y = 0; y <= 50; ++y)
            for (i64 x = (y == 0 ? 1 : -50); x <= 50; ++x) {
                if (std::gcd(x, y) != 1) continue;
                i128 v = i128(f.a) * x * x + i128(f.b) * x * y + i128(f.c) * y * y;
                if (v == 0) continue;
                i64 vv = i64(v < 0 ? -v : v);
                if (std::gcd(vv, 2 * d_) != 1) continue;
                return arith::kronecker(a_pos, vv) == 1 ? 0 : 1;
            }
        throw std::logic_error("artin_pairing: no coprime represented value");
    };
    std::vector<i64> psi(basis.gens.size(), 0);
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
        if (chi_bit(basis.gens[i])) {
            if (basis.orders[i] < 4) throw std::domain_error("artin_pairing: chi_a not in 2*CL^dual[4]");
            psi[i] = 1;
        }
    }
    auto power = [&](int x, i64 e) {
        int acc = identity_, base = x;
        while (e) {
            if (e & 1) acc = compose(acc, base);
            base = compose(base, base);
            e >>= 1;
        }
        return acc;
    };
    i64 odd = class_number();
    while (odd % 2 == 0) odd /= 2;
    i64 two_part = class_number() / odd;
    i64 inv_odd = 1;
    while (two_part > 1 && (odd * inv_odd) % two_part != 1) ++inv_odd;
    int b2 = power(b_class(b_signed), odd * inv_odd);  // 2-primary component
    auto it = basis.dlog.find(b2);
    if (it == basis.dlog.end()) throw std::logic_error("artin_pairing: projection missed the sylow span");
    i64 val = 0;
    for (std::size_t i = 0; i < it->second.size(); ++i) val += psi[i] * it->second[i];
    val %= 4;
    if (val % 2 != 0) throw std::domain_error("artin_pairing: B_D(b) not in 2*CL+[4]");
    return int((val / 2) % 2);
}

}  // namespace pellrank::quadforms
