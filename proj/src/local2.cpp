#include "local2.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <stdexcept>

namespace pellrank::local2 {

namespace {

using rat = boost::multiprecision::cpp_rational;

int v2_of(const bigint& n) {
    if (n == 0) throw std::domain_error("v2 of zero");
    return int(boost::multiprecision::lsb(n < 0 ? bigint(-n) : n));
}

int unit8_of(const bigint& n) {
    bigint m = n / (bigint(1) << v2_of(n));
    int r = int(m % 8);
    return ((r % 8) + 8) % 8;
}

bigint inv_mod_pow2(bigint u, int bits) {
    bigint mask = (bigint(1) << bits) - 1;
    u &= mask;
    if ((u & 1) == 0) throw std::domain_error("inv_mod_pow2: even");
    bigint x = 1;
    for (int k = 1; k < bits; k *= 2) x = (x * (2 - ((u * x) & mask))) & mask;
    return x & mask;
}

// 2-adic sqrt of u = 1 mod 8 to the requested precision
bigint sqrt_mod_pow2(const bigint& u, int bits) {
    if ((u & 7) != 1) throw std::domain_error("sqrt_mod_pow2: not 1 mod 8");
    bigint s = 1;
    for (int k = 3; k < bits; ++k) {
        bigint diff = (s * s - u) & ((bigint(1) << (k + 1)) - 1);
        if (diff != 0 && boost::multiprecision::lsb(diff) == unsigned(k)) s += bigint(1) << (k - 1);
    }
    return s & ((bigint(1) << bits) - 1);
}

bool is_class5(i64 u) {
    bigint b(u);
    return (v2_of(b) & 1) == 0 && unit8_of(b) == 5;
}

// ---------------------------------------------------------------------------
// Field spec Q(s1, s2), s_i^2 = d_i (d2 = 0 for quadratic). The 2-maximal
// order basis is held as exact rational rows over monomials {1, s1, s2, s1s2}.

struct FieldSpec {
    int deg = 0;
    i64 d1 = 0, d2 = 0;
    int e = 1, f = 1;
    std::array<std::array<rat, 4>, 4> basis{};
    std::array<rat, 4> pi{};

    std::vector<int> mono_idx() const {
        if (deg == 2) return {0, 1};
        return {0, 1, 2, 3};
    }

    std::array<rat, 4> mul_monomial(const std::array<rat, 4>& u, const std::array<rat, 4>& v) const {
        std::array<rat, 4> out{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                rat c = u[std::size_t(i)] * v[std::size_t(j)];
                if (c == 0) continue;
                int a = std::min(i, j), b = std::max(i, j);
                if (a == 0)
                    out[std::size_t(b)] += c;
                else if (a == 1 && b == 1)
                    out[0] += c * d1;
                else if (a == 1 && b == 2)
                    out[3] += c;
                else if (a == 1 && b == 3)
                    out[2] += c * d1;
                else if (a == 2 && b == 2)
                    out[0] += c * d2;
                else if (a == 2 && b == 3)
                    out[1] += c * d2;
                else
                    out[0] += c * d1 * d2;
            }
        return out;
    }

    // solve sum_k x_k * basis_k = target (coordinates over the order basis)
    std::vector<rat> solve_coords(const std::array<rat, 4>& target) const {
        auto idx = mono_idx();
        int n = deg;
        std::vector<std::vector<rat>> A(std::size_t(n), std::vector<rat>(std::size_t(n) + 1));
        for (int r = 0; r < n; ++r) {
            for (int k = 0; k < n; ++k) A[std::size_t(r)][std::size_t(k)] = basis[std::size_t(k)][std::size_t(idx[std::size_t(r)])];
            A[std::size_t(r)][std::size_t(n)] = target[std::size_t(idx[std::size_t(r)])];
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (A[std::size_t(r)][std::size_t(col)] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) throw std::logic_error("solve_coords: singular basis");
            std::swap(A[std::size_t(piv)], A[std::size_t(col)]);
            for (int r = 0; r < n; ++r) {
                if (r == col || A[std::size_t(r)][std::size_t(col)] == 0) continue;
                rat fct = A[std::size_t(r)][std::size_t(col)] / A[std::size_t(col)][std::size_t(col)];
                for (int cc = col; cc <= n; ++cc) A[std::size_t(r)][std::size_t(cc)] -= fct * A[std::size_t(col)][std::size_t(cc)];
            }
        }
        const std::size_t un = std::size_t(n);
        std::vector<rat> out(un);
        for (int k = 0; k < n; ++k) out[std::size_t(k)] = A[std::size_t(k)][std::size_t(n)] / A[std::size_t(k)][std::size_t(k)];
        return out;
    }

    std::vector<rat> charpoly(const std::array<rat, 4>& v) const {
        auto idx = mono_idx();
        int n = deg;
        const std::size_t un = std::size_t(n);
        std::vector<std::vector<rat>> M(un, std::vector<rat>(un));
        for (int j = 0; j < n; ++j) {
            std::array<rat, 4> ej{};
            ej[std::size_t(idx[std::size_t(j)])] = 1;
            auto col = mul_monomial(v, ej);
            for (int i = 0; i < n; ++i) M[std::size_t(i)][std::size_t(j)] = col[std::size_t(idx[std::size_t(i)])];
        }
        std::vector<std::vector<rat>> Mk = M;
        std::vector<rat> c(std::size_t(n) + 1);
        c[0] = 1;
        for (int k = 1; k <= n; ++k) {
            if (k > 1) {
                std::vector<std::vector<rat>> t = Mk;
                for (int i = 0; i < n; ++i) t[std::size_t(i)][std::size_t(i)] += c[std::size_t(k - 1)];
                std::vector<std::vector<rat>> nm(un, std::vector<rat>(un));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        rat s = 0;
                        for (int l = 0; l < n; ++l) s += M[std::size_t(i)][std::size_t(l)] * t[std::size_t(l)][std::size_t(j)];
                        nm[std::size_t(i)][std::size_t(j)] = s;
                    }
                Mk = nm;
            }
            rat tr = 0;
            for (int i = 0; i < n; ++i) tr += Mk[std::size_t(i)][std::size_t(i)];
            c[std::size_t(k)] = -tr / k;
        }
        return c;
    }

    bool two_integral(const std::array<rat, 4>& v) const {
        for (const rat& cf : charpoly(v))
            if ((boost::multiprecision::denominator(cf) & 1) == 0) return false;
        return true;
    }

    rat norm_exact(const std::array<rat, 4>& v) const {
        auto c = charpoly(v);
        rat n = c.back();
        return (deg % 2 == 0) ? n : -n;
    }
};

void saturate(FieldSpec& F) {
    int n = F.deg;
    if (n < 4) return;  // quadratic bases below are already 2-maximal
    bool changed = true;
    while (changed) {
        changed = false;
        for (unsigned mask = 1; mask < (1u << n) && !changed; ++mask) {
            std::array<rat, 4> v{};
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1)
                    for (int j = 0; j < 4; ++j) v[std::size_t(j)] += F.basis[std::size_t(i)][std::size_t(j)];
            for (int j = 0; j < 4; ++j) v[std::size_t(j)] /= 2;
            if (!F.two_integral(v)) continue;
            auto xs = F.solve_coords(v);
            int swap_i = -1;
            for (int i = 0; i < n; ++i)
                if ((boost::multiprecision::denominator(xs[std::size_t(i)]) & 1) == 0) swap_i = i;
            if (swap_i < 0) continue;  // v already in the lattice
            F.basis[std::size_t(swap_i)] = v;
            changed = true;
        }
    }
}

FieldSpec make_field(i64 d1, i64 d2) {
    FieldSpec F;
    F.d1 = d1;
    F.d2 = d2;
    F.deg = d2 == 0 ? 2 : 4;
    for (auto& row : F.basis) row.fill(rat(0));
    F.basis[0][0] = 1;
    if (((d1 % 4) + 4) % 4 == 1) {
        F.basis[1][0] = rat(1, 2);
        F.basis[1][1] = rat(1, 2);
    } else {
        F.basis[1][1] = 1;
    }
    if (F.deg == 4) {
        if (((d2 % 4) + 4) % 4 == 1) {
            F.basis[2][0] = rat(1, 2);
            F.basis[2][2] = rat(1, 2);
        } else {
            F.basis[2][2] = 1;
        }
        F.basis[3] = F.mul_monomial(F.basis[1], F.basis[2]);
        saturate(F);
    }
    bool has5 = is_class5(d1);
    if (F.deg == 4) has5 = has5 || is_class5(d2) || is_class5(d1 * d2);
    F.f = has5 ? 2 : 1;
    F.e = F.deg / F.f;
    if (F.e == 1) {
        F.pi.fill(rat(0));
        F.pi[0] = 2;
    } else {
        bool found = false;
        for (unsigned mask = 1; mask < (2u << F.deg) && !found; ++mask) {
            std::array<rat, 4> cand{};
            for (int i = 0; i < F.deg; ++i)
                if (mask >> i & 1)
                    for (int j = 0; j < 4; ++j) cand[std::size_t(j)] += F.basis[std::size_t(i)][std::size_t(j)];
            if (mask >> F.deg & 1) cand[0] += 1;  // allow +1 offsets
            rat nm = F.norm_exact(cand);
            if (nm == 0) continue;
            int v = v2_of(boost::multiprecision::numerator(nm)) - v2_of(boost::multiprecision::denominator(nm));
            if (v == F.f) {
                F.pi = cand;
                found = true;
            }
        }
        if (!found) throw std::logic_error("make_field: no uniformizer found");
    }
    return F;
}

const FieldSpec& field_cache(i64 d1, i64 d2) {
    thread_local std::map<std::pair<i64, i64>, FieldSpec> cache;
    auto key = std::make_pair(d1, d2);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_field(d1, d2)).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// O/2^B with integer structure constants and the monomial->order basis
// change (both integral for an order containing the monomials).

struct Ring {
    int deg = 0, e = 1, f = 1, B = 0;
    bigint mask;
    bigint c[4][4][4];
    bigint inv[4][4];  // column j: order coords of monomial j
    std::array<bigint, 4> pi;

    using Elem = std::array<bigint, 4>;

    bigint red(const bigint& x) const { return ((x % (mask + 1)) + (mask + 1)) & mask; }

    Elem mul(const Elem& u, const Elem& v) const {
        Elem out{};
        for (int i = 0; i < deg; ++i) {
            if (u[std::size_t(i)] == 0) continue;
            for (int j = 0; j < deg; ++j) {
                if (v[std::size_t(j)] == 0) continue;
                bigint uv = (u[std::size_t(i)] * v[std::size_t(j)]) & mask;
                for (int k = 0; k < deg; ++k)
                    if (c[i][j][k] != 0) out[std::size_t(k)] = (out[std::size_t(k)] + uv * c[i][j][k]) & mask;
            }
        }
        return out;
    }

    Elem sub(const Elem& u, const Elem& v) const {
        Elem out{};
        for (int k = 0; k < deg; ++k) out[std::size_t(k)] = (u[std::size_t(k)] - v[std::size_t(k)]) & mask;
        return out;
    }

    Elem pow(Elem base, long long ee) const {
        Elem acc{};
        acc[0] = 1;
        while (ee > 0) {
            if (ee & 1) acc = mul(acc, base);
            base = mul(base, base);
            ee >>= 1;
        }
        return acc;
    }

    Elem from_monomial(const std::array<bigint, 4>& mono) const {
        Elem out{};
        for (int k = 0; k < deg; ++k) {
            bigint s = 0;
            for (int j = 0; j < deg; ++j) s += inv[k][j] * mono[std::size_t(j)];
            out[std::size_t(k)] = red(s);
        }
        return out;
    }

    bigint norm(const Elem& u) const {
        std::array<std::array<bigint, 4>, 4> M{};
        for (int j = 0; j < deg; ++j) {
            Elem ej{};
            ej[std::size_t(j)] = 1;
            Elem col = mul(u, ej);
            for (int i = 0; i < deg; ++i) M[std::size_t(i)][std::size_t(j)] = col[std::size_t(i)];
        }
        if (deg == 1) return M[0][0];
        if (deg == 2) return (M[0][0] * M[1][1] - M[0][1] * M[1][0]) & mask;
        auto m3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
            return M[std::size_t(r0)][std::size_t(c0)] * (M[std::size_t(r1)][std::size_t(c1)] * M[std::size_t(r2)][std::size_t(c2)] - M[std::size_t(r1)][std::size_t(c2)] * M[std::size_t(r2)][std::size_t(c1)]) -
                   M[std::size_t(r0)][std::size_t(c1)] * (M[std::size_t(r1)][std::size_t(c0)] * M[std::size_t(r2)][std::size_t(c2)] - M[std::size_t(r1)][std::size_t(c2)] * M[std::size_t(r2)][std::size_t(c0)]) +
                   M[std::size_t(r0)][std::size_t(c2)] * (M[std::size_t(r1)][std::size_t(c0)] * M[std::size_t(r2)][std::size_t(c1)] - M[std::size_t(r1)][std::size_t(c1)] * M[std::size_t(r2)][std::size_t(c0)]);
        };
        bigint det = M[0][0] * m3(1, 2, 3, 1, 2, 3) - M[0][1] * m3(1, 2, 3, 0, 2, 3) +
                     M[0][2] * m3(1, 2, 3, 0, 1, 3) - M[0][3] * m3(1, 2, 3, 0, 1, 2);
        return det & mask;
    }
};

bigint rat_to_int_exact(const rat& q) {
    if (boost::multiprecision::denominator(q) != 1) throw std::logic_error("rat_to_int_exact: not an integer");
    return boost::multiprecision::numerator(q);
}

Ring make_ring(const FieldSpec& F, int B) {
    Ring R;
    R.deg = F.deg;
    R.e = F.e;
    R.f = F.f;
    R.B = B;
    R.mask = (bigint(1) << B) - 1;
    int n = F.deg;
    auto idx = F.mono_idx();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto prod = F.mul_monomial(F.basis[std::size_t(i)], F.basis[std::size_t(j)]);
            auto xs = F.solve_coords(prod);
            for (int k = 0; k < n; ++k) R.c[i][j][k] = R.red(rat_to_int_exact(xs[std::size_t(k)]));
        }
    for (int j = 0; j < n; ++j) {
        std::array<rat, 4> ej{};
        ej[std::size_t(idx[std::size_t(j)])] = 1;
        auto xs = F.solve_coords(ej);
        for (int k = 0; k < n; ++k) R.inv[k][j] = rat_to_int_exact(xs[std::size_t(k)]);
    }
    {
        auto xs = F.solve_coords(F.pi);
        for (int k = 0; k < n; ++k) R.pi[std::size_t(k)] = R.red(rat_to_int_exact(xs[std::size_t(k)]));
    }
    return R;
}

// F(sqrt(delta))/F unramified or split; v_f is the exact valuation of delta.
bool ring_unramified_test(const Ring& R, const Ring::Elem& delta, long long v_f) {
    if (v_f & 1) return false;
    long long threshold = R.f * (v_f + 2 * R.e);
    if (threshold + 8 > R.B) throw std::logic_error("ring_unramified_test: precision too small");
    Ring::Elem pw = R.pow(R.pi, v_f / 2);
    Ring::Elem pw2 = R.mul(pw, pw);
    int n = R.deg;
    std::array<int, 4> zc{};
    while (true) {
        Ring::Elem zeta{};
        for (int k = 0; k < n; ++k) zeta[std::size_t(k)] = zc[std::size_t(k)];
        Ring::Elem w = R.sub(delta, R.mul(pw2, R.mul(zeta, zeta)));
        bigint nm = R.norm(w);
        if (nm == 0) return true;
        if ((long long)boost::multiprecision::lsb(nm) >= threshold) return true;
        int k = 0;
        for (; k < n; ++k) {
            if (++zc[std::size_t(k)] < 4) break;
            zc[std::size_t(k)] = 0;
        }
        if (k == n) break;
    }
    return false;
}

i64 class_rep_of(i64 n) {
    bigint b(n);
    int parity = v2_of(b) & 1;
    int unit = unit8_of(b);
    static const std::map<std::pair<int, int>, i64> reps = {
        {{0, 1}, 1},  {{0, 5}, 5},  {{0, 3}, -5},  {{0, 7}, -1},
        {{1, 1}, 2},  {{1, 5}, 10}, {{1, 3}, -10}, {{1, 7}, -2},
    };
    return reps.at({parity, unit});
}

}  // namespace

Q2Class q2_class(const bigint& n) {
    if (n == 0) throw std::domain_error("q2_class: zero");
    return Q2Class{v2_of(n) & 1, unit8_of(n)};
}

Q2Class q2_class_i64(i64 n) { return q2_class(bigint(n)); }

bool square_in_completion(const Q2Class& delta, i64 m) {
    i64 rep = class_rep_of(m);
    if (rep == 1) return delta.is_square();
    if (rep == 5) throw std::domain_error("square_in_completion: 2 is inert, no degree-one prime");
    Q2Class mc = q2_class_i64(m);
    return delta.is_square() || delta == mc;
}

bool unramified_above_2(const bigint& x, const bigint& y, i64 a, i64 b, i64 t) {
    const bigint tx = t * x, ty = t * y;
    const i64 ca = class_rep_of(a);
    const i64 cb = b == 0 ? 1 : class_rep_of(b);
    const bigint norm_sub = bigint(t) * t * (x * x - a * (y * y));
    if (norm_sub == 0) throw std::domain_error("unramified_above_2: degenerate element");
    const int vn = v2_of(norm_sub);

    if (ca == 1) {
        // sqrt(a) is a 2-adic scalar; both embeddings of delta land in Q_2
        int B0 = vn + 24;
        bigint mask0 = (bigint(1) << B0) - 1;
        bigint aodd = bigint(a);  // class 1 with v2(a) in {0,1}: v2 must be 0
        if (v2_of(aodd) != 0) throw std::logic_error("unramified_above_2: even a in trivial class");
        bigint s0 = sqrt_mod_pow2(((aodd % (mask0 + 1)) + (mask0 + 1)) & mask0, B0);
        // exact valuation and unit of each embedding
        std::array<int, 2> vv{}, uu{};
        std::array<bool, 2> huge{};
        for (int sign = 0; sign < 2; ++sign) {
            bigint img = ((tx + (sign ? -s0 : s0) * ty) % (mask0 + 1) + (mask0 + 1)) & mask0;
            if (img != 0 && v2_of(img) < B0 - 12) {
                vv[std::size_t(sign)] = v2_of(img);
                uu[std::size_t(sign)] = unit8_of(img);
                huge[std::size_t(sign)] = false;
            } else {
                huge[std::size_t(sign)] = true;
            }
        }
        for (int sign = 0; sign < 2; ++sign) {
            if (!huge[std::size_t(sign)]) continue;
            int other = 1 - sign;
            if (huge[std::size_t(other)]) throw std::logic_error("unramified_above_2: both embeddings vanish");
            vv[std::size_t(sign)] = vn - vv[std::size_t(other)];
            static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
            uu[std::size_t(sign)] = (unit8_of(norm_sub) * inv8[uu[std::size_t(other)]]) % 8;
        }
        for (int sign = 0; sign < 2; ++sign) {
            int v = vv[std::size_t(sign)], u8 = uu[std::size_t(sign)];
            if (cb == 1) {
                if ((v & 1) != 0 || (u8 % 4) != 1) return false;
            } else {
                const FieldSpec& K = field_cache(cb, 0);
                long long v_f = (long long)K.e * v;
                int B = int(K.f * (v_f + 2 * K.e) + 24);
                Ring R = make_ring(K, B);
                bigint mask = R.mask;
                bigint s = sqrt_mod_pow2(((aodd % (mask + 1)) + (mask + 1)) & mask, B);
                bigint img = ((tx + (sign ? -s : s) * ty) % (mask + 1) + (mask + 1)) & mask;
                Ring::Elem dl{};
                dl[0] = img;
                Ring::Elem d2 = R.from_monomial({img, 0, 0, 0});
                if (!ring_unramified_test(R, d2, v_f)) return false;
                (void)dl;
            }
        }
        return true;
    }

    // sqrt(a) irrational over Q_2: a single field receives delta
    i64 d1 = ca, d2 = 0;
    if (!(cb == 1 || cb == ca)) d2 = cb;
    const FieldSpec& K = field_cache(d1, d2);
    if (((long long)(K.deg / 2) * vn) % K.f != 0)
        throw std::logic_error("unramified_above_2: fractional valuation");
    long long v_f = (long long)(K.deg / 2) * vn / K.f;
    int B = int(K.f * (v_f + 2 * K.e) + 32);
    Ring R = make_ring(K, B);
    const bigint mask = R.mask;
    // sqrt(a) = s1 * sqrt(a/ca); a/ca = (a*ca)/ca^2 with a*ca = 4^k * (1 mod 8)
    bigint prod = bigint(a) * ca;
    int vp = v2_of(prod);
    if (vp & 1) throw std::logic_error("unramified_above_2: class mismatch");
    bigint punit = prod / (bigint(1) << vp);
    bigint w = sqrt_mod_pow2(((punit % (mask + 1)) + (mask + 1)) & mask, B);
    // sqrt(a/ca) = 2^{vp/2} * w / ca, and vp/2 = v2(ca), so the odd part of ca divides out
    int vca = v2_of(bigint(ca));
    if (vp / 2 != vca) throw std::logic_error("unramified_above_2: 2-exponent mismatch");
    bigint ca_odd = bigint(ca) / (bigint(1) << vca);
    bigint scale = (w * inv_mod_pow2(ca_odd, B)) & mask;
    for (int sign = 0; sign < 2; ++sign) {
        std::array<bigint, 4> mono{};
        mono[0] = ((tx % (mask + 1)) + (mask + 1)) & mask;
        bigint coef = ((ty % (mask + 1)) + (mask + 1)) & mask;
        coef = (coef * scale) & mask;
        if (sign) coef = (mask + 1 - coef) & mask;
        mono[1] = coef;
        Ring::Elem dl = R.from_monomial(mono);
        if (!ring_unramified_test(R, dl, v_f)) return false;
    }
    return true;
}

}  // namespace pellrank::local2
