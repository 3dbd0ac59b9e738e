#include "redei.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "local2.hpp"

namespace pellrank::redei {

namespace {

using local2::Q2Class;

thread_local bool g_conjugate_choice = false;

std::vector<i64> relevant_places(const SquareClass& a, const SquareClass& b) {
    std::set<i64> odd;
    for (i64 p : a.odd_primes()) odd.insert(p);
    for (i64 p : b.odd_primes()) odd.insert(p);
    std::vector<i64> out{-1, 2};
    out.insert(out.end(), odd.begin(), odd.end());
    return out;
}

int qrbit(i64 n, i64 r) {
    int k = arith::kronecker(n % r, r);
    if (k == 0) throw std::logic_error("qrbit: argument shares a factor with the prime");
    return k == 1 ? 0 : 1;
}

int qrbit_big(const bigint& n, i64 r) {
    i64 m = i64(n % r);
    return qrbit(((m % r) + r) % r, r);
}

}  // namespace

AcceptablePair is_acceptable(const SquareClass& a, const SquareClass& b) {
    AcceptablePair out;
    out.a = a;
    out.b = b;
    for (i64 v : relevant_places(a, b))
        if (arith::hilbert(a, b, v) == -1) out.failing_places.push_back(v);
    out.acceptable = out.failing_places.empty();
    return out;
}

AdmissibleTriple is_admissible(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
    AdmissibleTriple out;
    out.a = a;
    out.b = b;
    out.c = c;
    if (!a.pell_supported() || !b.pell_supported() || !c.pell_supported()) {
        out.reason = "an entry is divisible by a prime = 3 mod 4";
        return out;
    }
    const SquareClass* xs[3] = {&a, &b, &c};
    std::pair<int, int> pairs[3] = {{0, 1}, {0, 2}, {1, 2}};
    const char* labels[3] = {"(a,b)", "(a,c)", "(b,c)"};
    for (int k = 0; k < 3; ++k) {
        AcceptablePair p = is_acceptable(*xs[pairs[k].first], *xs[pairs[k].second]);
        if (!p.acceptable) {
            out.reason = std::string(labels[k]) + " is not an acceptable pair";
            return out;
        }
    }
    i64 g = std::gcd(std::gcd(a.field_discriminant(), b.field_discriminant()), c.field_discriminant());
    if (g != 1 && g != -1) {
        out.reason = "not jointly unramified";
        return out;
    }
    out.admissible = true;
    return out;
}

namespace {

// sign of x + y*sqrt(a) in the embedding with sqrt(a) > 0 (a > 0)
int real_sign(const bigint& x, const bigint& y, i64 a) {
    if (x >= 0 && y >= 0) return (x == 0 && y == 0) ? 0 : 1;
    if (x <= 0 && y <= 0) return -1;
    bigint lhs = x * x, rhs = a * y * y;
    if (x > 0) return lhs > rhs ? 1 : -1;  // y < 0
    return rhs > lhs ? 1 : -1;             // x < 0, y > 0
}

struct SymbolContext {
    i64 a, b;       // arranged values (a odd when possible)
    bigint x, y, z; // primitive solution of x^2 = a y^2 + b z^2
    i64 twist = 1;  // multiplier from the allowed group fixing 2-ramification
};

// choose the twist that makes Q(sqrt a, sqrt b, sqrt(t*gamma)) minimally
// ramified above 2; only needed when 2 does not divide gcd of the two
// field discriminants
SymbolContext build_context(const SquareClass& A, const SquareClass& B, const SquareClass& C) {
    SquareClass a = A, b = B;
    if (a.even() && !b.even()) std::swap(a, b);
    SymbolContext ctx;
    ctx.a = a.value();
    ctx.b = b.value();
    ConicSolution sol = solve_conic(ctx.a, ctx.b);
    ctx.x = sol.x;
    ctx.y = sol.y;
    ctx.z = sol.z;
    i64 ga = a.field_discriminant(), gb = b.field_discriminant();
    bool need2 = !(ga % 2 == 0 && gb % 2 == 0);
    if (!need2) {
        ctx.twist = 1;
        return ctx;
    }
    // Twists that preserve minimal ramification at the odd places: sign, 2,
    // and odd primes dividing ab (2-adically only a 5 mod 8 prime matters).
    std::vector<i64> gens{-1, 2};
    i64 p5 = 0, p5_aux = 0;
    for (i64 p : a.odd_primes()) {
        if (p % 8 == 5) {
            if (C.odd % p != 0) { p5 = p; break; }
            p5_aux = p;
        }
    }
    if (p5 == 0)
        for (i64 p : b.odd_primes()) {
            if (p % 8 == 5) {
                if (C.odd % p != 0) { p5 = p; break; }
                if (p5_aux == 0) p5_aux = p;
            }
        }
    if (p5 == 0) p5 = p5_aux;
    if (p5 != 0) gens.push_back(p5);
    for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
        i64 t = 1;
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (mask >> i & 1) t *= gens[i];
        // squarefree-reduce t (products of t_a, t_b may share a factor 2)
        auto [sf, sq] = arith::squarefree_part(t);
        (void)sq;
        t = sf;
        if (local2::unramified_above_2(ctx.x, ctx.y, ctx.a, ctx.b, t)) {
            ctx.twist = t;
            return ctx;
        }
    }
    throw std::logic_error("redei_symbol: no twist achieves minimal ramification at 2");
}

// contribution of one odd prime r | c
int eval_odd_prime(const SymbolContext& ctx, i64 r) {
    const i64 a = ctx.a, b = ctx.b, t = ctx.twist;
    int bit = 0;
    bool t_div = (t % r == 0);
    if (a % r == 0) {
        // gamma = x mod the ramified prime above r
        if (!t_div) {
            bit = qrbit(((t % r) + r) % r, r);
            bit ^= qrbit_big(ctx.x, r);
        } else {
            i64 t0 = t / r, a0 = a / r;
            bigint val = bigint(t0) * a0 * ctx.x;
            bit = qrbit_big(val, r);
        }
        return bit;
    }
    // r splits in Q(sqrt a) since (a, c)_r = 1
    i64 am = ((a % r) + r) % r;
    if (arith::kronecker(am, r) != 1) throw std::logic_error("eval_odd_prime: a not a QR (acceptability violated)");
    i64 s = arith::sqrt_mod_prime(am, r);
    if (g_conjugate_choice) s = r - s;
    bigint t1 = (ctx.x + ctx.y * s) % r;
    if (t1 < 0) t1 += r;
    if (t1 == 0) {
        t1 = (ctx.x - ctx.y * s) % r;
        if (t1 < 0) t1 += r;
        if (t1 == 0) throw std::logic_error("eval_odd_prime: both embeddings vanish");
    }
    if (b % r == 0) {
        if (!t_div) {
            bit = qrbit(((t % r) + r) % r, r) ^ qrbit_big(t1, r);
        } else {
            i64 t0 = t / r, b0 = b / r;
            bigint val = bigint(t0) * b0 * t1;
            bit = qrbit_big(val, r);
        }
        return bit;
    }
    if (t_div) throw std::logic_error("eval_odd_prime: twist prime outside ab");
    bit = qrbit(((t % r) + r) % r, r) ^ qrbit_big(t1, r);
    return bit;
}

// contribution of the norm-2 prime of Q(sqrt(ab)) when 2 | c
int eval_prime_2(const SymbolContext& ctx) {
    const i64 a = ctx.a, b = ctx.b, t = ctx.twist;
    // gamma must land in Q_2: forced a = 1 mod 8 by acceptability of (a, c)
    Q2Class ca = local2::q2_class_i64(a);
    if (!ca.is_square()) throw std::logic_error("eval_prime_2: sqrt(a) not 2-adic (membership violated)");
    // class of t*(x + y*sqrt(a)) as a 2-adic scalar
    bigint norm = bigint(t) * t * (ctx.x * ctx.x - a * ctx.y * ctx.y);
    int vn = int(boost::multiprecision::lsb(norm < 0 ? bigint(-norm) : norm));
    int B = vn + 24;
    bigint mask = (bigint(1) << B) - 1;
    // sqrt of a mod 2^B
    bigint s = 1;
    {
        bigint u = ((bigint(a) % (mask + 1)) + (mask + 1)) & mask;
        for (int k = 3; k < B; ++k) {
            bigint diff = (s * s - u) & ((bigint(1) << (k + 1)) - 1);
            if (diff != 0 && boost::multiprecision::lsb(diff) == unsigned(k)) s += bigint(1) << (k - 1);
        }
    }
    if (g_conjugate_choice) s = (mask + 1 - s) & mask;
    bigint img = ((bigint(t) * (ctx.x + ctx.y * s)) % (mask + 1) + (mask + 1)) & mask;
    Q2Class cls;
    if (img != 0 && int(boost::multiprecision::lsb(img)) < B - 12) {
        cls = local2::q2_class(img);
    } else {
        bigint other = ((bigint(t) * (ctx.x - ctx.y * s)) % (mask + 1) + (mask + 1)) & mask;
        if (other == 0 || int(boost::multiprecision::lsb(other)) >= B - 12)
            throw std::logic_error("eval_prime_2: precision loss");
        Q2Class co = local2::q2_class(other);
        Q2Class cn = local2::q2_class(norm);
        static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
        cls.parity = (cn.parity - co.parity) & 1;
        cls.unit8 = (cn.unit8 * inv8[co.unit8]) % 8;
    }
    // the square class of ab decides the completion at the norm-2 prime
    arith::SquareClass prod = arith::SquareClass::from_integer(a) * arith::SquareClass::from_integer(b);
    i64 m = prod.value();
    if (local2::square_in_completion(cls, m)) return 0;
    Q2Class five{0, 5};
    if (local2::square_in_completion(cls * five, m)) return 1;
    throw std::logic_error("eval_prime_2: Frobenius would be ramified (normalization bug)");
}

int eval_infinity(const SymbolContext& ctx) {
    if (ctx.a < 0 || ctx.b < 0) throw std::logic_error("eval_infinity: negative entries with c < 0");
    int sgn = real_sign(ctx.x, ctx.y, ctx.a);
    if (ctx.twist < 0) sgn = -sgn;
    return sgn < 0 ? 1 : 0;
}

}  // namespace

int redei_symbol(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
    AdmissibleTriple adm = is_admissible(a, b, c);
    if (!adm.admissible) throw std::domain_error("redei_symbol: triple not admissible: " + adm.reason);
    if (a.is_trivial() || b.is_trivial() || c.is_trivial()) return 0;
    // The quartic field is built over two positive entries (an admissible
    // triple has at most one negative entry, by the real Hilbert symbol);
    // reciprocity makes the value independent of the arrangement.
    SquareClass u = a, v = b, w = c;
    if (!u.positive()) std::swap(u, w);
    else if (!v.positive()) std::swap(v, w);
    SymbolContext ctx = build_context(u, v, w);
    int total = 0;
    for (i64 r : w.odd_primes()) total ^= eval_odd_prime(ctx, r);
    if (w.even()) total ^= eval_prime_2(ctx);
    if (!w.positive()) total ^= eval_infinity(ctx);
    return total;
}

int redei_symbol(i64 a, i64 b, i64 c) {
    return redei_symbol(SquareClass::from_integer(a), SquareClass::from_integer(b),
                        SquareClass::from_integer(c));
}

int redei_symbol_conjugate_choice(const SquareClass& a, const SquareClass& b, const SquareClass& c) {
    g_conjugate_choice = true;
    try {
        int v = redei_symbol(a, b, c);
        g_conjugate_choice = false;
        return v;
    } catch (...) {
        g_conjugate_choice = false;
        throw;
    }
}

int artin_pairing(i64 d, const SquareClass& a, const SquareClass& b) {
    SquareClass dc = SquareClass::from_integer(d);
    {
        AcceptablePair pa = is_acceptable(a, SquareClass::from_integer(-d));
        if (!pa.acceptable)
            throw std::domain_error("artin_pairing: chi_a not in 2CL+^dual[4], Hilbert fails at place " +
                                    std::to_string(pa.failing_places.front()));
        AcceptablePair pb = is_acceptable(b, dc);
        if (!pb.acceptable)
            throw std::domain_error("artin_pairing: B_D(b) not in 2CL+[4], Hilbert fails at place " +
                                    std::to_string(pb.failing_places.front()));
    }
    SquareClass rest = dc * a;  // D / a as a square class
    return redei_symbol(a, rest, b);
}

f2linalg::F2Matrix legendre_matrix(const std::vector<i64>& primes) {
    int n = int(primes.size());
    if (n <= 1) return f2linalg::F2Matrix(0, 0);
    return f2linalg::F2Matrix::from_bits(n - 1, n - 1, [&](int i, int j) {
        i64 pi = primes[std::size_t(i + 1)], pj = primes[std::size_t(j + 1)];
        if (i != j) return arith::kronecker(pi, pj) == 1 ? 0 : 1;
        int acc = 0;
        for (int l = 0; l < n; ++l) {
            if (l == j + 1) continue;
            acc ^= arith::kronecker(primes[std::size_t(l)], pj) == 1 ? 0 : 1;
        }
        return acc;
    });
}

namespace {

std::vector<i64> prime_divisors(i64 d) {
    std::vector<i64> out;
    for (auto& [p, e] : arith::factor_generic(d).factors) out.push_back(p);
    return out;
}

// basis of the kernel of the acceptability conditions, modulo a quotient vector
std::vector<std::vector<int>> kernel_mod_vector(const f2linalg::F2Matrix& conditions,
                                                const std::vector<int>& quotient) {
    std::vector<std::vector<int>> kernel = conditions.kernel_basis();
    std::vector<std::vector<std::uint64_t>> packed;
    int nbits = conditions.cols();
    auto pack = [&](const std::vector<int>& v) {
        std::vector<std::uint64_t> w(std::size_t((nbits + 63) / 64), 0);
        for (int i = 0; i < nbits; ++i)
            if (v[std::size_t(i)]) w[std::size_t(i >> 6)] |= std::uint64_t(1) << (i & 63);
        return w;
    };
    packed.push_back(pack(quotient));
    std::vector<std::vector<int>> out;
    for (const auto& v : kernel) {
        packed.push_back(pack(v));
        if (f2linalg::rank_of_rows(packed, nbits) == int(packed.size()))
            out.push_back(v);
        else
            packed.pop_back();
    }
    return out;
}

}  // namespace

PairingMatrix pairing_matrix(i64 d) {
    if (!arith::in_pell_family(d)) throw std::domain_error("pairing_matrix: D not in the Pell family");
    std::vector<i64> primes = prime_divisors(d);
    int omega = int(primes.size());
    std::vector<i64> places{-1, 2};
    for (i64 p : primes)
        if (p != 2) places.push_back(p);

    // rows: positive divisors a with (a, -D) acceptable, modulo {1, D}
    f2linalg::F2Matrix cond_row = f2linalg::F2Matrix::from_bits(int(places.size()), omega, [&](int v, int i) {
        return arith::hilbert(primes[std::size_t(i)], -d, places[std::size_t(v)]) == 1 ? 0 : 1;
    });
    std::vector<int> ones(std::size_t(omega), 1);
    auto row_vecs = kernel_mod_vector(cond_row, ones);

    // cols: signed divisors b with (b, D) acceptable, modulo {1, -D}
    // generators: index 0 is -1, then the primes
    f2linalg::F2Matrix cond_col = f2linalg::F2Matrix::from_bits(int(places.size()), omega + 1, [&](int v, int i) {
        i64 gen = (i == 0) ? -1 : primes[std::size_t(i - 1)];
        return arith::hilbert(gen, d, places[std::size_t(v)]) == 1 ? 0 : 1;
    });
    std::vector<int> minus_d(std::size_t(omega) + 1, 1);
    auto col_vecs = kernel_mod_vector(cond_col, minus_d);

    PairingMatrix pm;
    auto to_class_row = [&](const std::vector<int>& v) {
        SquareClass s = SquareClass::one();
        for (int i = 0; i < omega; ++i)
            if (v[std::size_t(i)]) s = s * SquareClass::from_integer(primes[std::size_t(i)]);
        return s;
    };
    auto to_class_col = [&](const std::vector<int>& v) {
        SquareClass s = SquareClass::one();
        if (v[0]) s = s * SquareClass::from_integer(-1);
        for (int i = 0; i < omega; ++i)
            if (v[std::size_t(i + 1)]) s = s * SquareClass::from_integer(primes[std::size_t(i)]);
        return s;
    };
    for (const auto& v : row_vecs) pm.row_basis.push_back(to_class_row(v));
    for (const auto& v : col_vecs) pm.col_basis.push_back(to_class_col(v));
    pm.entries = f2linalg::F2Matrix(int(pm.row_basis.size()), int(pm.col_basis.size()));
    for (int i = 0; i < int(pm.row_basis.size()); ++i)
        for (int j = 0; j < int(pm.col_basis.size()); ++j)
            pm.entries.set(i, j, artin_pairing(d, pm.row_basis[std::size_t(i)], pm.col_basis[std::size_t(j)]));
    return pm;
}

int rk4_via_redei_matrix(i64 d) {
    std::vector<i64> primes = prime_divisors(d);
    f2linalg::F2Matrix m = legendre_matrix(primes);
    return m.cols() - m.rank();
}

int rk8_via_pairing(i64 d) {
    int rk4 = rk4_via_redei_matrix(d);
    if (rk4 == 0) return 0;
    PairingMatrix pm = pairing_matrix(d);
    if (int(pm.row_basis.size()) != rk4)
        throw std::logic_error("rk8_via_pairing: pairing row space does not match rk4");
    return rk4 - pm.entries.rank();
}

SymbolicProfile symbolic_profile(i64 d, const std::vector<i64>& primes) {
    SymbolicProfile out;
    out.d = d;
    out.omega = int(primes.size());
    f2linalg::F2Matrix lm = legendre_matrix(primes);
    out.rk4_narrow = lm.cols() - lm.rank();
    out.neg_pell = pell::neg_pell_fundamental(d);
    if (out.rk4_narrow == 0) {
        out.rk8_narrow = 0;
        out.rk4_ordinary = 0;
        out.ranks4_coincide = true;
        return out;
    }
    PairingMatrix pm = pairing_matrix(d);
    if (int(pm.row_basis.size()) != out.rk4_narrow)
        throw std::logic_error("symbolic_profile: pairing row space does not match rk4");
    out.rk8_narrow = out.rk4_narrow - pm.entries.rank();
    // tau = B_D(-1): in 4CL+ iff the corresponding pairing column vanishes
    bool tau_in_4cl = true;
    SquareClass minus_one = SquareClass::from_integer(-1);
    for (const SquareClass& a : pm.row_basis)
        if (artin_pairing(d, a, minus_one) != 0) {
            tau_in_4cl = false;
            break;
        }
    out.ranks4_coincide = tau_in_4cl;
    out.rk4_ordinary = out.rk4_narrow - 1 + (tau_in_4cl ? 1 : 0);
    return out;
}

}  // namespace pellrank::redei
