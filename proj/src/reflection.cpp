#include "reflection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "redei.hpp"

namespace pellrank::reflection {

using arith::SquareClass;

const char* theorem_name(Theorem t) {
    switch (t) {
        case Theorem::t28i: return "2.8i";
        case Theorem::t28ii: return "2.8ii";
        case Theorem::t28self: return "2.8self";
        case Theorem::swapmin: return "swapmin";
        case Theorem::swapped: return "swapped";
    }
    return "?";
}

std::optional<Theorem> theorem_from_name(const std::string& name) {
    if (name == "2.8i") return Theorem::t28i;
    if (name == "2.8ii") return Theorem::t28ii;
    if (name == "2.8self") return Theorem::t28self;
    if (name == "swapmin") return Theorem::swapmin;
    if (name == "swapped") return Theorem::swapped;
    return std::nullopt;
}

namespace {

bool acceptable(i64 u, i64 v) {
    return redei::is_acceptable(SquareClass::from_integer(u), SquareClass::from_integer(v)).acceptable;
}

bool prime_1mod4(i64 p) { return p > 0 && p % 4 == 1 && arith::is_prime(arith::u64(p)); }

}  // namespace

std::optional<std::string> hypothesis_violation(Theorem thm, const Config& cfg) {
    if (cfg.d <= 0) return "d must be positive";
    for (auto& [p, e] : arith::factor_generic(cfg.d).factors) {
        if (e > 1) return "d must be squarefree";
        if (p % 4 == 3) return "d has a prime factor 3 mod 4";
    }
    for (i64 p : {cfg.p1, cfg.p2, cfg.q1, cfg.q2}) {
        if (!prime_1mod4(p)) return "p_i, q_j must be primes 1 mod 4";
        if (cfg.d % p == 0) return "p_i, q_j must be coprime to d";
    }
    {
        // pairwise distinct keeps the four discriminants squarefree
        std::vector<i64> ps{cfg.p1, cfg.p2, cfg.q1, cfg.q2};
        std::sort(ps.begin(), ps.end());
        if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) return "primes not pairwise distinct";
    }
    if (cfg.a <= 0 || cfg.d % cfg.a != 0) return "a must be a positive divisor of d";
    i64 babs = cfg.b < 0 ? -cfg.b : cfg.b;
    if (babs == 0 || cfg.d % babs != 0) return "b must be a divisor of d";
    if ((thm == Theorem::swapmin || thm == Theorem::swapped || thm == Theorem::t28self) && cfg.b < 0)
        return "b must be positive for this theorem";
    const i64 dd[2][2] = {{cfg.p1 * cfg.q1 * cfg.d, cfg.p1 * cfg.q2 * cfg.d},
                          {cfg.p2 * cfg.q1 * cfg.d, cfg.p2 * cfg.q2 * cfg.d}};
    const i64 pi[2] = {cfg.p1, cfg.p2};
    const i64 qj[2] = {cfg.q1, cfg.q2};
    auto all_b_member = [&](auto value_of) -> bool {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!acceptable(value_of(i, j), dd[i][j])) return false;
        return true;
    };
    switch (thm) {
        case Theorem::t28i: {
            if (!all_b_member([&](int, int) { return cfg.b; })) return "B_D(b) not in 2CL+[4] for some (i,j)";
            for (auto [i, j] : {std::pair<int, int>{0, 1}, {1, 0}, {1, 1}})
                if (!acceptable(cfg.a, -dd[i][j])) return "chi_a not in 2CL+^dual[4] for some required (i,j)";
            return std::nullopt;
        }
        case Theorem::t28ii: {
            if (!all_b_member([&](int, int) { return cfg.b; })) return "B_D(b) not in 2CL+[4] for some (i,j)";
            for (auto [i, j] : {std::pair<int, int>{0, 1}, {1, 0}, {1, 1}})
                if (!acceptable(pi[i] * cfg.a, -dd[i][j])) return "chi_{p_i a} not in 2CL+^dual[4] for some required (i,j)";
            if (arith::kronecker(cfg.q1 * cfg.q2, cfg.p1) != 1) return "(q1 q2 | p1) != 1";
            if (arith::kronecker(cfg.p1 * cfg.p2, cfg.q1) != 1) return "(p1 p2 | q1) != 1";
            return std::nullopt;
        }
        case Theorem::t28self: {
            if (!all_b_member([&](int i, int) { return pi[i] * cfg.a; }))
                return "B_D(p_i a) not in 2CL+[4] for some (i,j)";
            return std::nullopt;
        }
        case Theorem::swapmin: {
            if (!all_b_member([&](int, int) { return cfg.b; })) return "B_D(b) not in 2CL+[4] for some (i,j)";
            if (!all_b_member([&](int i, int) { return pi[i] * cfg.a; }))
                return "B_D(p_i a) not in 2CL+[4] for some (i,j)";
            return std::nullopt;
        }
        case Theorem::swapped: {
            if (!all_b_member([&](int, int j) { return qj[j] * cfg.b; }))
                return "B_D(q_j b) not in 2CL+[4] for some (i,j)";
            if (!all_b_member([&](int i, int) { return pi[i] * cfg.a; }))
                return "B_D(p_i a) not in 2CL+[4] for some (i,j)";
            return std::nullopt;
        }
    }
    return "unknown theorem";
}

Outcome verify(Theorem thm, const Config& cfg) {
    if (auto why = hypothesis_violation(thm, cfg))
        throw std::domain_error(std::string("reflection::verify: ") + *why);
    Outcome out;
    out.config = cfg;
    const i64 dd[2][2] = {{cfg.p1 * cfg.q1 * cfg.d, cfg.p1 * cfg.q2 * cfg.d},
                          {cfg.p2 * cfg.q1 * cfg.d, cfg.p2 * cfg.q2 * cfg.d}};
    const i64 pi[2] = {cfg.p1, cfg.p2};
    const i64 qj[2] = {cfg.q1, cfg.q2};
    auto pair_of = [&](i64 u, i64 w, int i, int j) {
        return redei::artin_pairing(dd[i][j], SquareClass::from_integer(u), SquareClass::from_integer(w));
    };
    int lhs = 0;
    switch (thm) {
        case Theorem::t28i:
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) lhs ^= pair_of(cfg.a, cfg.b, i, j);
            out.rhs = 0;
            break;
        case Theorem::t28ii:
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) lhs ^= pair_of(pi[i] * cfg.a, cfg.b, i, j);
            out.rhs = redei::redei_symbol(cfg.p1 * cfg.p2, cfg.q1 * cfg.q2, cfg.b);
            break;
        case Theorem::t28self:
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) lhs ^= pair_of(pi[i] * cfg.a, pi[i] * cfg.a, i, j);
            out.rhs = redei::redei_symbol(cfg.p1 * cfg.p2, cfg.q1 * cfg.q2, cfg.p1 * cfg.p2);
            break;
        case Theorem::swapmin:
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    lhs ^= pair_of(pi[i] * cfg.a, cfg.b, i, j);
                    lhs ^= pair_of(cfg.b, pi[i] * cfg.a, i, j);
                }
            out.rhs = 0;
            break;
        case Theorem::swapped:
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    lhs ^= pair_of(pi[i] * cfg.a, qj[j] * cfg.b, i, j);
                    lhs ^= pair_of(qj[j] * cfg.b, pi[i] * cfg.a, i, j);
                }
            out.rhs = redei::redei_symbol(cfg.p1 * cfg.p2, cfg.q1 * cfg.q2, -1);
            break;
    }
    out.lhs = lhs;
    out.holds = (out.lhs == out.rhs);
    return out;
}

namespace {

// prime p = base (mod m) starting from a randomized offset; 0 when none found
i64 prime_in_progression(i64 base, i64 m, rng::Xoshiro256& gen, i64 cap = 20000) {
    i64 k0 = 1 + i64(gen.below(24));
    for (i64 p = base + k0 * m; p < cap; p += m)
        if (arith::is_prime(arith::u64(p))) return p;
    for (i64 p = base + m; p < cap; p += m)
        if (arith::is_prime(arith::u64(p))) return p;
    return 0;
}

}  // namespace

std::optional<Config> sample_config(Theorem thm, rng::Xoshiro256& gen) {
    // small d keeps the coupling modulus small and the discriminants in
    // comfortable factoring range
    static const std::vector<i64> d_pool{5, 13, 17};
    Config cfg;
    cfg.d = 1;
    std::vector<i64> d_primes;
    if (gen.coin()) {
        d_primes.push_back(2);
        cfg.d *= 2;
    }
    if (gen.coin()) {
        i64 p = d_pool[gen.below(d_pool.size())];
        d_primes.push_back(p);
        cfg.d *= p;
    }
    cfg.a = 1;
    cfg.b = 1;
    for (i64 p : d_primes) {
        if (gen.coin()) cfg.a *= p;
        if (gen.coin()) cfg.b *= p;
    }
    if ((thm == Theorem::t28i || thm == Theorem::t28ii) && gen.coin()) cfg.b = -cfg.b;

    // p2 = p1 and q2 = q1 modulo 8 rad(d) collapses the symbol conditions
    // against d and b across the four discriminants; the remaining cross
    // conditions are left to rejection
    i64 m = 8;
    for (i64 p : d_primes)
        if (p != 2) m *= p;
    auto draw_prime = [&]() {
        for (int tries = 0; tries < 200; ++tries) {
            i64 p = 5 + 4 * i64(gen.below(500));
            if (!arith::is_prime(arith::u64(p))) continue;
            if (cfg.d % p == 0) continue;
            return p;
        }
        return i64(0);
    };
    cfg.p1 = draw_prime();
    cfg.q1 = draw_prime();
    if (cfg.p1 == 0 || cfg.q1 == 0 || cfg.p1 == cfg.q1) return std::nullopt;
    cfg.p2 = prime_in_progression(cfg.p1, m, gen);
    cfg.q2 = prime_in_progression(cfg.q1, m, gen);
    if (cfg.p2 == 0 || cfg.q2 == 0) return std::nullopt;
    if (hypothesis_violation(thm, cfg)) return std::nullopt;
    return cfg;
}

}  // namespace pellrank::reflection
