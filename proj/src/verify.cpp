#include "verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "combinatorics.hpp"
#include "densities.hpp"
#include "f2linalg.hpp"
#include "quadforms.hpp"
#include "redei.hpp"
#include "reflection.hpp"
#include "rng.hpp"
#include "sweep.hpp"

namespace pellrank::verify {

namespace {

using arith::SquareClass;

std::vector<i64> make_prime_pool(i64 bound) {
    std::vector<i64> pool;
    for (i64 p : arith::primes_below(bound))
        if (p % 4 == 1) pool.push_back(p);
    return pool;
}

i64 random_entry(rng::Xoshiro256& gen, const std::vector<i64>& pool, int max_primes) {
    i64 v = 1;
    if (gen.below(4) == 0) v = -1;
    if (gen.below(4) == 0) v *= 2;
    int np = int(gen.below(std::uint64_t(max_primes) + 1));
    for (int i = 0; i < np; ++i) {
        i64 p = pool[gen.below(pool.size())];
        if (v % p == 0) continue;
        v *= p;
    }
    return v;
}

std::string triple_str(i64 a, i64 b, i64 c) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}  // namespace

SuiteResult run_redei_suite(std::uint64_t trials, std::uint64_t seed) {
    SuiteResult res;
    res.suite = "redei";
    std::vector<i64> pool = make_prime_pool(2000);

    auto fail = [&](const std::string& what) {
        res.passed = false;
        if (res.first_failure.empty()) res.first_failure = what;
    };

    // reciprocity: the symbol is invariant under all entry permutations
    {
        rng::Xoshiro256 gen(rng::derive_seed(seed, 1));
        std::uint64_t done = 0, failures = 0;
        while (done < trials) {
            i64 a = random_entry(gen, pool, 2), b = random_entry(gen, pool, 2), c = random_entry(gen, pool, 2);
            SquareClass A = SquareClass::from_integer(a), B = SquareClass::from_integer(b),
                        C = SquareClass::from_integer(c);
            if (!redei::is_admissible(A, B, C).admissible) continue;
            int v = redei::redei_symbol(A, B, C);
            int perm[5] = {redei::redei_symbol(A, C, B), redei::redei_symbol(B, A, C),
                           redei::redei_symbol(B, C, A), redei::redei_symbol(C, A, B),
                           redei::redei_symbol(C, B, A)};
            ++done;
            for (int k = 0; k < 5; ++k)
                if (perm[k] != v) {
                    ++failures;
                    fail("reciprocity violated at " + triple_str(a, b, c));
                    break;
                }
        }
        res.lines.push_back("reciprocity [a,b,c]=[a,c,b]: " + std::to_string(done) + " triples, " +
                            std::to_string(failures) + " failures");
    }

    // trilinearity
    {
        rng::Xoshiro256 gen(rng::derive_seed(seed, 2));
        std::uint64_t want = trials / 2, done = 0, failures = 0;
        while (done < want) {
            i64 a = random_entry(gen, pool, 2), b = random_entry(gen, pool, 1), b2 = random_entry(gen, pool, 1),
                c = random_entry(gen, pool, 2);
            SquareClass A = SquareClass::from_integer(a), B = SquareClass::from_integer(b),
                        B2 = SquareClass::from_integer(b2), C = SquareClass::from_integer(c);
            if (!redei::is_admissible(A, B, C).admissible) continue;
            if (!redei::is_admissible(A, B2, C).admissible) continue;
            SquareClass BB = B * B2;
            if (!redei::is_admissible(A, BB, C).admissible) {
                fail("product triple not admissible at " + triple_str(a, b * b2, c));
                ++done;
                continue;
            }
            int lhs = redei::redei_symbol(A, B, C) ^ redei::redei_symbol(A, B2, C);
            int rhs = redei::redei_symbol(A, BB, C);
            ++done;
            if (lhs != rhs) {
                ++failures;
                fail("trilinearity violated at a=" + std::to_string(a) + " b=" + std::to_string(b) +
                     " b'=" + std::to_string(b2) + " c=" + std::to_string(c));
            }
        }
        res.lines.push_back("trilinearity [a,b,c]+[a,b',c]=[a,bb',c]: " + std::to_string(done) +
                            " pairs, " + std::to_string(failures) + " failures");
    }

    // [a,b,c] = [a,b,-abc] for positive a, b with coprime field discriminants
    {
        rng::Xoshiro256 gen(rng::derive_seed(seed, 3));
        std::uint64_t want = trials / 2, done = 0, failures = 0;
        while (done < want) {
            i64 a = std::abs(random_entry(gen, pool, 2)), b = std::abs(random_entry(gen, pool, 2));
            i64 c = random_entry(gen, pool, 1);
            SquareClass A = SquareClass::from_integer(a), B = SquareClass::from_integer(b),
                        C = SquareClass::from_integer(c);
            if (std::gcd(A.field_discriminant(), B.field_discriminant()) != 1) continue;
            if (!redei::is_admissible(A, B, C).admissible) continue;
            SquareClass shifted = A * B * C * SquareClass::from_integer(-1);
            if (!redei::is_admissible(A, B, shifted).admissible) {
                fail("shifted triple not admissible at " + triple_str(a, b, c));
                ++done;
                continue;
            }
            ++done;
            if (redei::redei_symbol(A, B, C) != redei::redei_symbol(A, B, shifted)) {
                ++failures;
                fail("-abc shift violated at " + triple_str(a, b, c));
            }
        }
        res.lines.push_back("shift [a,b,c]=[a,b,-abc]: " + std::to_string(done) + " triples, " +
                            std::to_string(failures) + " failures");
    }

    // [a,b,-ab] = 0 for coprime positive pairs
    {
        rng::Xoshiro256 gen(rng::derive_seed(seed, 4));
        std::uint64_t want = 200, done = 0, failures = 0;
        while (done < want) {
            i64 a = std::abs(random_entry(gen, pool, 2)), b = std::abs(random_entry(gen, pool, 2));
            SquareClass A = SquareClass::from_integer(a), B = SquareClass::from_integer(b);
            if (A.is_trivial() || B.is_trivial()) continue;
            if (std::gcd(A.field_discriminant(), B.field_discriminant()) != 1) continue;
            SquareClass C = A * B * SquareClass::from_integer(-1);
            if (!redei::is_admissible(A, B, C).admissible) continue;
            ++done;
            if (redei::redei_symbol(A, B, C) != 0) {
                ++failures;
                fail("[a,b,-ab] != 0 at a=" + std::to_string(a) + " b=" + std::to_string(b));
            }
        }
        res.lines.push_back("[a,b,-ab]=0: " + std::to_string(done) + " pairs, " +
                            std::to_string(failures) + " failures");
    }
    return res;
}

SuiteResult run_reflection_suite(std::uint64_t per_theorem, std::uint64_t seed) {
    SuiteResult res;
    res.suite = "reflection";
    using reflection::Theorem;
    int t_idx = 0;
    for (Theorem thm : {Theorem::t28i, Theorem::t28ii, Theorem::t28self, Theorem::swapmin, Theorem::swapped}) {
        rng::Xoshiro256 gen(rng::derive_seed(seed, 100 + std::uint64_t(t_idx++)));
        std::uint64_t done = 0, failures = 0, draws = 0;
        while (done < per_theorem) {
            if (++draws > per_theorem * 40000) {
                res.passed = false;
                res.first_failure = std::string("generator starved for theorem ") + reflection::theorem_name(thm);
                break;
            }
            auto cfg = reflection::sample_config(thm, gen);
            if (!cfg) continue;
            reflection::Outcome out = reflection::verify(thm, *cfg);
            ++done;
            if (!out.holds) {
                ++failures;
                res.passed = false;
                if (res.first_failure.empty())
                    res.first_failure = std::string("theorem ") + reflection::theorem_name(thm) +
                                        " fails at d=" + std::to_string(cfg->d) + " p=(" +
                                        std::to_string(cfg->p1) + "," + std::to_string(cfg->p2) + ") q=(" +
                                        std::to_string(cfg->q1) + "," + std::to_string(cfg->q2) + ") a=" +
                                        std::to_string(cfg->a) + " b=" + std::to_string(cfg->b);
            }
        }
        res.lines.push_back(std::string("theorem ") + reflection::theorem_name(thm) + ": " +
                            std::to_string(done) + " configurations, " + std::to_string(failures) +
                            " failures");
    }
    return res;
}

SuiteResult run_combinatorics_suite(int eps_enum_cap) {
    SuiteResult res;
    res.suite = "combinatorics";
    // every factor-size tuple with product <= 18, m <= 3
    std::vector<std::vector<int>> tuples;
    for (int m = 1; m <= 3; ++m) {
        std::vector<int> cur(std::size_t(m), 2);
        while (true) {
            i64 prod = 1;
            for (int s : cur) prod *= s;
            if (prod <= 18) tuples.push_back(cur);
            int k = 0;
            for (; k < m; ++k) {
                if (++cur[std::size_t(k)] <= 18) break;
                cur[std::size_t(k)] = 2;
            }
            if (k == m) break;
        }
    }
    std::uint64_t dim_checked = 0, dim_bad = 0;
    for (auto& t : tuples) {
        combinatorics::ProductSpace sp{t};
        if (sp.total() > 18) continue;
        ++dim_checked;
        if (combinatorics::image_dimension_bruteforce(sp) != sp.image_dim_formula()) {
            ++dim_bad;
            res.passed = false;
            if (res.first_failure.empty()) res.first_failure = "image dimension formula mismatch";
        }
    }
    res.lines.push_back("dim A(X) = prod(|X_i|-1): " + std::to_string(dim_checked) + " spaces, " +
                        std::to_string(dim_bad) + " mismatches");

    std::uint64_t bound_checked = 0, bound_bad = 0, hoeff_bad = 0;
    for (auto& t : tuples) {
        combinatorics::ProductSpace sp{t};
        if (sp.total() > eps_enum_cap) continue;
        for (double eps : {0.1, 0.2, 0.3, 0.4}) {
            auto c = combinatorics::count_eps_bad(sp, eps);
            ++bound_checked;
            if (double(c.bad_g) > c.bound + 1e-9) {
                ++bound_bad;
                res.passed = false;
                if (res.first_failure.empty()) res.first_failure = "eps-bad count exceeds the bound";
            }
            if (c.f_fraction > c.f_bound + 1e-12) {
                ++hoeff_bad;
                res.passed = false;
                if (res.first_failure.empty()) res.first_failure = "Hoeffding fraction exceeded";
            }
        }
    }
    res.lines.push_back("eps-bad g count <= bound: " + std::to_string(bound_checked) + " cases, " +
                        std::to_string(bound_bad) + " violations");
    res.lines.push_back("eps-bad F fraction <= 2exp(-2eps^2|X|): " + std::to_string(bound_checked) +
                        " cases, " + std::to_string(hoeff_bad) + " violations");
    return res;
}

SuiteResult run_markov_suite(std::uint64_t samples, std::uint64_t seed) {
    SuiteResult res;
    res.suite = "markov";
    using densities::rat;
    // enumeration vs chain, exact
    std::uint64_t mism = 0;
    for (int n = 0; n <= 5; ++n) {
        auto e = densities::corank_dist_enumerated(n);
        auto c = densities::corank_dist_chain(n);
        if (e != c) {
            ++mism;
            res.passed = false;
            if (res.first_failure.empty()) res.first_failure = "corank enumeration != chain at n=" + std::to_string(n);
        }
    }
    res.lines.push_back("corank census == chain (n <= 5): " + std::to_string(mism) + " mismatches");

    // stationarity: exact rational fixed point and row stochasticity
    bool fixed_ok = true, rows_ok = true;
    for (int j = 0; j <= 24; ++j) {
        rat lhs = 0;
        for (int i = std::max(0, j - 1); i <= j + 1; ++i)
            lhs += densities::stationary_over_alpha(i) * densities::transition(i, j);
        if (lhs != densities::stationary_over_alpha(j)) fixed_ok = false;
        rat row = densities::transition(j, j - 1) + densities::transition(j, j) + densities::transition(j, j + 1);
        if (row != 1) rows_ok = false;
    }
    if (!fixed_ok || !rows_ok) {
        res.passed = false;
        if (res.first_failure.empty()) res.first_failure = "stationary distribution is not a fixed point";
    }
    res.lines.push_back(std::string("pi P = pi (exact, j <= 24): ") + (fixed_ok ? "ok" : "VIOLATED"));
    res.lines.push_back(std::string("rows of P sum to 1 (exact): ") + (rows_ok ? "ok" : "VIOLATED"));

    // empirical corank of random symmetric matrices vs the chain
    {
        const int n = 6;
        auto chain = densities::corank_dist_chain(n);
        std::vector<std::uint64_t> counts(std::size_t(n) + 1, 0);
        for (std::uint64_t s = 0; s < samples; ++s) {
            auto m = f2linalg::F2Matrix::random_symmetric(n, rng::derive_seed(seed, s));
            ++counts[std::size_t(n - m.rank())];
        }
        double tv = 0;
        for (int k = 0; k <= n; ++k)
            tv += std::abs(double(counts[std::size_t(k)]) / double(samples) -
                           static_cast<double>(chain[std::size_t(k)]));
        tv /= 2;
        res.lines.push_back("empirical corank TV distance at n=6: " + std::to_string(tv) + " (" +
                            std::to_string(samples) + " samples)");
        if (tv > 0.01) {
            res.passed = false;
            if (res.first_failure.empty()) res.first_failure = "empirical corank TV distance above 0.01";
        }
    }
    return res;
}

SuiteResult run_oracle_suite(i64 max_d, int threads) {
    SuiteResult res;
    res.suite = "oracle";
    std::atomic<i64> checked{0};
    std::atomic<bool> ok{true};
    std::mutex fail_mu;
    std::string first_fail;
    const i64 chunk = 4096;
    std::vector<std::pair<i64, i64>> chunks;
    for (i64 lo = 5; lo <= max_d; lo += chunk) chunks.emplace_back(lo, std::min(max_d, lo + chunk - 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks.size()) break;
            for (i64 d = chunks[i].first; d <= chunks[i].second; ++d) {
                if (!arith::in_pell_family(d)) continue;
                std::vector<i64> primes;
                for (auto& [p, e] : arith::factor_generic(d).factors) primes.push_back(p);
                auto sp = redei::symbolic_profile(d, primes);
                quadforms::ClassGroup g(d, std::max<i64>(max_d, 1000000));
                auto op = g.profile();
                ++checked;
                bool agree = sp.rk4_narrow == op.rk4_narrow && sp.rk8_narrow == op.rk8_narrow &&
                             sp.rk4_ordinary == op.rk4_ordinary && sp.neg_pell == op.neg_pell &&
                             sp.omega - 1 == op.rk2;
                // the pell verdicts must also agree among themselves
                bool pell_ok =
                    pell::neg_pell_by_period(pell::radicand(d)).solvable ==
                        pell::neg_pell_by_unit(pell::radicand(d)).solvable &&
                    pell::neg_pell_by_period(pell::radicand(d)).solvable == op.neg_pell;
                if (!agree || !pell_ok) {
                    ok = false;
                    std::lock_guard<std::mutex> lk(fail_mu);
                    if (first_fail.empty()) first_fail = "oracle mismatch at D = " + std::to_string(d);
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::max(1, threads); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    res.passed = ok;
    res.first_failure = first_fail;
    res.lines.push_back("rk4/rk8/rk4_ordinary/neg_pell vs class-group oracle, D <= " +
                        std::to_string(max_d) + ": " + std::to_string(checked.load()) +
                        " discriminants, " + (ok ? "0 mismatches" : "MISMATCHES FOUND"));
    return res;
}

SuiteResult run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed, i64 max_d,
                      int threads) {
    if (name == "redei") return run_redei_suite(trials ? trials : 1000, seed);
    if (name == "reflection") return run_reflection_suite(trials ? trials : 100, seed);
    if (name == "combinatorics") return run_combinatorics_suite();
    if (name == "markov") return run_markov_suite(trials ? trials : 100000, seed);
    if (name == "oracle") return run_oracle_suite(max_d ? max_d : 100000, threads);
    SuiteResult res;
    res.suite = name;
    res.passed = false;
    res.first_failure = "unknown suite (expected redei|reflection|combinatorics|markov|oracle)";
    return res;
}

}  // namespace pellrank::verify
