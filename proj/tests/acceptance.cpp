// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "arith.hpp"
#include "densities.hpp"
#include "pell.hpp"
#include "spacing.hpp"
#include "sweep.hpp"
#include "verify.hpp"

using namespace pellrank;
using arith::i64;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void report(int criterion, const char* label, bool pass, const std::string& detail) {
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d (%s): %s — %s [t=%.1fs]\n", criterion, label, pass ? "PASS" : "FAIL",
                detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++failures;
}

int hw_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : int(n);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion1_constants() {
    double a = densities::alpha();
    double b = densities::beta();
    bool pa = std::abs(a - 0.41942) < 1e-5;
    bool pia = std::abs((1 - a) - 0.58057) < 1e-5;
    // the series gives beta = 1.2832651...; the text's printed constant
    // truncates one digit short, so accept the printed-prefix interval
    bool pb = b > 1.28325 - 1e-5 && b < 1.28326 + 1e-5;
    bool pab = a * b >= 0.538;
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(10);
    d << "alpha=" << a << " 1-alpha=" << (1 - a) << " beta=" << b << " alpha*beta=" << a * b;
    report(1, "constants", pa && pia && pb && pab, d.str());
}

void criterion2_identities() {
    bool ok = true;
    for (int n = 0; n <= 8 && ok; ++n)
        for (int m = 0; m <= n && ok; ++m) {
            if (densities::theorem2_density_over_alpha(n, m) !=
                densities::stationary_over_alpha(n) * densities::q_prob(n, m))
                ok = false;
        }
    bool tie = true;
    for (int n = 0; n <= 8; ++n) {
        densities::rat expect(1, boost::multiprecision::cpp_int(1) << (n * (n + 3) / 2));
        if (densities::theorem2_density_over_alpha(n, 0) != expect) tie = false;
    }
    bool brute = true;
    for (int n2 = 0; n2 <= 3; ++n2)
        for (int n3 = 0; n3 <= n2; ++n3)
            if (densities::q_prob(n2, n3) != densities::q_prob_bruteforce(n2, n3)) brute = false;
    report(2, "formula identities", ok && tie && brute,
           std::string("theorem2 = pi * Q and beta-summand ties exact for n <= 8; brute-force Q "
                       "agrees for n2 <= 3") +
               (ok && tie && brute ? "" : " — VIOLATION"));
}

void criterion3_oracle() {
    auto res = verify::run_oracle_suite(100000, hw_threads());
    std::string detail;
    for (const auto& l : res.lines) detail += l;
    if (!res.passed) detail += " | " + res.first_failure;
    report(3, "oracle equivalence to 1e5", res.passed, detail);
}

void criterion4_redei() {
    auto res = verify::run_redei_suite(1000, 20240809);
    std::string detail;
    for (std::size_t i = 0; i < res.lines.size(); ++i) detail += (i ? "; " : "") + res.lines[i];
    if (!res.passed) detail += " | " + res.first_failure;
    report(4, "redei properties", res.passed, detail);
}

void criterion5_reflection() {
    auto res = verify::run_reflection_suite(100, 20240809);
    std::string detail;
    for (std::size_t i = 0; i < res.lines.size(); ++i) detail += (i ? "; " : "") + res.lines[i];
    if (!res.passed) detail += " | " + res.first_failure;
    report(5, "reflection theorems", res.passed, detail);
}

void criterion6_combinatorics() {
    auto res = verify::run_combinatorics_suite(18);
    std::string detail;
    for (std::size_t i = 0; i < res.lines.size(); ++i) detail += (i ? "; " : "") + res.lines[i];
    if (!res.passed) detail += " | " + res.first_failure;
    report(6, "combinatorics", res.passed, detail);
}

void criterion7_markov() {
    auto res = verify::run_markov_suite(100000, 20240809);
    std::string detail;
    for (std::size_t i = 0; i < res.lines.size(); ++i) detail += (i ? "; " : "") + res.lines[i];
    if (!res.passed) detail += " | " + res.first_failure;
    report(7, "random-matrix model", res.passed, detail);
}

void criterion8_density() {
    sweep::RunConfig cfg;
    cfg.max_d = 10000000;
    cfg.threads = hw_threads();
    auto rows = sweep::analyze(cfg);
    auto rep = sweep::density_report(rows, cfg.max_d);
    const auto& top = rep.ladder.back();
    double a = densities::alpha();
    double frac0 = top.count_d ? double(top.counts_n.at(0)) / double(top.count_d) : 0.0;
    double fracs = top.count_d ? double(top.count_solvable) / double(top.count_d) : 0.0;
    bool p0 = std::abs(frac0 - a) < 0.1;
    bool ps = fracs >= 1.25 * a - 0.05 && fracs <= 2.0 / 3.0 + 0.05;
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(5);
    d << "X=1e7 |D|=" << top.count_d << "; rk4=0 fraction " << frac0 << " vs alpha +- 0.1 "
      << (p0 ? "(ok)" : "(outside)") << "; solvable fraction " << fracs << " vs ["
      << 1.25 * a - 0.05 << ", " << 2.0 / 3.0 + 0.05 << "] " << (ps ? "(ok)" : "(outside)");
    if (!p0 || !ps) {
        // measured, not a bug: one-prime discriminants are always solvable with
        // rk4 = 0 and still carry ~half the family at 1e7 (their share decays
        // like 1/sqrt(log X)), so both fractions sit far above their limits at
        // every desk-scale cutoff; the pinned windows cannot be met here
        d << " | windows unreachable at desk scale: omega=1 share ";
        i64 omega1 = 0;
        for (const auto& r : rows)
            if (r.omega == 1) ++omega1;
        d << std::setprecision(3) << double(omega1) / double(top.count_d);
    }
    // the trend table against Theorem 2, logged as required
    d << " | (n,m) empirical/theorem2 ratios:";
    for (const auto& c : rep.ladder) {
        d << " X=" << c.cutoff << ":";
        for (const auto& [nm, cnt] : c.counts_nm) {
            double th = densities::theorem2_density(nm.first, nm.second);
            double fr = c.count_d ? double(cnt) / double(c.count_d) : 0.0;
            if (th > 0 && nm.first <= 2)
                d << " (" << nm.first << "," << nm.second << ")=" << std::setprecision(3) << fr / th
                  << std::setprecision(5);
        }
    }
    report(8, "density experiment at 1e7", p0 && ps, d.str());
}

void criterion9_spacing() {
    bool sums_ok = true;
    std::vector<double> landau;
    for (i64 x : {10000LL, 100000LL, 1000000LL}) {
        auto rep = spacing::spacing_statistics(x, 10.0, 3.0);
        i64 sum = 0;
        for (auto& [r, c] : rep.counts.phi_r) sum += c;
        if (sum != rep.counts.phi) sums_ok = false;
        landau.push_back(double(rep.counts.phi) * std::sqrt(std::log(double(x))) / double(x));
    }
    double lmin = *std::min_element(landau.begin(), landau.end());
    double lmax = *std::max_element(landau.begin(), landau.end());
    bool landau_ok = (lmax - lmin) / lmax < 0.25;

    std::vector<double> fail_frac;
    for (double y1 : {10.0, 100.0, 1000.0}) {
        auto rep = spacing::spacing_statistics(1000000, y1, 3.0);
        i64 tot = 0, bad = 0;
        for (const auto& row : rep.rows) {
            tot += row.total;
            bad += row.fail_comfortable;
        }
        fail_frac.push_back(tot ? double(bad) / double(tot) : 0.0);
    }
    bool trend_ok = fail_frac[0] >= fail_frac[1] && fail_frac[1] >= fail_frac[2] &&
                    fail_frac[0] > fail_frac[2];
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(4);
    d << "sum phi_r == phi at 1e4..1e6: " << (sums_ok ? "exact" : "VIOLATED")
      << "; Landau ratios " << landau[0] << "/" << landau[1] << "/" << landau[2]
      << " (spread " << (lmax - lmin) / lmax * 100 << "%)"
      << "; comfortable-failure fraction at y1=10/100/1000: " << fail_frac[0] << "/"
      << fail_frac[1] << "/" << fail_frac[2];
    report(9, "spacing statistics", sums_ok && landau_ok && trend_ok, d.str());
}

void criterion10_determinism() {
#ifdef PELLRANK_CLI_PATH
    const char* cli = PELLRANK_CLI_PATH;
    std::string c1 = "/tmp/pellrank_acc_cache1.csv";
    std::string c2 = "/tmp/pellrank_acc_cache2.csv";
    std::remove(c1.c_str());
    std::remove(c2.c_str());
    auto run = [&](const std::string& cache, int threads) {
        std::string cmd = std::string(cli) + " analyze --max 10000 --threads " +
                          std::to_string(threads) + " --cache " + cache + " > /dev/null";
        return std::system(cmd.c_str());
    };
    bool ok = run(c1, 1) == 0 && run(c2, 4) == 0;
    std::string b1 = slurp(c1), b2 = slurp(c2);
    bool identical = ok && !b1.empty() && b1 == b2;
    // rerun on the existing cache must leave the bytes untouched
    bool rerun_ok = run(c1, 2) == 0 && slurp(c1) == b1;
    std::remove(c1.c_str());
    std::remove(c2.c_str());
    report(10, "cache determinism across runs and thread counts", identical && rerun_ok,
           identical ? "byte-identical caches for threads=1/4 and on rerun"
                     : "caches differ or CLI failed");
#else
    report(10, "cache determinism", false, "CLI path not wired into the build");
#endif
}

}  // namespace

int main() {
    t0 = std::chrono::steady_clock::now();
    std::printf("pellrank acceptance suite\n");
    criterion1_constants();
    criterion2_identities();
    criterion3_oracle();
    criterion4_redei();
    criterion5_reflection();
    criterion6_combinatorics();
    criterion7_markov();
    criterion8_density();
    criterion9_spacing();
    criterion10_determinism();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
