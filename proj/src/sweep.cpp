#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pell.hpp"
#include "quadforms.hpp"
#include "redei.hpp"
#include "rng.hpp"

namespace pellrank::sweep {

ResultRow compute_row(i64 d, const std::vector<i64>& primes, i64 oracle_bound) {
    redei::SymbolicProfile sp = redei::symbolic_profile(d, primes);
    ResultRow row;
    row.d = d;
    row.omega = sp.omega;
    row.rk4_narrow = sp.rk4_narrow;
    row.rk8_narrow = sp.rk8_narrow;
    row.rk4_ordinary = sp.rk4_ordinary;
    row.neg_pell = sp.neg_pell;
    if (oracle_bound > 0 && d <= oracle_bound) {
        quadforms::ClassGroup g(d, oracle_bound);
        quadforms::TwoPartProfile op = g.profile();
        if (op.rk4_narrow != sp.rk4_narrow || op.rk8_narrow != sp.rk8_narrow ||
            op.rk4_ordinary != sp.rk4_ordinary || op.neg_pell != sp.neg_pell ||
            op.rk2 != sp.omega - 1)
            throw std::logic_error("compute_row: oracle disagrees at D = " + std::to_string(d));
        row.oracle_checked = true;
    }
    return row;
}

std::vector<ResultRow> sweep_range(i64 lo, i64 hi, i64 oracle_bound) {
    std::vector<ResultRow> rows;
    if (hi < 5) return rows;
    lo = std::max<i64>(lo, 5);
    arith::segmented_factor_range(lo, hi + 1, [&](i64 d, const std::vector<std::pair<i64, int>>& f) {
        i64 mod4 = d % 4;
        std::vector<i64> primes;
        if (mod4 == 1) {
            for (auto& [p, e] : f) {
                if (e > 1 || p % 4 == 3) return;
                primes.push_back(p);
            }
        } else if (mod4 == 0) {
            // fundamental even discriminants here are 8m with m odd squarefree
            i64 m = d / 4;
            if (m % 4 != 2) return;  // m = 3 mod 4 would need a 3 mod 4 prime
            for (auto& [p, e] : f) {
                if (p == 2) {
                    if (e != 3) return;
                } else if (e > 1 || p % 4 == 3) {
                    return;
                }
                primes.push_back(p);
            }
        } else {
            return;
        }
        rows.push_back(compute_row(d, primes, oracle_bound));
    });
    return rows;
}

std::vector<ResultRow> analyze(const RunConfig& cfg) {
    const i64 chunk = 1 << 16;  // fixed chunking keeps results thread-count independent
    std::vector<std::pair<i64, i64>> chunks;
    for (i64 lo = 5; lo <= cfg.max_d; lo += chunk) chunks.emplace_back(lo, std::min(cfg.max_d, lo + chunk - 1));
    std::vector<std::vector<ResultRow>> results(chunks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= chunks.size()) break;
            results[i] = sweep_range(chunks[i].first, chunks[i].second, cfg.oracle_bound);
        }
    };
    int nthreads = std::max(1, cfg.threads);
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<ResultRow> rows;
    for (auto& part : results) rows.insert(rows.end(), part.begin(), part.end());
    return rows;
}

const char* cache_header = "D,omega,rk4_narrow,rk8_narrow,rk4_ordinary,neg_pell,oracle_checked";

std::string cache_to_string(const std::vector<ResultRow>& rows) {
    std::string out = cache_header;
    out.push_back('\n');
    for (const ResultRow& r : rows) {
        out += std::to_string(r.d);
        out.push_back(',');
        out += std::to_string(r.omega);
        out.push_back(',');
        out += std::to_string(r.rk4_narrow);
        out.push_back(',');
        out += std::to_string(r.rk8_narrow);
        out.push_back(',');
        out += std::to_string(r.rk4_ordinary);
        out.push_back(',');
        out += r.neg_pell ? "1" : "0";
        out.push_back(',');
        out += r.oracle_checked ? "1" : "0";
        out.push_back('\n');
    }
    return out;
}

std::vector<ResultRow> parse_cache(const std::string& content) {
    std::vector<ResultRow> rows;
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (line != cache_header) throw std::runtime_error("cache: unexpected header");
    i64 prev = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ResultRow r;
        char c1, c2, c3, c4, c5, c6;
        int np = 0, oc = 0;
        std::istringstream ls(line);
        if (!(ls >> r.d >> c1 >> r.omega >> c2 >> r.rk4_narrow >> c3 >> r.rk8_narrow >> c4 >>
              r.rk4_ordinary >> c5 >> np >> c6 >> oc) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',' || c6 != ',')
            throw std::runtime_error("cache: malformed row: " + line);
        r.neg_pell = np != 0;
        r.oracle_checked = oc != 0;
        if (r.d <= prev) throw std::runtime_error("cache: rows not strictly sorted by D");
        prev = r.d;
        rows.push_back(r);
    }
    return rows;
}

std::vector<ResultRow> load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cache: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_cache(ss.str());
}

void write_cache_if_changed(const std::string& path, const std::vector<ResultRow>& rows) {
    std::string fresh = cache_to_string(rows);
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            if (ss.str() == fresh) return;
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + path);
    out << fresh;
    if (!out) throw std::runtime_error("cache: short write to " + path);
}

void validate_sample(const std::vector<ResultRow>& rows, std::uint64_t seed) {
    if (rows.empty()) return;
    rng::Xoshiro256 gen(rng::derive_seed(seed, 0xCAC4Eull));
    std::size_t n = rows.size();
    std::size_t samples = std::max<std::size_t>(1, n / 100);
    for (std::size_t k = 0; k < samples; ++k) {
        const ResultRow& r = rows[gen.below(n)];
        std::vector<i64> primes;
        for (auto& [p, e] : arith::factor_generic(r.d).factors) primes.push_back(p);
        ResultRow fresh = compute_row(r.d, primes, 0);
        if (fresh.omega != r.omega || fresh.rk4_narrow != r.rk4_narrow ||
            fresh.rk8_narrow != r.rk8_narrow || fresh.rk4_ordinary != r.rk4_ordinary ||
            fresh.neg_pell != r.neg_pell)
            throw std::runtime_error("cache: stale row at D = " + std::to_string(r.d));
    }
}

std::vector<ResultRow> analyze_with_cache(const RunConfig& cfg) {
    std::vector<ResultRow> existing;
    bool have_cache = false;
    if (!cfg.cache_path.empty()) {
        std::ifstream probe(cfg.cache_path);
        if (probe) {
            existing = load_cache(cfg.cache_path);
            validate_sample(existing, cfg.seed);
            have_cache = true;
        }
    }
    i64 covered = 0;
    if (have_cache && !existing.empty()) covered = existing.back().d;
    std::vector<ResultRow> rows = existing;
    if (covered < cfg.max_d) {
        RunConfig part = cfg;
        part.max_d = cfg.max_d;
        const i64 chunk = 1 << 16;
        std::vector<std::pair<i64, i64>> chunks;
        for (i64 lo = std::max<i64>(5, covered + 1); lo <= cfg.max_d; lo += chunk)
            chunks.emplace_back(lo, std::min(cfg.max_d, lo + chunk - 1));
        std::vector<std::vector<ResultRow>> results(chunks.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= chunks.size()) break;
                results[i] = sweep_range(chunks[i].first, chunks[i].second, cfg.oracle_bound);
            }
        };
        int nthreads = std::max(1, cfg.threads);
        std::vector<std::thread> pool;
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        for (auto& part_rows : results) rows.insert(rows.end(), part_rows.begin(), part_rows.end());
    }
    if (!cfg.cache_path.empty()) write_cache_if_changed(cfg.cache_path, rows);
    return rows;
}

densities::DensityCounts counts_at(const std::vector<ResultRow>& rows, i64 cutoff) {
    densities::DensityCounts c;
    c.cutoff = cutoff;
    for (const ResultRow& r : rows) {
        if (r.d > cutoff) break;
        ++c.count_d;
        if (r.neg_pell) ++c.count_solvable;
        ++c.counts_n[r.rk4_narrow];
        if (r.rk4_narrow == r.rk4_ordinary) ++c.counts_nm[{r.rk4_narrow, r.rk8_narrow}];
    }
    return c;
}

densities::DensityReport density_report(const std::vector<ResultRow>& rows, i64 max_cutoff) {
    densities::DensityReport rep;
    rep.alpha_value = densities::alpha();
    rep.beta_value = densities::beta();
    for (i64 cut = 10000; cut <= max_cutoff; cut *= 10) rep.ladder.push_back(counts_at(rows, cut));
    if (rep.ladder.empty() || rep.ladder.back().cutoff != max_cutoff)
        rep.ladder.push_back(counts_at(rows, max_cutoff));
    return rep;
}

}  // namespace pellrank::sweep
