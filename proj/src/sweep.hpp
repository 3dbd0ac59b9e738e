#ifndef PELLRANK_SWEEP_HPP
#define PELLRANK_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "densities.hpp"

// Parallel discriminant sweeps, the append-only result cache, and the
// density report assembled from cached rows.

namespace pellrank::sweep {

using arith::i64;

struct ResultRow {
    i64 d = 0;
    int omega = 0;
    int rk4_narrow = 0;
    int rk8_narrow = 0;
    int rk4_ordinary = 0;
    bool neg_pell = false;
    bool oracle_checked = false;
};

struct RunConfig {
    i64 max_d = 10000;
    int threads = 1;
    std::uint64_t seed = 0;
    i64 oracle_bound = 0;  // 0 disables oracle cross-checking
    std::string cache_path;
    std::string format = "csv";  // csv | json
};

// one row per Pell-family fundamental discriminant in [lo, hi]
std::vector<ResultRow> sweep_range(i64 lo, i64 hi, i64 oracle_bound);

// full parallel sweep, rows sorted by D; result independent of thread count
std::vector<ResultRow> analyze(const RunConfig& cfg);

ResultRow compute_row(i64 d, const std::vector<i64>& primes, i64 oracle_bound);

// cache I/O; the on-disk format is the bit-exact CSV contract
extern const char* cache_header;
std::string cache_to_string(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_cache(const std::string& content);
std::vector<ResultRow> load_cache(const std::string& path);  // throws on malformed rows
void write_cache_if_changed(const std::string& path, const std::vector<ResultRow>& rows);

// recompute a ~1% deterministic sample and compare (throws on mismatch)
void validate_sample(const std::vector<ResultRow>& rows, std::uint64_t seed);

// analyze with cache resume: loads, validates, extends, rewrites when changed
std::vector<ResultRow> analyze_with_cache(const RunConfig& cfg);

densities::DensityCounts counts_at(const std::vector<ResultRow>& rows, i64 cutoff);
densities::DensityReport density_report(const std::vector<ResultRow>& rows, i64 max_cutoff);

}  // namespace pellrank::sweep

#endif
