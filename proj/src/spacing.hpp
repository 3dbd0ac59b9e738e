#ifndef PELLRANK_SPACING_HPP
#define PELLRANK_SPACING_HPP

#include <functional>
#include <map>
#include <vector>

#include "arith.hpp"

// The set S(x) of squarefree integers free of 3 mod 4 primes, and the three
// spacing statistics on the ordered prime factors.

namespace pellrank::spacing {

using arith::i64;

struct SpacingProfile {
    i64 n = 1;
    std::vector<i64> primes;  // increasing; empty for n = 1
    int r() const { return int(primes.size()); }
};

// yields every member of S(x) in increasing order (n = 1 included with r = 0)
void enumerate_S(i64 x, const std::function<void(const SpacingProfile&)>& fn);

bool is_member_S(i64 n);

// 2 y1 < p_i < p_{i+1}/2 for every prime factor p_i > y1 (upper bound vacuous
// for the largest prime)
bool is_comfortably_spaced(const SpacingProfile& p, double y1);

// |log log(p_i)/2 - i| < eta^{1/5} max(i, eta)^{4/5} for all i < r/3
bool is_regular(const SpacingProfile& p, double eta);

// log p_i >= (log log p_i)^2 * log log log x * sum_{j<i} log p_j
// for some i with r^{1/2}/2 < i < r/2
bool is_extravagant(const SpacingProfile& p, i64 x);

struct CountTable {
    i64 x = 0;
    i64 phi = 0;                 // |S(x)|
    std::map<int, i64> phi_r;    // r -> |S_r(x)|
    double mu = 0;               // log log x / 2
};

struct SpacingRow {
    int r = 0;
    i64 total = 0;
    i64 fail_comfortable = 0;
    i64 fail_regular = 0;
    i64 fail_extravagant = 0;
};

struct TrendPoint {
    double y1 = 0;
    i64 total = 0;
    i64 fail_comfortable = 0;
};

struct SpacingReport {
    CountTable counts;
    double y1 = 0, eta = 0;
    std::vector<SpacingRow> rows;  // r restricted to |r - mu| < mu^{2/3}
    std::vector<TrendPoint> y1_trend;  // comfortable failures at y1 * {1, 10, 100}
    double mertens_estimate = 0;   // sum 1/p - log log x / 2
};

SpacingReport spacing_statistics(i64 x, double y1, double eta);

// sum_{p <= x, p != 3 mod 4} 1/p - log log x / 2
double mertens_partial(i64 x);

}  // namespace pellrank::spacing

#endif
