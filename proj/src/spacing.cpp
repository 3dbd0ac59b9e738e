#include "spacing.hpp"

#include <cmath>
#include <stdexcept>

namespace pellrank::spacing {

void enumerate_S(i64 x, const std::function<void(const SpacingProfile&)>& fn) {
    if (x < 2) return;
    SpacingProfile one;
    fn(one);  // n = 1, r = 0, by convention
    arith::segmented_factor_range(2, x, [&](i64 n, const std::vector<std::pair<i64, int>>& f) {
        SpacingProfile p;
        p.n = n;
        for (auto& [q, e] : f) {
            if (e > 1 || q % 4 == 3) return;
            p.primes.push_back(q);
        }
        fn(p);
    });
}

bool is_member_S(i64 n) {
    if (n < 1) return false;
    if (n == 1) return true;
    for (auto& [p, e] : arith::factor_generic(n).factors)
        if (e > 1 || p % 4 == 3) return false;
    return true;
}

namespace {

// compares with a long double re-check when the double margin is tiny
bool strict_less(double a, double b) {
    if (std::abs(a - b) > 1e-9) return a < b;
    return static_cast<long double>(a) < static_cast<long double>(b);
}

}  // namespace

bool is_comfortably_spaced(const SpacingProfile& p, double y1) {
    if (y1 < 3) throw std::domain_error("is_comfortably_spaced: y1 must be at least 3");
    for (std::size_t i = 0; i < p.primes.size(); ++i) {
        double pi = double(p.primes[i]);
        if (pi <= y1) continue;
        if (!(2 * y1 < pi)) return false;
        if (i + 1 < p.primes.size() && !(pi < double(p.primes[i + 1]) / 2)) return false;
    }
    return true;
}

bool is_regular(const SpacingProfile& p, double eta) {
    if (eta <= 1) throw std::domain_error("is_regular: eta must exceed 1");
    int r = p.r();
    for (int i = 1; 3 * i < r; ++i) {
        double lhs = std::abs(0.5 * std::log(std::log(double(p.primes[std::size_t(i - 1)]))) - double(i));
        double rhs = std::pow(eta, 0.2) * std::pow(std::max(double(i), eta), 0.8);
        if (!strict_less(lhs, rhs)) return false;
    }
    return true;
}

bool is_extravagant(const SpacingProfile& p, i64 x) {
    if (x < p.n) throw std::domain_error("is_extravagant: x below the profile");
    int r = p.r();
    double lll = std::log(std::log(std::log(double(x))));
    double prefix = 0;  // sum of log p_j below the current index
    double half_sqrt_r = 0.5 * std::sqrt(double(r));
    for (int i = 1; i <= r; ++i) {
        double logp = std::log(double(p.primes[std::size_t(i - 1)]));
        if (strict_less(half_sqrt_r, double(i)) && strict_less(double(i), 0.5 * double(r))) {
            double loglogp = std::log(logp);
            double rhs = loglogp * loglogp * lll * prefix;
            if (!strict_less(logp, rhs)) return true;  // log p_i >= rhs
        }
        prefix += logp;
    }
    return false;
}

double mertens_partial(i64 x) {
    if (x < 10) throw std::domain_error("mertens_partial: x < 10");
    double sum = 0;
    for (i64 p : arith::primes_below(x + 1))
        if (p % 4 != 3) sum += 1.0 / double(p);
    return sum - 0.5 * std::log(std::log(double(x)));
}

SpacingReport spacing_statistics(i64 x, double y1, double eta) {
    SpacingReport rep;
    rep.y1 = y1;
    rep.eta = eta;
    rep.counts.x = x;
    rep.counts.mu = 0.5 * std::log(std::log(double(x)));
    double window = std::pow(rep.counts.mu, 2.0 / 3.0);
    std::map<int, SpacingRow> rows;
    const double ladder[3] = {y1, 10 * y1, 100 * y1};
    rep.y1_trend.resize(3);
    for (int k = 0; k < 3; ++k) rep.y1_trend[std::size_t(k)].y1 = ladder[k];
    enumerate_S(x, [&](const SpacingProfile& p) {
        ++rep.counts.phi;
        ++rep.counts.phi_r[p.r()];
        if (p.r() == 0) return;  // n = 1 carries no prime list
        if (std::abs(double(p.r()) - rep.counts.mu) >= window) return;
        SpacingRow& row = rows[p.r()];
        row.r = p.r();
        ++row.total;
        if (!is_comfortably_spaced(p, y1)) ++row.fail_comfortable;
        if (!is_regular(p, eta)) ++row.fail_regular;
        if (!is_extravagant(p, x)) ++row.fail_extravagant;
        for (int k = 0; k < 3; ++k) {
            ++rep.y1_trend[std::size_t(k)].total;
            if (!is_comfortably_spaced(p, ladder[k])) ++rep.y1_trend[std::size_t(k)].fail_comfortable;
        }
    });
    for (auto& [r, row] : rows) rep.rows.push_back(row);
    rep.mertens_estimate = mertens_partial(x);
    return rep;
}

}  // namespace pellrank::spacing
