#include "combinatorics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "f2linalg.hpp"

namespace pellrank::combinatorics {

std::vector<int> ProductSpace::decode(i64 idx) const {
    std::vector<int> coords(factor_sizes.size());
    for (std::size_t i = 0; i < factor_sizes.size(); ++i) {
        coords[i] = int(idx % factor_sizes[i]);
        idx /= factor_sizes[i];
    }
    return coords;
}

i64 ProductSpace::encode(const std::vector<int>& coords) const {
    i64 idx = 0;
    for (std::size_t i = factor_sizes.size(); i-- > 0;) idx = idx * factor_sizes[i] + coords[i];
    return idx;
}

int get_bit(const BoolFunction& f, i64 idx) { return int(f[std::size_t(idx >> 6)] >> (idx & 63) & 1); }

void set_bit(BoolFunction& f, i64 idx, int v) {
    std::uint64_t mask = std::uint64_t(1) << (idx & 63);
    if (v & 1)
        f[std::size_t(idx >> 6)] |= mask;
    else
        f[std::size_t(idx >> 6)] &= ~mask;
}

BoolFunction make_function(i64 domain_size) {
    return BoolFunction(std::size_t((domain_size + 63) / 64), 0);
}

BoolFunction d_operator(const ProductSpace& space, const BoolFunction& f) {
    const i64 n = space.total();
    const int m = space.m();
    BoolFunction g = make_function(n * n);
    std::vector<int> c1, c2, mixed;
    mixed.resize(std::size_t(m));
    for (i64 x1 = 0; x1 < n; ++x1) {
        c1 = space.decode(x1);
        for (i64 x2 = 0; x2 < n; ++x2) {
            c2 = space.decode(x2);
            int acc = 0;
            for (std::uint32_t v = 0; v < (1u << m); ++v) {
                for (int j = 0; j < m; ++j) mixed[std::size_t(j)] = (v >> j & 1) ? c2[std::size_t(j)] : c1[std::size_t(j)];
                acc ^= get_bit(f, space.encode(mixed));
            }
            set_bit(g, x1 * n + x2, acc);
        }
    }
    return g;
}

i64 image_dimension_bruteforce(const ProductSpace& space) {
    const i64 n = space.total();
    if (n > 18) throw std::length_error("image_dimension_bruteforce: |X| > 18");
    // rank of {d(delta_x)} over a basis of V
    std::vector<std::vector<std::uint64_t>> rows;
    for (i64 x = 0; x < n; ++x) {
        BoolFunction f = make_function(n);
        set_bit(f, x, 1);
        rows.push_back(d_operator(space, f));
    }
    return f2linalg::rank_of_rows(rows, int(n * n));
}

EpsBadCount count_eps_bad(const ProductSpace& space, double eps) {
    const i64 n = space.total();
    if (n > 18) throw std::length_error("count_eps_bad: |X| > 18");
    const int m = space.m();
    EpsBadCount out;
    // precompute d(delta_x) to project any F quickly
    std::vector<BoolFunction> dbasis;
    for (i64 x = 0; x < n; ++x) {
        BoolFunction f = make_function(n);
        set_bit(f, x, 1);
        dbasis.push_back(d_operator(space, f));
    }
    std::map<std::vector<std::uint64_t>, bool> g_bad;  // g -> has an eps-bad preimage
    const i64 total_f = i64{1} << n;
    for (i64 mask = 0; mask < total_f; ++mask) {
        int zeros = int(n - __builtin_popcountll(std::uint64_t(mask)));
        bool f_bad = std::abs(double(zeros) - double(n) / 2) >= eps * double(n);
        if (f_bad) ++out.bad_f;
        BoolFunction g = make_function(n * n);
        for (i64 x = 0; x < n; ++x)
            if (mask >> x & 1)
                for (std::size_t w = 0; w < g.size(); ++w) g[w] ^= dbasis[std::size_t(x)][w];
        auto [it, inserted] = g_bad.try_emplace(g, f_bad);
        if (!inserted && f_bad) it->second = true;
    }
    for (auto& [g, bad] : g_bad)
        if (bad) ++out.bad_g;
    i64 adim = space.image_dim_formula();
    if (i64(g_bad.size()) != (i64{1} << adim)) throw std::logic_error("count_eps_bad: image size mismatch");
    out.bound = std::pow(2.0, double(1 + n - adim)) * std::exp(-2.0 * eps * eps * double(n)) *
                std::pow(2.0, double(adim));
    out.f_fraction = double(out.bad_f) / double(total_f);
    out.f_bound = 2.0 * std::exp(-2.0 * eps * eps * double(n));
    (void)m;
    return out;
}

double hoeffding_fraction(const ProductSpace& space, double eps) {
    return count_eps_bad(space, eps).f_fraction;
}

}  // namespace pellrank::combinatorics
