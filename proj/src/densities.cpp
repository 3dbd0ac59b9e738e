#include "densities.hpp"

#include <cmath>
#include <stdexcept>

#include "f2linalg.hpp"

namespace pellrank::densities {

double alpha(double precision) {
    if (precision < 1e-15) throw std::domain_error("alpha: precision below double resolution");
    // tail of log prod (1 - 2^-j) over odd j is < 2^-J; 60 terms are plenty
    double p = 1.0;
    for (int j = 1; j <= 63; j += 2) p *= 1.0 - std::ldexp(1.0, -j);
    return p;
}

double alpha_inverse_form(double precision) {
    if (precision < 1e-15) throw std::domain_error("alpha: precision below double resolution");
    double p = 1.0;
    for (int j = 1; j <= 63; ++j) p /= 1.0 + std::ldexp(1.0, -j);
    return p;
}

double beta() {
    double s = 0.0;
    for (int n = 0; n <= 12; ++n) s += std::ldexp(1.0, -n * (n + 3) / 2);
    return s;  // next term is 2^{-90}
}

rat theorem2_density_over_alpha(int n, int m) {
    if (m > n || m < 0) throw std::domain_error("theorem2_density: need n >= m >= 0");
    rat num = 1;
    for (int j = m + 1; j <= n; ++j) num *= (boost::multiprecision::cpp_int(1) << n) - (boost::multiprecision::cpp_int(1) << (n - j));
    rat den = rat(boost::multiprecision::cpp_int(1) << (n * (n + 1)));
    for (int k = 1; k <= m; ++k) den *= (boost::multiprecision::cpp_int(1) << k) - 1;
    for (int l = 1; l <= n - m; ++l) den *= (boost::multiprecision::cpp_int(1) << l) - 1;
    return num / den;
}

double theorem2_density(int n, int m) {
    return alpha() * static_cast<double>(theorem2_density_over_alpha(n, m));
}

rat transition(int i, int j) {
    if (i < 0 || j < 0) return 0;
    rat half_pow = rat(1, boost::multiprecision::cpp_int(1) << (i + 1));
    if (j == i || j == i + 1) return half_pow;
    if (j == i - 1) return 1 - rat(1, boost::multiprecision::cpp_int(1) << i);
    return 0;
}

std::vector<rat> corank_dist_enumerated(int n) {
    if (n < 0) throw std::domain_error("corank_dist: n < 0");
    if (n > 5) throw std::length_error("corank_dist_enumerated: n > 5 not enumerable");
    std::vector<rat> dist(std::size_t(n) + 1, rat(0));
    if (n == 0) {
        dist[0] = 1;
        return dist;
    }
    int bits = n * (n + 1) / 2;
    rat unit = rat(1, boost::multiprecision::cpp_int(1) << bits);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << bits); ++mask) {
        f2linalg::F2Matrix m(n, n);
        int b = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                int v = int(mask >> b & 1);
                ++b;
                m.set(i, j, v);
                m.set(j, i, v);
            }
        dist[std::size_t(n - m.rank())] += unit;
    }
    return dist;
}

std::vector<rat> corank_dist_chain(int n) {
    std::vector<rat> cur{rat(1)};  // corank 0 with probability 1
    for (int step = 0; step < n; ++step) {
        std::vector<rat> next(cur.size() + 1, rat(0));
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (cur[i] == 0) continue;
            for (int j = int(i) - 1; j <= int(i) + 1; ++j) {
                if (j < 0) continue;
                rat p = transition(int(i), j);
                if (p != 0) next[std::size_t(j)] += cur[i] * p;
            }
        }
        cur.swap(next);
    }
    cur.resize(std::size_t(n) + 1, rat(0));
    return cur;
}

rat stationary_over_alpha(int j) {
    rat d = 1;
    for (int i = 1; i <= j; ++i) d *= (boost::multiprecision::cpp_int(1) << i) - 1;
    return 1 / d;
}

std::vector<double> markov_stationary(int n_top) {
    if (n_top < 1) throw std::domain_error("markov_stationary: n_top < 1");
    double a = alpha();
    std::vector<double> pi(std::size_t(n_top) + 1);
    for (int j = 0; j <= n_top; ++j) pi[std::size_t(j)] = a * static_cast<double>(stationary_over_alpha(j));
    return pi;
}

rat q_prob(int n2, int n3) {
    if (n3 > n2 || n3 < 0) throw std::domain_error("q_prob: need n2 >= n3 >= 0");
    int r = n2 - n3;
    // number of n2 x n2 matrices of rank r over F2
    rat count = 1;
    for (int i = 0; i < r; ++i) {
        boost::multiprecision::cpp_int pm = (boost::multiprecision::cpp_int(1) << n2) - (boost::multiprecision::cpp_int(1) << i);
        boost::multiprecision::cpp_int pr = (boost::multiprecision::cpp_int(1) << r) - (boost::multiprecision::cpp_int(1) << i);
        count *= rat(pm * pm) / rat(pr);
    }
    rat total = rat(boost::multiprecision::cpp_int(1) << ((n2 + 1) * n2));
    return count / total;
}

rat q_prob_bruteforce(int n2, int n3) {
    if (n2 > 3) throw std::length_error("q_prob_bruteforce: n2 > 3");
    if (n3 > n2 || n3 < 0) throw std::domain_error("q_prob_bruteforce: need n2 >= n3 >= 0");
    int rows = n2 + 1, cols = n2;
    int bits = rows * cols;
    i64 hits = 0, total = i64{1} << bits;
    for (i64 mask = 0; mask < total; ++mask) {
        f2linalg::F2Matrix m(rows, cols);
        int b = 0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.set(i, j, int(mask >> b++ & 1));
        bool bottom_zero = true;
        for (int j = 0; j < cols; ++j)
            if (m.get(rows - 1, j)) bottom_zero = false;
        if (bottom_zero && m.rank() == n2 - n3) ++hits;
    }
    return rat(hits) / rat(total);
}

}  // namespace pellrank::densities
