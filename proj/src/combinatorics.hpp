#ifndef PELLRANK_COMBINATORICS_HPP
#define PELLRANK_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

#include "arith.hpp"

// The product-space difference operator d, the image-dimension formula, and
// the epsilon-bad counting bound.

namespace pellrank::combinatorics {

using arith::i64;

struct ProductSpace {
    std::vector<int> factor_sizes;  // |X_1|, ..., |X_m|, each >= 1

    int m() const { return int(factor_sizes.size()); }
    i64 total() const {
        i64 t = 1;
        for (int s : factor_sizes) t *= s;
        return t;
    }
    i64 image_dim_formula() const {
        i64 t = 1;
        for (int s : factor_sizes) t *= s - 1;
        return t;
    }
    // mixed-radix decode of the flat index
    std::vector<int> decode(i64 idx) const;
    i64 encode(const std::vector<int>& coords) const;
};

// functions X -> F2 and X x X -> F2 as bit tables over flat indices
using BoolFunction = std::vector<std::uint64_t>;  // packed bits

int get_bit(const BoolFunction& f, i64 idx);
void set_bit(BoolFunction& f, i64 idx, int v);
BoolFunction make_function(i64 domain_size);

// dF(x1, x2) = sum over the 2^m mixed tuples v(x1, x2)
BoolFunction d_operator(const ProductSpace& space, const BoolFunction& f);

// dim of im(d): brute-force rank of the images of a basis of V, or the
// product formula; the brute force requires |X| <= 18
i64 image_dimension_bruteforce(const ProductSpace& space);

struct EpsBadCount {
    i64 bad_f = 0;        // number of eps-bad F in V
    i64 bad_g = 0;        // number of eps-bad g in A(X)
    double bound = 0;     // theorem bound scaled by |A(X)|
    double f_fraction = 0;
    double f_bound = 0;   // 2 exp(-2 eps^2 |X|)
};

// exhaustive over V: marks eps-bad F, projects to g = dF, counts bad g
EpsBadCount count_eps_bad(const ProductSpace& space, double eps);

double hoeffding_fraction(const ProductSpace& space, double eps);

}  // namespace pellrank::combinatorics

#endif
