#ifndef PELLRANK_QUADFORMS_HPP
#define PELLRANK_QUADFORMS_HPP

#include <functional>
#include <map>
#include <vector>

#include "arith.hpp"

// Oracle side: the narrow class group of a positive fundamental discriminant
// realized as the form class group, with its full 2-Sylow structure.

namespace pellrank::quadforms {

using arith::i64;
using arith::i128;

struct QuadForm {
    i64 a = 0, b = 0, c = 0;  // b^2 - 4ac = D
    auto operator<=>(const QuadForm&) const = default;
};

struct TwoSylow {
    std::vector<i64> cyclic_orders;  // powers of 2 >= 2, ascending (each divides the next)

    int rank_pow(int k) const {  // rk_{2^k}: number of invariant factors of order >= 2^k
        int n = 0;
        for (i64 d : cyclic_orders)
            if (d >= (i64{1} << k)) ++n;
        return n;
    }
};

struct TwoPartProfile {
    i64 d = 0;
    int rk2 = 0;
    int rk4_narrow = 0;
    int rk8_narrow = 0;
    int rk4_ordinary = 0;
    bool neg_pell = false;
};

// 2-Sylow invariant factors of an arbitrary finite abelian group given as a
// composition table over element indices 0..n-1 (identity at `id`).
TwoSylow two_sylow_of_table(int n, int id, const std::function<int(int, int)>& compose);

class ClassGroup {
  public:
    explicit ClassGroup(i64 d, i64 oracle_bound = 1'000'000);

    i64 disc() const { return d_; }
    i64 class_number() const { return i64(reps_.size()); }  // h+
    i64 class_number_ordinary() const;
    int num_classes() const { return int(reps_.size()); }
    const QuadForm& rep(int idx) const { return reps_[std::size_t(idx)]; }

    int identity() const { return identity_; }
    int compose(int i, int j) const;
    int square(int i) const { return compose(i, i); }
    int class_of(QuadForm f) const;  // reduce and look up

    int sign_class() const { return sign_class_; }            // class of the (-1, ., .) twist
    int ramified_class(i64 p) const;                          // p | D prime
    int b_class(i64 b_signed) const;                          // class of B_D(b)
    bool neg_pell() const { return sign_class_ == identity_; }

    TwoSylow two_sylow() const;
    TwoSylow two_sylow_ordinary() const;
    TwoPartProfile profile() const;

    // oracle-side Artin pairing <chi_a, b>_D through the explicit 2-Sylow
    // structure; a positive divisor class of D, b a signed divisor class.
    int artin_pairing(i64 a_pos, i64 b_signed) const;

    // membership tests used by pairing cross-checks
    bool in_two_cl(int idx) const;   // idx in 2*CL+
    bool in_four_cl(int idx) const;  // idx in 4*CL+

    QuadForm reduce(QuadForm f) const;

  private:
    i64 d_;
    i64 sqrt_d_;
    std::vector<QuadForm> reps_;
    std::map<QuadForm, int> class_index_;  // every reduced form -> class
    int identity_ = 0;
    int sign_class_ = 0;

    QuadForm rho(QuadForm f) const;
    bool is_reduced(const QuadForm& f) const;
    void enumerate_classes();
};

}  // namespace pellrank::quadforms

#endif
