#ifndef PELLRANK_PELL_HPP
#define PELLRANK_PELL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>

#include "arith.hpp"

// Solvability of x^2 - D y^2 = -1 by period parity and by the norm of the
// unit read off the continued-fraction convergents.

namespace pellrank::pell {

using bigint = boost::multiprecision::cpp_int;
using arith::i64;

enum class Method { period_parity, unit_norm };

struct PellVerdict {
    bool solvable = false;
    std::optional<std::pair<bigint, bigint>> witness;  // minimal (x, y), x^2 - D y^2 = -1
    Method method = Method::period_parity;
};

struct PellDiscriminant {
    i64 d = 0;
    arith::Factorization prime_factors;
    bool pell_family = false;

    static PellDiscriminant make(i64 d);  // throws unless d is a positive fundamental discriminant
};

// Literal equation for any non-square D >= 2: solvable iff the minimal period
// of sqrt(D) is odd; witness read off the convergent at the period end.
PellVerdict neg_pell_by_period(i64 d);

// Minimal unit x + y*sqrt(D) with x^2 - D y^2 = +-1 from the convergents;
// solvable iff its norm is -1. Unit coordinates grow, hence the big integers.
PellVerdict neg_pell_by_unit(i64 d);

// The class-group-facing verdict for a fundamental discriminant: decided on
// the radicand (D odd: D itself; D = 4m: m). Equivalent to CL(D) = CL+(D).
bool neg_pell_fundamental(i64 d);

i64 radicand(i64 d);  // d fundamental: d odd -> d, d = 4m -> m

}  // namespace pellrank::pell

#endif
