#ifndef PELLRANK_DESCENT_HPP
#define PELLRANK_DESCENT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "arith.hpp"

// Lagrange descent for the ternary equation x^2 = a y^2 + b z^2 with a, b
// squarefree; solvable exactly when (a, b) is an acceptable pair.

namespace pellrank::redei {

using bigint = boost::multiprecision::cpp_int;
using arith::i64;

struct ConicSolution {
    bigint x, y, z;  // primitive, not all zero, x^2 = a y^2 + b z^2
};

// a, b squarefree nonzero; throws std::domain_error when no rational point exists
ConicSolution solve_conic(i64 a, i64 b);

}  // namespace pellrank::redei

#endif
