#ifndef PELLRANK_LOCAL2_HPP
#define PELLRANK_LOCAL2_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "arith.hpp"

// 2-adic square-class machinery for the Redei construction. Decides whether
// the quadratic extension by delta = t*(x + y*sqrt(a)) stays unramified above
// 2 over Q(sqrt(a), sqrt(b)), and classifies rationals in Q_2*/(Q_2*)^2.

namespace pellrank::local2 {

using arith::i64;
using bigint = boost::multiprecision::cpp_int;

// square class of a nonzero rational u/w in Q_2: (v2 mod 2, odd unit mod 8)
struct Q2Class {
    int parity = 0;  // v2 mod 2
    int unit8 = 1;   // in {1,3,5,7}

    bool is_square() const { return parity == 0 && unit8 == 1; }
    Q2Class operator*(const Q2Class& o) const {
        return Q2Class{(parity + o.parity) & 1, (unit8 * o.unit8) % 8};
    }
    bool operator==(const Q2Class&) const = default;
};

Q2Class q2_class(const bigint& n);           // n != 0
Q2Class q2_class_i64(i64 n);

// delta in Q_2 given by its class; is delta a square in the completion of
// Q(sqrt(m)) at a degree-one prime above 2 (m's class decides the field)?
bool square_in_completion(const Q2Class& delta, i64 m);

// Does adjoining sqrt(t*(x + y*sqrt(a))) to M = Q(sqrt a, sqrt b) stay
// unramified at every prime of M above 2? (b may equal a or be trivial,
// in which case M is the obvious smaller field.)
bool unramified_above_2(const bigint& x, const bigint& y, i64 a, i64 b, i64 t);

}  // namespace pellrank::local2

#endif
