#ifndef PELLRANK_REDEI_HPP
#define PELLRANK_REDEI_HPP

#include <string>
#include <vector>

#include "arith.hpp"
#include "descent.hpp"
#include "f2linalg.hpp"
#include "pell.hpp"

// Redei symbols, Artin pairings, and the rk4/rk8 extraction they support.
// The symbol is evaluated on the quartic extension Q(sqrt a, sqrt b, sqrt g)
// with g = x + y*sqrt(a) from a primitive descent solution, 2-adically
// normalized so the extension is minimally ramified.

namespace pellrank::redei {

using arith::SquareClass;
using arith::i64;

struct AcceptablePair {
    SquareClass a, b;
    bool acceptable = false;
    std::vector<i64> failing_places;  // -1 encodes the real place
};

struct AdmissibleTriple {
    SquareClass a, b, c;
    bool admissible = false;
    std::string reason;  // names the failing condition when not admissible
};

AcceptablePair is_acceptable(const SquareClass& a, const SquareClass& b);
AdmissibleTriple is_admissible(const SquareClass& a, const SquareClass& b, const SquareClass& c);

// [a, b, c] in F_2; requires an admissible triple (throws std::domain_error
// naming the failing condition otherwise).
int redei_symbol(const SquareClass& a, const SquareClass& b, const SquareClass& c);
int redei_symbol(i64 a, i64 b, i64 c);

// evaluates with the conjugate choice of ideal above every split prime; the
// value must agree with redei_symbol (choice independence)
int redei_symbol_conjugate_choice(const SquareClass& a, const SquareClass& b, const SquareClass& c);

// <chi_a, b>_D computed as [a, D/a, b]; preconditions are the memberships
// chi_a in 2CL+(D)^dual[4] and B_D(b) in 2CL+(D)[4], i.e. acceptability of
// (a, -D) and (b, D).
int artin_pairing(i64 d, const SquareClass& a, const SquareClass& b);

struct PairingMatrix {
    std::vector<SquareClass> row_basis;  // spans 2C^dual(D) mod {1, D}
    std::vector<SquareClass> col_basis;  // spans 2C(D) mod {1, -D}
    f2linalg::F2Matrix entries;
};

PairingMatrix pairing_matrix(i64 d);

// (n-1)x(n-1) matrix of Legendre-symbol bits between the prime divisors of D
f2linalg::F2Matrix legendre_matrix(const std::vector<i64>& primes);
int rk4_via_redei_matrix(i64 d);
int rk8_via_pairing(i64 d);

// everything the sweep needs from one discriminant, via symbols only
struct SymbolicProfile {
    i64 d = 0;
    int omega = 0;
    int rk4_narrow = 0;
    int rk8_narrow = 0;
    int rk4_ordinary = 0;
    bool neg_pell = false;
    bool ranks4_coincide = false;  // rk4 CL(D) == rk4 CL+(D)
};

SymbolicProfile symbolic_profile(i64 d, const std::vector<i64>& primes);

}  // namespace pellrank::redei

#endif
