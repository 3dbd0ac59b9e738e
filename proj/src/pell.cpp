#include "pell.hpp"

#include <stdexcept>

namespace pellrank::pell {

PellDiscriminant PellDiscriminant::make(i64 d) {
    if (d <= 0 || !arith::is_fundamental_discriminant(d))
        throw std::domain_error("PellDiscriminant: not a positive fundamental discriminant");
    PellDiscriminant pd;
    pd.d = d;
    pd.prime_factors = arith::factor_generic(d);
    pd.pell_family = arith::in_pell_family(d);
    return pd;
}

namespace {

// Walks the continued fraction of sqrt(d) once around the period, returning
// the period length and the convergent (p, q) at the period end.
struct PeriodWalk {
    i64 length = 0;
    bigint p, q;
};

PeriodWalk walk_period(i64 d) {
    i64 a0 = arith::isqrt64(d);
    if (a0 * a0 == d) throw std::domain_error("neg_pell: perfect square");
    PeriodWalk w;
    bigint pm1 = a0, pm2 = 1;  // p_0, p_{-1}
    bigint qm1 = 1, qm2 = 0;   // q_0, q_{-1}
    i64 m = 0, den = 1;
    while (true) {
        m = den * ((a0 + m) / den) - m;
        den = (d - m * m) / den;
        i64 a = (a0 + m) / den;
        ++w.length;
        if (den == 1) {
            // convergent p_{l-1}/q_{l-1} is the one before this partial quotient
            w.p = pm1;
            w.q = qm1;
            return w;
        }
        bigint pn = a * pm1 + pm2;
        bigint qn = a * qm1 + qm2;
        pm2 = pm1;
        pm1 = pn;
        qm2 = qm1;
        qm1 = qn;
    }
}

bool period_parity_odd(i64 d) {
    i64 a0 = arith::isqrt64(d);
    if (a0 * a0 == d) throw std::domain_error("neg_pell: perfect square");
    i64 m = 0, den = 1, len = 0;
    do {
        m = den * ((a0 + m) / den) - m;
        den = (d - m * m) / den;
        ++len;
    } while (den != 1);
    return (len & 1) == 1;
}

}  // namespace

PellVerdict neg_pell_by_period(i64 d) {
    if (d < 2) throw std::domain_error("neg_pell_by_period: d < 2");
    PeriodWalk w = walk_period(d);
    PellVerdict v;
    v.method = Method::period_parity;
    v.solvable = (w.length % 2) == 1;
    if (v.solvable) {
        bigint check = w.p * w.p - bigint(d) * w.q * w.q;
        if (check != -1) throw std::logic_error("neg_pell_by_period: witness norm mismatch");
        v.witness = std::make_pair(w.p, w.q);
    }
    return v;
}

PellVerdict neg_pell_by_unit(i64 d) {
    if (d < 2) throw std::domain_error("neg_pell_by_unit: d < 2");
    PeriodWalk w = walk_period(d);
    bigint norm = w.p * w.p - bigint(d) * w.q * w.q;
    if (norm != 1 && norm != -1) throw std::logic_error("neg_pell_by_unit: unit norm not +-1");
    PellVerdict v;
    v.method = Method::unit_norm;
    v.solvable = (norm == -1);
    if (v.solvable) v.witness = std::make_pair(w.p, w.q);
    return v;
}

i64 radicand(i64 d) {
    if (!arith::is_fundamental_discriminant(d) || d <= 0)
        throw std::domain_error("radicand: not a positive fundamental discriminant");
    return d % 4 == 0 ? d / 4 : d;
}

bool neg_pell_fundamental(i64 d) {
    i64 r = radicand(d);
    if (r == 1) throw std::domain_error("neg_pell_fundamental: degenerate");
    // period parity on the radicand equals the unit-norm sign of the field,
    // hence equals CL(D) = CL+(D)
    return period_parity_odd(r);
}

}  // namespace pellrank::pell
