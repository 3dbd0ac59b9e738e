#ifndef PELLRANK_REFLECTION_HPP
#define PELLRANK_REFLECTION_HPP

#include <optional>
#include <string>

#include "arith.hpp"
#include "rng.hpp"

// Numerical verification of the four-discriminant reflection identities:
// sums of Artin pairings over the discriminants p_i q_j d against a single
// Redei symbol.

namespace pellrank::reflection {

using arith::i64;

enum class Theorem { t28i, t28ii, t28self, swapmin, swapped };

const char* theorem_name(Theorem t);
std::optional<Theorem> theorem_from_name(const std::string& name);

struct Config {
    i64 d = 1;  // positive squarefree, primes 1 or 2 mod 4
    i64 p1 = 0, p2 = 0, q1 = 0, q2 = 0;
    i64 a = 1;  // positive divisor of d
    i64 b = 1;  // divisor of d; negative allowed for t28i / t28ii
};

struct Outcome {
    Config config;
    int lhs = 0, rhs = 0;
    bool holds = false;
};

// full hypothesis list of the cited theorem; returns an explanation when violated
std::optional<std::string> hypothesis_violation(Theorem thm, const Config& cfg);

// evaluates both sides; throws std::domain_error when the hypotheses fail
Outcome verify(Theorem thm, const Config& cfg);

// congruence-guided rejection sampling of a hypothesis-satisfying configuration;
// may return nullopt for an unlucky draw (caller retries)
std::optional<Config> sample_config(Theorem thm, rng::Xoshiro256& gen);

}  // namespace pellrank::reflection

#endif
