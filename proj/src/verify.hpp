#ifndef PELLRANK_VERIFY_HPP
#define PELLRANK_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arith.hpp"

// Property suites behind `verify`: each runs seeded checks and reports one
// line per identity with counts; any violation fails the suite and records
// the minimal failing instance.

namespace pellrank::verify {

using arith::i64;

struct SuiteResult {
    std::string suite;
    bool passed = true;
    std::vector<std::string> lines;
    std::string first_failure;
};

SuiteResult run_redei_suite(std::uint64_t trials, std::uint64_t seed);
SuiteResult run_reflection_suite(std::uint64_t per_theorem, std::uint64_t seed);
SuiteResult run_combinatorics_suite(int eps_enum_cap = 18);
SuiteResult run_markov_suite(std::uint64_t samples, std::uint64_t seed);
SuiteResult run_oracle_suite(i64 max_d, int threads);

SuiteResult run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                      i64 max_d, int threads);

}  // namespace pellrank::verify

#endif
