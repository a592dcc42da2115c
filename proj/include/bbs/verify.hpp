#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace bbs {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double seconds = 0;
    nlohmann::json report;
};

// The twelve acceptance suites. Deterministic given (seed, workers).
SuiteResult suite_figure1();
SuiteResult suite_ts_appendix();
SuiteResult suite_ten_seat();
SuiteResult suite_linearization(std::uint64_t seed);
SuiteResult suite_skip_algebra();
SuiteResult suite_bijection();
SuiteResult suite_fermionic();
SuiteResult suite_measures();
SuiteResult suite_skip_markov(std::uint64_t seed);
SuiteResult suite_carrier(std::uint64_t seed, int workers);
SuiteResult suite_invariance(std::uint64_t seed, int workers);
SuiteResult suite_determinism(std::uint64_t seed);

SuiteResult run_suite(int criterion, std::uint64_t seed, int workers);
std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int workers);

}  // namespace bbs
