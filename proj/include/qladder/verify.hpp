#pragma once

// Identity suites run over sampled admissible rational parameters, in exact
// arithmetic. Each suite owns its own sampler stream, so the parameters a
// suite sees depend only on the seed, not on which other suites run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qladder/io.hpp"
#include "qladder/params.hpp"
#include "qladder/rational.hpp"

namespace qladder {

struct FailureRecord {
    std::string suite;
    std::size_t sample = 0;
    std::string family;
    std::string check;
    Json params;
    int N = -1;
    int n = -1;
    int x = -1;
    std::string lhs;
    std::string rhs;
};

struct SuiteResult {
    std::string suite;
    std::size_t samples = 0;
    std::size_t checks = 0;
    std::size_t rejections = 0;
    std::vector<FailureRecord> failures;
    Json details = Json::array();

    [[nodiscard]] bool passed() const { return failures.empty() && checks > 0; }
};

struct VerifyConfig {
    /// Suite names; empty or {"all"} selects every suite.
    std::vector<std::string> suites;
    int samples = 5;
    std::uint64_t seed = 42;
    /// Largest level N exercised.
    int n_max = 5;
    /// Largest termination index for the random identity tuples.
    int identity_n_max = 6;
    /// When set, q-Racah checks use these parameters (levels 1..N) instead of
    /// sampling.
    std::optional<QRacahParams<Rational>> fixed;
    /// Suite whose identity is deliberately broken, to exercise failure
    /// reporting. Only "watson" is supported.
    std::string corrupt;
};

/// Every suite name, sorted.
const std::vector<std::string>& suite_names();

/// Runs one suite. Throws std::invalid_argument on an unknown name and
/// AdmissibilityError when fixed parameters are inadmissible.
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);

/// Runs the selected suites; results are ordered by suite name.
std::vector<SuiteResult> run_verify(const VerifyConfig& cfg);

Json to_json(const FailureRecord& f);
Json to_json(const SuiteResult& r);
Json verify_report_json(const std::vector<SuiteResult>& results, const VerifyConfig& cfg);

} // namespace qladder
