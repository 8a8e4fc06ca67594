#pragma once

#include <map>
#include <string>
#include <vector>

#include "symcone/quadrature.hpp"

namespace symcone {

/// Configuration of one verification suite run.  Parameters arrive as
/// strings (CLI flags or key=value config files) and are interpreted per
/// suite; unknown suite ids are rejected.
struct SuiteConfig {
    std::string suite;
    std::string cone_text = "halfline";
    std::map<std::string, std::string> params;
    std::size_t nodes = 0;        // 0: per-suite default
    std::size_t samples = 0;      // 0: per-suite default
    std::string scheme;           // "", "tensor_gauss" or "monte_carlo"
    double tol = 0.0;             // 0: per-suite default
    std::uint64_t seed = 42;
    std::string out_path;         // JSON report destination ("" = none)
};

struct CaseRecord {
    std::string name;
    std::string inputs;
    double computed = 0.0;
    double expected = 0.0;  // 0 when the case is a ratio/CV statistic
    double error_estimate = 0.0;
    bool pass = false;
    std::string note;
};

struct VerificationReport {
    std::string suite;
    std::string cone;
    std::string quadrature;  // key=value echo of the spec
    std::map<std::string, std::string> params;
    std::vector<CaseRecord> cases;
    std::map<std::string, double> summary;
    bool aggregate_pass = false;
    double wall_ms = 0.0;

    std::string to_json() const;  // deterministic except wall_ms
};

const std::vector<std::string>& registered_suites();

/// Runs one suite; throws std::invalid_argument for unknown suites or
/// malformed parameters (the CLI maps that to exit code 2).
VerificationReport run_suite(const SuiteConfig& config);

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string to_csv() const;
    std::string to_json() const;
};

/// Grid sweep over one or two suite parameters; each cell re-runs the suite
/// with the override and records its summary columns.
SweepResult sweep(const SuiteConfig& base, const std::vector<SweepAxis>& axes);

}  // namespace symcone
