#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contactgeo/models.hpp"

namespace contactgeo {

enum class SuiteStatus { Pass, Fail, Skipped };
std::string to_string(SuiteStatus s);

struct SuiteReport {
  std::string suite;
  std::string model;
  SuiteStatus status = SuiteStatus::Pass;
  /// Why the suite was skipped or failed without running its checks.
  std::string reason;
  std::vector<Check> checks;
  std::uint64_t seed = kDefaultSeed;
  int samples = kDefaultSamples;
  double tolerance = 0.0;
  double wall_seconds = 0.0;
};

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  int samples = kDefaultSamples;
  /// Overrides every tolerance when set.
  std::optional<double> tol;
  /// Replaces the model's default tolerance when set (and tol is not).
  std::optional<double> default_tol;
};

/// Suite names in the order `all` runs them (without "all" itself).
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Loads the model once and runs one suite, or every suite for "all". In
/// "all", suites the model does not support are skipped instead of failed.
/// Throws DomainError for an unknown suite and lets load errors propagate.
std::vector<SuiteReport> run_suites(const std::string& suite, const ModelPack& pack,
                                    const RunOptions& opts);

/// Residuals are rounded to three significant digits. With
/// include_time = false the output is a pure function of (model, seed,
/// samples, tolerance).
std::string reports_json(const std::vector<SuiteReport>& reports, bool include_time = true);

bool all_passed(const std::vector<SuiteReport>& reports);

}  // namespace contactgeo
