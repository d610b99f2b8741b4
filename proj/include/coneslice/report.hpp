#pragma once

// Aggregated residual statistics for randomized verification campaigns, the
// parallel trial runner, and JSON/CSV serialization of reports and samples.

#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "coneslice/slice.hpp"

namespace coneslice {

/// Settings shared by all campaigns.
struct CampaignOptions {
  int trials = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend
  /// on this value.
  int threads = 0;
};

/// What one trial produced.
struct TrialOutcome {
  double residual = 0.0;
  bool rejected = false;
  /// Optional replay payload (e.g. the sampled group element).
  std::optional<Eigen::MatrixXd> payload;
};

struct FailureRecord {
  std::uint64_t trial = 0;
  double residual = 0.0;
  std::optional<Eigen::MatrixXd> payload;
};

struct VerificationReport {
  std::string campaign;
  std::uint64_t trials = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::uint64_t failures = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  /// Trials skipped because the sampled configuration left the domain of
  /// the operation (conformal boundary). Not counted as failures.
  std::uint64_t rejections = 0;
  double wall_time_seconds = 0.0;
  /// First few failing trials, in trial order.
  std::vector<FailureRecord> failing;

  bool passed() const noexcept { return failures == 0; }
};

/// Runs `trial(i)` for i in [0, count) on a pool of threads. Exceptions are
/// rethrown after all workers finish, lowest trial index first.
std::vector<TrialOutcome> run_trials(int count, int threads,
                                     const std::function<TrialOutcome(std::uint64_t)>& trial);

/// Order-independent summary of trial outcomes.
VerificationReport summarize(std::string campaign, const std::vector<TrialOutcome>& outcomes,
                             double tolerance, std::uint64_t seed);

/// Runs and summarizes in one go, filling in the wall time.
VerificationReport run_campaign(std::string campaign, const CampaignOptions& options,
                                const std::function<TrialOutcome(std::uint64_t)>& trial);

nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const MetricSample& sample);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

/// CSV row: x..., then the upper-triangular entries of G row by row.
std::string to_csv_row(const MetricSample& sample);
std::string metric_csv_header(int n);

/// Serializes JSON with every floating-point number printed to 17
/// significant digits, so output round-trips exactly.
std::string dump_json(const nlohmann::json& value, int indent = 2);

/// printf("%.17g").
std::string format_double(double value);

}  // namespace coneslice
