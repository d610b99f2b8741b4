#pragma once

// Command implementations behind the `coneslice` executable. Each command
// validates its RunConfig, runs, and returns the serialized report plus the
// process exit code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coneslice/errors.hpp"

namespace coneslice::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kRuntimeError = 3,
};

class UsageError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  int n = 4;
  double H = 1.0;
  std::string scale_factor = "zero";
  int trials = 1000;
  std::uint64_t seed = 0;
  /// Unset means the command's own default.
  std::optional<double> tolerance;
  OutputFormat format = OutputFormat::Json;
  /// Empty means standard output.
  std::string output_path;
  double rho = 0.5;
  int threads = 0;

  /// Throws UsageError on the first invalid field.
  void validate() const;
};

struct CommandOutput {
  std::string text;  // JSON or CSV, newline-terminated
  int exit_code = kSuccess;
  double wall_time_seconds = 0.0;
};

/// Weyl-relation campaign for (f_dS, l) with l the extension of the scale factor.
CommandOutput cmd_verify_theorem(const RunConfig& config);

/// Conformal-factor campaign for the SO(2,n) action on W = X_k.
CommandOutput cmd_verify_group(const RunConfig& config);

/// Which chart the curvature and metric commands sample.
enum class ChartKind { DeSitter, Null, Flrw };
ChartKind parse_chart_kind(const std::string& name);

/// Scalar curvature on a 3^n grid, compared with the closed form when one
/// exists (dS, null, FLRW with constant scale factor).
CommandOutput cmd_curvature(const RunConfig& config, ChartKind chart);

/// Induced metric samples on a 3^n grid.
CommandOutput cmd_metric_grid(const RunConfig& config, ChartKind chart);

/// Osculating-slice classification at W chart points ("x0,x1,..."; the
/// origin when `points` is empty).
CommandOutput cmd_osculate(const RunConfig& config, const std::vector<std::string>& points);

/// Comma-separated list of doubles.
std::vector<double> parse_point(const std::string& text);

}  // namespace coneslice::cli
