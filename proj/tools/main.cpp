// coneslice: verification campaigns and sample tables for cone-slice
// embeddings. Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 domain/runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = coneslice::cli;

namespace {

void add_common(CLI::App& app, cli::RunConfig& config, std::string& format) {
  app.add_option("--dim", config.n, "Slice dimension n (>= 2)");
  app.add_option("--hubble", config.H, "Curvature scale H (> 0)");
  app.add_option("--scale-factor", config.scale_factor, "zero | const:c | power:p");
  app.add_option("--trials", config.trials, "Number of campaign trials");
  app.add_option("--seed", config.seed, "Campaign seed (default: $CONESLICE_SEED or 0)");
  app.add_option("--tol", config.tolerance, "Pass/fail tolerance (command-specific default)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", config.output_path, "Output file (default: stdout)");
  app.add_option("--rho", config.rho, "Frobenius norm of sampled so(2,n) elements");
  app.add_option("--threads", config.threads, "Worker threads (0 = all cores)");
}

int emit(const cli::CommandOutput& out, const cli::RunConfig& config) {
  if (config.output_path.empty()) {
    std::cout << out.text;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open " << config.output_path << " for writing\n";
      return cli::kRuntimeError;
    }
    file << out.text;
  }
  if (out.wall_time_seconds > 0.0) std::cerr << "wall time: " << out.wall_time_seconds << " s\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone-slice embeddings: Weyl relation, SO(2,n) conformal action, curvature"};
  app.require_subcommand(1);

  cli::RunConfig config;
  if (const char* env = std::getenv("CONESLICE_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: CONESLICE_SEED is not an unsigned integer\n";
      return cli::kUsageError;
    }
  }
  std::string format = "json";
  std::string chart = "ds";
  std::vector<std::string> points;

  auto* theorem = app.add_subcommand("verify-theorem", "Weyl relation between induced metrics");
  auto* group = app.add_subcommand("verify-group", "Conformal factor of the SO(2,n) action");
  auto* curvature = app.add_subcommand("curvature", "Finite-difference scalar curvature on a grid");
  auto* metric = app.add_subcommand("metric-grid", "Induced metric samples on a grid");
  auto* osculate = app.add_subcommand("osculate", "Osculating-slice classification on W");
  for (auto* sub : {theorem, group, curvature, metric, osculate}) add_common(*sub, config, format);
  for (auto* sub : {curvature, metric}) {
    sub->add_option("--chart", chart, "ds | null | flrw")->check(CLI::IsMember({"ds", "null", "flrw"}));
  }
  osculate->add_option("--point", points, "Chart coordinates x0,x1,... (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kSuccess : cli::kUsageError;
  }
  config.format = format == "csv" ? cli::OutputFormat::Csv : cli::OutputFormat::Json;

  try {
    cli::CommandOutput out;
    if (*theorem) {
      out = cli::cmd_verify_theorem(config);
    } else if (*group) {
      out = cli::cmd_verify_group(config);
    } else if (*curvature) {
      out = cli::cmd_curvature(config, cli::parse_chart_kind(chart));
    } else if (*metric) {
      out = cli::cmd_metric_grid(config, cli::parse_chart_kind(chart));
    } else {
      out = cli::cmd_osculate(config, points);
    }
    return emit(out, config);
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return cli::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kRuntimeError;
  }
}
