#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "coneslice/embedding.hpp"
#include "coneslice/flrw.hpp"
#include "coneslice/group.hpp"
#include "coneslice/report.hpp"

namespace coneslice::cli {

void RunConfig::validate() const {
  if (n < 2) throw UsageError("--dim must be >= 2");
  if (!(H > 0.0) || !std::isfinite(H)) throw UsageError("--hubble must be a positive finite number");
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (tolerance && !(*tolerance > 0.0)) throw UsageError("--tol must be positive");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw UsageError("--rho must be a non-negative number");
  if (threads < 0) throw UsageError("--threads must be >= 0");
  try {
    (void)parse_scale_factor(scale_factor, n, H);
  } catch (const ContractViolation& e) {
    throw UsageError(e.what());
  }
}

namespace {

FlrwSpace space_for(const RunConfig& config) {
  return build_flrw(parse_scale_factor(config.scale_factor, config.n, config.H), config.n, config.H);
}

void require_json(const RunConfig& config, const char* command) {
  if (config.format != OutputFormat::Json) {
    throw UsageError(std::string(command) + " only produces JSON reports; CSV covers sample grids");
  }
}

nlohmann::json config_json(const RunConfig& config) {
  return {{"n", config.n}, {"H", config.H}, {"scale_factor", config.scale_factor}};
}

CommandOutput report_output(const VerificationReport& report, const RunConfig& config,
                            nlohmann::json extra = nlohmann::json::object()) {
  nlohmann::json j = to_json(report);
  j["config"] = config_json(config);
  for (auto it = extra.begin(); it != extra.end(); ++it) j["config"][it.key()] = it.value();
  return {dump_json(j) + "\n", report.passed() ? kSuccess : kVerificationFailure,
          report.wall_time_seconds};
}

std::vector<Eigen::VectorXd> grid(int n, double radius) {
  std::vector<Eigen::VectorXd> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    Eigen::VectorXd x(n);
    int c = code;
    for (int i = 0; i < n; ++i) {
      x(i) = radius * static_cast<double>(c % 3 - 1);
      c /= 3;
    }
    out.push_back(std::move(x));
  }
  return out;
}

struct ChartChoice {
  std::string name;
  std::optional<SliceChart> chart;
  std::optional<double> expected;
  bool relative = true;
  double default_tolerance = 1e-3;
};

bool is_constant_scale_factor(const std::string& spec, double& value) {
  if (spec == "zero") {
    value = 0.0;
    return true;
  }
  if (spec.rfind("const:", 0) == 0) {
    value = std::stod(spec.substr(6));
    return true;
  }
  return false;
}

ChartChoice choose_chart(const RunConfig& config, ChartKind kind) {
  const int n = config.n;
  const double H = config.H;
  const double ds_value = -n * (n - 1) * H * H;
  ChartChoice out;
  switch (kind) {
    case ChartKind::DeSitter:
      out.name = "deSitter";
      out.chart = ds_graph_chart(n, H);
      out.expected = ds_value;
      out.default_tolerance = n >= 4 ? 1e-2 : 1e-3;
      break;
    case ChartKind::Null:
      out.name = "null";
      out.chart = minkowski_null_chart(n, H);
      out.expected = 0.0;
      out.relative = false;
      out.default_tolerance = 1e-4;
      break;
    case ChartKind::Flrw: {
      out.name = "flrw";
      out.chart = space_for(config).w_chart;
      double c = 0.0;
      if (is_constant_scale_factor(config.scale_factor, c)) out.expected = std::exp(-2.0 * c) * ds_value;
      out.default_tolerance = 1e-2;
      break;
    }
  }
  return out;
}

}  // namespace

ChartKind parse_chart_kind(const std::string& name) {
  if (name == "ds" || name == "deSitter") return ChartKind::DeSitter;
  if (name == "null" || name == "minkowskiNull") return ChartKind::Null;
  if (name == "flrw") return ChartKind::Flrw;
  throw UsageError("unknown chart '" + name + "' (expected ds, null or flrw)");
}

CommandOutput cmd_verify_theorem(const RunConfig& config) {
  config.validate();
  require_json(config, "verify-theorem");
  const FlrwSpace space = space_for(config);
  CampaignOptions options{config.trials, config.seed, config.tolerance.value_or(1e-9), config.threads};
  return report_output(deformation_campaign(space.deformation, space.sigma_chart, options), config);
}

CommandOutput cmd_verify_group(const RunConfig& config) {
  config.validate();
  require_json(config, "verify-group");
  const FlrwSpace space = space_for(config);
  GroupCampaignOptions options;
  options.trials = config.trials;
  options.seed = config.seed;
  options.tolerance = config.tolerance.value_or(1e-9);
  options.threads = config.threads;
  options.rho = config.rho;
  return report_output(group_campaign(space.k(), space.w_chart, options), config, {{"rho", config.rho}});
}

CommandOutput cmd_curvature(const RunConfig& config, ChartKind kind) {
  config.validate();
  const ChartChoice choice = choose_chart(config, kind);
  const double tolerance = config.tolerance.value_or(choice.default_tolerance);
  const std::vector<Eigen::VectorXd> points = grid(config.n, 0.3 / config.H);

  std::vector<double> values;
  values.reserve(points.size());
  double deviation = 0.0;
  for (const auto& x : points) {
    const double r = scalar_curvature(*choice.chart, x);
    values.push_back(r);
    if (choice.expected) {
      const double diff = std::abs(r - *choice.expected);
      deviation = std::max(deviation, choice.relative ? diff / std::abs(*choice.expected) : diff);
    }
  }
  const bool passed = !choice.expected || deviation <= tolerance;
  CommandOutput out;
  out.exit_code = passed ? kSuccess : kVerificationFailure;

  if (config.format == OutputFormat::Csv) {
    std::ostringstream os;
    for (int i = 0; i < config.n; ++i) os << "x" << i << ",";
    os << "R\n";
    for (std::size_t s = 0; s < points.size(); ++s) {
      for (int i = 0; i < config.n; ++i) os << format_double(points[s](i)) << ",";
      os << format_double(values[s]) << "\n";
    }
    out.text = os.str();
    return out;
  }
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t s = 0; s < points.size(); ++s) {
    nlohmann::json x = nlohmann::json::array();
    for (int i = 0; i < config.n; ++i) x.push_back(points[s](i));
    samples.push_back({{"x", std::move(x)}, {"R", values[s]}});
  }
  nlohmann::json j = {{"campaign", "curvature"},
                      {"chart", choice.name},
                      {"config", config_json(config)},
                      {"expected", choice.expected ? nlohmann::json(*choice.expected) : nlohmann::json()},
                      {"deviation", choice.relative ? "relative" : "absolute"},
                      {"max_deviation", deviation},
                      {"tolerance", tolerance},
                      {"passed", passed},
                      {"samples", std::move(samples)}};
  out.text = dump_json(j) + "\n";
  return out;
}

CommandOutput cmd_metric_grid(const RunConfig& config, ChartKind kind) {
  config.validate();
  const ChartChoice choice = choose_chart(config, kind);
  const std::vector<Eigen::VectorXd> points = grid(config.n, 0.3 / config.H);
  CommandOutput out;
  if (config.format == OutputFormat::Csv) {
    std::string text = metric_csv_header(config.n) + "\n";
    for (const auto& x : points) text += to_csv_row(choice.chart->metric(x)) + "\n";
    out.text = std::move(text);
    return out;
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& x : points) samples.push_back(to_json(choice.chart->metric(x)));
  out.text = dump_json({{"campaign", "metric-grid"},
                        {"chart", choice.name},
                        {"config", config_json(config)},
                        {"samples", std::move(samples)}}) +
             "\n";
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(value)) {
      throw UsageError("bad point coordinate '" + item + "' in '" + text + "'");
    }
    out.push_back(value);
    start = comma + 1;
  }
  return out;
}

CommandOutput cmd_osculate(const RunConfig& config, const std::vector<std::string>& points) {
  config.validate();
  require_json(config, "osculate");
  std::vector<Eigen::VectorXd> coords;
  for (const auto& text : points) {
    const std::vector<double> v = parse_point(text);
    if (static_cast<int>(v.size()) != config.n) {
      throw UsageError("point '" + text + "' needs " + std::to_string(config.n) + " coordinates");
    }
    coords.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), config.n));
  }
  if (coords.empty()) coords.push_back(Eigen::VectorXd::Zero(config.n));

  const FlrwSpace space = space_for(config);
  nlohmann::json results = nlohmann::json::array();
  for (const auto& x : coords) {
    const SlicePoint y_o = space.w_chart.point(x);
    const OsculatingResult r = osculating_slice(space.k(), y_o);
    nlohmann::json entry = to_json(r);
    nlohmann::json xs = nlohmann::json::array();
    for (int i = 0; i < config.n; ++i) xs.push_back(x(i));
    entry["x"] = std::move(xs);
    entry["fLocal_at_point"] = r.f_local.eval(y_o.y());
    results.push_back(std::move(entry));
  }
  return {dump_json({{"campaign", "osculate"}, {"config", config_json(config)}, {"points", std::move(results)}}) + "\n",
          kSuccess, 0.0};
}

}  // namespace coneslice::cli
