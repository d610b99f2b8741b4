#include "coneslice/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace coneslice {

namespace {

constexpr std::size_t kMaxFailureRecords = 10;

}  // namespace

std::vector<TrialOutcome> run_trials(int count, int threads,
                                     const std::function<TrialOutcome(std::uint64_t)>& trial) {
  const auto n = static_cast<std::size_t>(std::max(count, 0));
  std::vector<TrialOutcome> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        outcomes[i] = trial(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outcomes;
}

VerificationReport summarize(std::string campaign, const std::vector<TrialOutcome>& outcomes,
                             double tolerance, std::uint64_t seed) {
  VerificationReport report;
  report.campaign = std::move(campaign);
  report.trials = outcomes.size();
  report.tolerance = tolerance;
  report.seed = seed;
  double sum = 0.0;
  std::uint64_t accepted = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome& o = outcomes[i];
    if (o.rejected) {
      ++report.rejections;
      continue;
    }
    ++accepted;
    sum += o.residual;
    report.max_residual = std::max(report.max_residual, o.residual);
    // NaN residuals count as failures.
    if (!(o.residual <= tolerance)) {
      ++report.failures;
      if (report.failing.size() < kMaxFailureRecords) {
        report.failing.push_back({i, o.residual, o.payload});
      }
    }
  }
  report.mean_residual = accepted ? sum / static_cast<double>(accepted) : 0.0;
  return report;
}

VerificationReport run_campaign(std::string campaign, const CampaignOptions& options,
                                const std::function<TrialOutcome(std::uint64_t)>& trial) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report = summarize(std::move(campaign), run_trials(options.trials, options.threads, trial),
                                        options.tolerance, options.seed);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j = nlohmann::json::object();
  j["campaign"] = report.campaign;
  j["trials"] = report.trials;
  j["max_residual"] = report.max_residual;
  j["mean_residual"] = report.mean_residual;
  j["failures"] = report.failures;
  j["tolerance"] = report.tolerance;
  j["seed"] = report.seed;
  j["rejections"] = report.rejections;
  if (!report.failing.empty()) {
    nlohmann::json failing = nlohmann::json::array();
    for (const auto& f : report.failing) {
      nlohmann::json entry = {{"trial", f.trial}, {"residual", f.residual}};
      if (f.payload) entry["group_element"] = matrix_to_json(*f.payload);
      failing.push_back(std::move(entry));
    }
    j["failing_trials"] = std::move(failing);
  }
  return j;
}

nlohmann::json to_json(const MetricSample& sample) {
  nlohmann::json x = nlohmann::json::array();
  for (Eigen::Index i = 0; i < sample.x.size(); ++i) x.push_back(sample.x(i));
  return {{"x", std::move(x)}, {"G", matrix_to_json(sample.G)}};
}

std::string format_double(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "Infinity" : "-Infinity";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string metric_csv_header(int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += (i ? "," : "") + std::string("x") + std::to_string(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) out += ",G" + std::to_string(i) + std::to_string(j);
  }
  return out;
}

std::string to_csv_row(const MetricSample& sample) {
  std::string out;
  for (Eigen::Index i = 0; i < sample.x.size(); ++i) out += (i ? "," : "") + format_double(sample.x(i));
  for (Eigen::Index i = 0; i < sample.G.rows(); ++i) {
    for (Eigen::Index j = i; j < sample.G.cols(); ++j) {
      if (!out.empty()) out += ",";
      out += format_double(sample.G(i, j));
    }
  }
  return out;
}

namespace {

void dump_into(const nlohmann::json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + sep;
        dump_into(it.value(), indent, depth + 1, out);
      }
      out += close + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",";
        first = false;
        out += pad;
        dump_into(item, indent, depth + 1, out);
      }
      out += close + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double d = v.get<double>();
      // Non-finite values have no JSON literal.
      out += std::isfinite(d) ? format_double(d) : "null";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value, int indent) {
  std::string out;
  dump_into(value, indent, 0, out);
  return out;
}

}  // namespace coneslice
