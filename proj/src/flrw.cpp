#include "coneslice/flrw.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "coneslice/errors.hpp"

namespace coneslice {

const char* to_string(SliceKind kind) {
  switch (kind) {
    case SliceKind::DeSitter:
      return "deSitter";
    case SliceKind::AntiDeSitter:
      return "antiDeSitter";
    case SliceKind::MinkowskiNull:
      return "minkowskiNull";
  }
  return "unknown";
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::DeSitter:
      return "deSitter";
    case Classification::AntiDeSitter:
      return "antiDeSitter";
    case Classification::Null:
      return "null";
  }
  return "unknown";
}

StandardSlice standard_slice(SliceKind kind, int n, double H) {
  if (!(H > 0.0)) throw ContractViolation("standard_slice: H must be positive");
  switch (kind) {
    case SliceKind::DeSitter:
      return {kind, H, de_sitter_function(n, H)};
    case SliceKind::AntiDeSitter:
      return {kind, H, anti_de_sitter_function(n, H)};
    case SliceKind::MinkowskiNull:
      return {kind, H, null_slice_function(n, H)};
  }
  throw ContractViolation("standard_slice: unknown kind");
}

double conformal_time(std::span<const double> y, double H) {
  const std::size_t n = y.size() - 2;
  return 2.0 / (H * H * (y[n] + y[n + 1]));
}

namespace {

double parse_number(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ContractViolation("scale factor '" + std::string(spec) + "': bad number '" +
                            std::string(text) + "'");
  }
  return value;
}

}  // namespace

SliceFunction parse_scale_factor(std::string_view spec, int n, double H) {
  if (n < 2) throw ContractViolation("parse_scale_factor: n must be >= 2");
  if (!(H > 0.0)) throw ContractViolation("parse_scale_factor: H must be positive");
  if (spec == "zero") {
    return SliceFunction::smooth("zero", [](auto y) { return typename decltype(y)::value_type(0.0); });
  }
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  if (colon == std::string_view::npos) {
    throw ContractViolation("unknown scale factor '" + std::string(spec) +
                            "' (expected zero, const:c or power:p)");
  }
  const double value = parse_number(spec.substr(colon + 1), spec);
  if (head == "const") {
    return SliceFunction::smooth(std::string(spec), [value](auto y) {
      return typename decltype(y)::value_type(value);
    });
  }
  if (head == "power") {
    const auto nn = static_cast<std::size_t>(n);
    DomainPredicate positive_time([nn](std::span<const double> y) { return y[nn] + y[nn + 1] > 0.0; });
    return SliceFunction::smooth(
        std::string(spec),
        [value, H, nn](auto y) {
          using std::log;
          using T = typename decltype(y)::value_type;
          const T tau = T(2.0 / (H * H)) / (y[nn] + y[nn + 1]);
          return value * log(tau);
        },
        positive_time);
  }
  throw ContractViolation("unknown scale factor '" + std::string(spec) +
                          "' (expected zero, const:c or power:p)");
}

FlrwSpace build_flrw(const SliceFunction& a, int n, double H) {
  StandardSlice base = standard_slice(SliceKind::DeSitter, n, H);
  HomogeneousFn l = extend_scale_factor(a, base.f);
  Deformation deformation(base.f, std::move(l));
  SliceChart sigma = ds_graph_chart(n, H, +1);
  SliceChart w = deformed_chart(deformation, sigma);
  FlrwSpace space{std::move(base), a, std::move(deformation), std::move(sigma), std::move(w)};

  const AmbientVector origin = space.sigma_chart.point(Eigen::VectorXd::Zero(n)).y();
  const double la = space.l().eval(origin);
  const double aa = a(origin);
  if (std::abs(la - aa) > 1e-12 * std::max(1.0, std::abs(aa))) {
    throw ContractViolation("build_flrw: extension of " + a.name() + " does not restrict to a on Sigma");
  }
  return space;
}

double flrw_metric_residual(const FlrwSpace& space, const Eigen::VectorXd& x) {
  const SlicePoint p = space.sigma_chart.point(x);
  const double e2a = std::exp(2.0 * space.a(p.y()));
  const Eigen::MatrixXd g_ds = space.sigma_chart.metric(x).G;
  const Eigen::MatrixXd g_w = space.w_chart.metric(x).G;
  return (g_w - e2a * g_ds).cwiseAbs().maxCoeff();
}

OsculatingResult osculating_slice(const HomogeneousFn& k, const SlicePoint& y_o) {
  const SlicePoint on_k(y_o.y(), k);
  const AmbientCovector dk = k.differential(on_k.y());
  AmbientVector K = raise_index(dk, k.signature());
  const double norm_sq = inner(K, K, k.signature());
  Classification c = Classification::Null;
  if (norm_sq > kNullBand) {
    c = Classification::DeSitter;
  } else if (norm_sq < -kNullBand) {
    c = Classification::AntiDeSitter;
  }
  return {std::move(K), norm_sq, c, HomogeneousFn::linear("osc(" + k.name() + ")", dk)};
}

nlohmann::json to_json(const OsculatingResult& result) {
  nlohmann::json K = nlohmann::json::array();
  for (int i = 0; i < result.K.dim(); ++i) K.push_back(result.K[i]);
  return {{"classification", to_string(result.classification)},
          {"normSq", result.norm_sq},
          {"K", std::move(K)}};
}

}  // namespace coneslice
