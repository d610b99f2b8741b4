#include "coneslice/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "coneslice/errors.hpp"

namespace coneslice {

Deformation::Deformation(HomogeneousFn f, HomogeneousFn l)
    : f_(std::move(f)), l_(std::move(l)), k_(compose_k(f_, l_)) {}

namespace {

// Re-anchors p on X_f; throws if it is not there.
SlicePoint on_source(const Deformation& d, const SlicePoint& p) { return SlicePoint(p.y(), d.f()); }

}  // namespace

SlicePoint lambda_map(const Deformation& d, const SlicePoint& p) {
  const SlicePoint src = on_source(d, p);
  const double scale = std::exp(d.l().eval(src.y()));
  return SlicePoint(scale * src.y(), d.k());
}

AmbientVector lambda_pushforward(const Deformation& d, const SlicePoint& p, const AmbientVector& v) {
  const SlicePoint src = on_source(d, p);
  require_tangent(src, v, "lambda_pushforward");
  const AmbientVector& y = src.y();
  const double el = std::exp(d.l().eval(y));
  const double dl_v = d.l().directional(y, v);
  return AmbientVector(el * (v.coords() + dl_v * dilation_at(y).coords()));
}

double weyl_residual(const Deformation& d, const SlicePoint& p, const AmbientVector& u,
                     const AmbientVector& v) {
  const Signature& sig = d.signature();
  const double e2l = std::exp(2.0 * d.l().eval(p.y()));
  return inner(lambda_pushforward(d, p, u), lambda_pushforward(d, p, v), sig) - e2l * inner(u, v, sig);
}

double scaled_weyl_residual(const Deformation& d, const SlicePoint& p, const AmbientVector& u,
                            const AmbientVector& v) {
  const double e2l = std::exp(2.0 * d.l().eval(p.y()));
  const double rhs = e2l * inner(u, v, d.signature());
  return std::abs(weyl_residual(d, p, u, v)) / std::max(1.0, std::abs(rhs));
}

SliceChart deformed_chart(const Deformation& d, const SliceChart& base) {
  auto point_map = [d, base](const Eigen::VectorXd& x) { return lambda_map(d, base.point(x)).y(); };
  auto tangent_map = [d, base](const Eigen::VectorXd& x, int i) {
    return lambda_pushforward(d, base.point(x), base.tangent(x, i));
  };
  auto domain = [d, base](const Eigen::VectorXd& x) {
    if (!base.contains(x)) return false;
    try {
      const AmbientVector y = base.point(x).y();
      return d.l().contains(y) && d.k().contains(std::exp(d.l().raw(y.span())) * y);
    } catch (const Error&) {
      return false;
    }
  };
  auto sampler = [base](Engine& rng) { return base.draw(rng); };
  return SliceChart(base.name() + "->" + d.k().name(), d.k(), point_map, tangent_map, domain, sampler);
}

AmbientVector random_chart_tangent(const SliceChart& chart, const Eigen::VectorXd& x, Engine& rng) {
  const std::vector<AmbientVector> t = chart.tangents(x);
  for (;;) {
    const Eigen::VectorXd c = gaussian_vector(rng, chart.n());
    Eigen::VectorXd v = Eigen::VectorXd::Zero(t.front().dim());
    for (int i = 0; i < chart.n(); ++i) v += c(i) * t[static_cast<std::size_t>(i)].coords();
    const double norm = v.norm();
    if (norm > 1e-8) return AmbientVector(v / norm);
  }
}

Eigen::VectorXd draw_chart_point(const SliceChart& chart, Engine& rng,
                                 const std::function<bool(const Eigen::VectorXd&)>& accept) {
  constexpr int kAttempts = 100;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::optional<Eigen::VectorXd> x = chart.draw(rng);
    if (x && (!accept || accept(*x))) return *x;
  }
  throw DomainExhausted("chart " + chart.name() + ": no admissible sample after 100 attempts");
}

VerificationReport deformation_campaign(const Deformation& d, const SliceChart& chart,
                                        const CampaignOptions& options) {
  if (options.trials < 1) throw ContractViolation("deformation_campaign: trials must be >= 1");
  auto admissible = [&d, &chart](const Eigen::VectorXd& x) {
    const AmbientVector y = chart.point(x).y();
    if (!d.l().contains(y)) return false;
    return d.k().contains(std::exp(d.l().raw(y.span())) * y);
  };
  return run_campaign("weyl:" + d.l().name(), options, [&](std::uint64_t i) {
    Engine rng = trial_engine(options.seed, i);
    const Eigen::VectorXd x = draw_chart_point(chart, rng, admissible);
    const SlicePoint p = chart.point(x);
    const AmbientVector u = random_chart_tangent(chart, x, rng);
    const AmbientVector v = random_chart_tangent(chart, x, rng);
    return TrialOutcome{scaled_weyl_residual(d, p, u, v), false, std::nullopt};
  });
}

}  // namespace coneslice
