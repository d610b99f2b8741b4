#pragma once

// Cone slices X_h = {C(y) = 0} ∩ {h(y) = 1} for a degree-1 homogeneous h,
// their tangent spaces, induced metrics and coordinate charts.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coneslice/ambient.hpp"
#include "coneslice/homogeneous.hpp"
#include "coneslice/rng.hpp"

namespace coneslice {

/// Membership tolerance, relative to max(1, |y|_inf^2) for the cone and
/// absolute for h(y) - 1.
inline constexpr double kSliceTolerance = 1e-9;
/// Tangency tolerance for input vectors, scaled by the magnitudes involved.
inline constexpr double kTangencyTolerance = 1e-9;

/// Point of X_h. Construction validates both slice constraints.
class SlicePoint {
 public:
  SlicePoint(AmbientVector y, HomogeneousFn h);

  const AmbientVector& y() const noexcept { return y_; }
  const HomogeneousFn& slice() const noexcept { return h_; }
  const Signature& signature() const noexcept { return h_.signature(); }

 private:
  AmbientVector y_;
  HomogeneousFn h_;
};

/// (C(y), h(y) - 1).
std::pair<double, double> slice_residuals(const AmbientVector& y, const HomogeneousFn& h);

/// y / h(y). Requires y on the cone and h(y) > 1e-12.
SlicePoint ray_project(const AmbientVector& y, const HomogeneousFn& h);

/// Constraint residuals of a candidate tangent vector, each divided by the
/// natural magnitude of the pairing.
struct TangencyResiduals {
  double cone;   // |eta(y, V)| / max(1, |y|_inf |V|_inf)
  double level;  // |dh_y(V)| / max(1, |dh|_inf |V|_inf)
  bool within(double tol) const noexcept { return cone <= tol && level <= tol; }
};

TangencyResiduals tangency(const SlicePoint& p, const AmbientVector& v);

/// Throws ContractViolation unless v is tangent to the slice at p.
void require_tangent(const SlicePoint& p, const AmbientVector& v, const char* op);

/// n Euclidean-orthonormal vectors spanning {V : eta(y, V) = 0, dh_y(V) = 0}.
/// Throws DegeneratePoint when the two constraint covectors are dependent.
std::vector<AmbientVector> tangent_basis(const SlicePoint& p);

/// Gram matrix of tangent vectors under the ambient metric.
struct MetricSample {
  Eigen::VectorXd x;  // chart coordinates; empty when not produced by a chart
  Eigen::MatrixXd G;
};

MetricSample induced_metric(const SlicePoint& p, const std::vector<AmbientVector>& basis);

struct MetricSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool lorentzian() const noexcept { return positive == 1 && zero == 0 && negative >= 1; }
};

/// Eigenvalue sign count of a symmetric matrix; |lambda| <= tol * max|lambda|
/// counts as zero.
MetricSignature metric_signature(const Eigen::MatrixXd& g, double tol = 1e-12);

/// Local parametrization x in R^n -> X_h with an analytic tangent map.
class SliceChart {
 public:
  using PointMap = std::function<AmbientVector(const Eigen::VectorXd&)>;
  using TangentMap = std::function<AmbientVector(const Eigen::VectorXd&, int)>;
  using Domain = std::function<bool(const Eigen::VectorXd&)>;
  /// Draws a candidate coordinate vector for randomized campaigns, or
  /// nothing when the draw is rejected.
  using Sampler = std::function<std::optional<Eigen::VectorXd>(Engine&)>;

  SliceChart(std::string name, HomogeneousFn h, PointMap point_map, TangentMap tangent_map,
             Domain domain, Sampler sampler);

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return h_.signature().n(); }
  const HomogeneousFn& slice() const noexcept { return h_; }

  bool contains(const Eigen::VectorXd& x) const;
  /// Throws OutOfDomain outside the chart domain.
  SlicePoint point(const Eigen::VectorXd& x) const;
  AmbientVector tangent(const Eigen::VectorXd& x, int i) const;
  std::vector<AmbientVector> tangents(const Eigen::VectorXd& x) const;
  MetricSample metric(const Eigen::VectorXd& x) const;

  /// One candidate draw inside the domain, or nothing if rejected.
  std::optional<Eigen::VectorXd> draw(Engine& rng) const;

 private:
  void require_domain(const Eigen::VectorXd& x) const;

  std::string name_;
  HomogeneousFn h_;
  PointMap point_map_;
  TangentMap tangent_map_;
  Domain domain_;
  Sampler sampler_;
};

/// H y^{n+1}: the de Sitter slice function.
HomogeneousFn de_sitter_function(int n, double H);
/// H y^n.
HomogeneousFn anti_de_sitter_function(int n, double H);
/// H (y^n + y^{n+1}) / 2: null gradient, flat slices.
HomogeneousFn null_slice_function(int n, double H);

/// q(x) = (x^0)^2 - sum_{i >= 1} (x^i)^2.
double minkowski_quadratic(const Eigen::VectorXd& x);

/// Graph chart of the de Sitter slice over its first n coordinates:
/// x -> (x, s sqrt(q(x) + H^-2), 1/H), domain q(x) + H^-2 > 0.
SliceChart ds_graph_chart(int n, double H, int branch = +1);

/// Global chart of the null slice: x -> (x, 1/H + H q/4, 1/H - H q/4).
/// The induced metric is diag(+1, -1, ..., -1) everywhere.
SliceChart minkowski_null_chart(int n, double H);

/// Ricci scalar of the induced metric at chart point x from finite
/// differences of the chart Gram matrix (step 1e-3 max(1, |x|_inf), one
/// Richardson halving). Sign convention: R_bd = d_a Gamma^a_bd - d_d Gamma^a_ba
/// + Gamma^a_ae Gamma^e_bd - Gamma^a_de Gamma^e_ba, R = g^bd R_bd, which makes
/// de Sitter negative for the (+,-,...,-) induced signature.
double scalar_curvature(const SliceChart& chart, const Eigen::VectorXd& x);

/// Single-step estimate without extrapolation.
double scalar_curvature_at_step(const SliceChart& chart, const Eigen::VectorXd& x, double step);

}  // namespace coneslice
