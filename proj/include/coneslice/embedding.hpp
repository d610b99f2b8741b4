#pragma once

// The deformation map Lambda(y) = exp(l(y)) y taking X_f onto X_k, k = exp(-l) f,
// its push-forward, and the metric identity
//   eta(Lambda_* U, Lambda_* V) = exp(2 l) eta(U, V)
// for U, V tangent to X_f.

#include "coneslice/homogeneous.hpp"
#include "coneslice/report.hpp"
#include "coneslice/slice.hpp"

namespace coneslice {

/// The triple (f, l, k = exp(-l) f).
class Deformation {
 public:
  Deformation(HomogeneousFn f, HomogeneousFn l);

  const HomogeneousFn& f() const noexcept { return f_; }
  const HomogeneousFn& l() const noexcept { return l_; }
  const HomogeneousFn& k() const noexcept { return k_; }
  const Signature& signature() const noexcept { return f_.signature(); }

 private:
  HomogeneousFn f_;
  HomogeneousFn l_;
  HomogeneousFn k_;
};

/// exp(l(y)) y, a point of X_k. `p` must lie on X_f.
SlicePoint lambda_map(const Deformation& d, const SlicePoint& p);

/// exp(l) (V + dl(V) y). `v` must be tangent to X_f at p.
AmbientVector lambda_pushforward(const Deformation& d, const SlicePoint& p, const AmbientVector& v);

/// eta(Lambda_* U, Lambda_* V) - exp(2 l(y)) eta(U, V).
double weyl_residual(const Deformation& d, const SlicePoint& p, const AmbientVector& u,
                     const AmbientVector& v);

/// |weyl_residual| / max(1, |exp(2 l) eta(U, V)|).
double scaled_weyl_residual(const Deformation& d, const SlicePoint& p, const AmbientVector& u,
                            const AmbientVector& v);

/// Chart of X_k obtained by pushing a chart of X_f through Lambda.
SliceChart deformed_chart(const Deformation& d, const SliceChart& base);

/// Euclidean-unit random combination of the chart tangents at x.
AmbientVector random_chart_tangent(const SliceChart& chart, const Eigen::VectorXd& x, Engine& rng);

/// Draws chart coordinates accepted by `accept`, trying at most 100 times.
/// Throws DomainExhausted when every attempt is rejected.
Eigen::VectorXd draw_chart_point(const SliceChart& chart, Engine& rng,
                                 const std::function<bool(const Eigen::VectorXd&)>& accept = nullptr);

/// Seeded batch of scaled Weyl residuals on random (x, U, V) from a chart of X_f.
VerificationReport deformation_campaign(const Deformation& d, const SliceChart& chart,
                                        const CampaignOptions& options);

}  // namespace coneslice
