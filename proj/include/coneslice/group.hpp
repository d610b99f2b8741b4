#pragma once

// SO(2,n): Lie algebra generators, the matrix exponential, and the nonlinear
// action y -> (A y) / k(A y) on a cone slice X_k together with its tangent map.

#include <vector>

#include <Eigen/Dense>

#include "coneslice/ambient.hpp"
#include "coneslice/homogeneous.hpp"
#include "coneslice/report.hpp"
#include "coneslice/slice.hpp"

namespace coneslice {

/// Element of so(2,n): M^T eta + eta M = 0.
class AlgebraElement {
 public:
  AlgebraElement(Eigen::MatrixXd m, const Signature& sig);
  static AlgebraElement zero(const Signature& sig);

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  const Signature& signature() const noexcept { return sig_; }
  /// max |M^T eta + eta M|.
  double antisymmetry_defect() const;

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(double s, const AlgebraElement& a);
  friend AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

 private:
  Eigen::MatrixXd m_;
  Signature sig_;
};

/// Element of SO(2,n): A^T eta A = eta, det A = 1. Construction checks both,
/// relative to max(1, |A|_max^2).
class GroupElement {
 public:
  GroupElement(Eigen::MatrixXd a, const Signature& sig);
  static GroupElement identity(const Signature& sig);

  const Eigen::MatrixXd& matrix() const noexcept { return a_; }
  const Signature& signature() const noexcept { return sig_; }
  /// max |A^T eta A - eta|.
  double isometry_defect() const;

  AmbientVector apply(const AmbientVector& y) const;
  /// eta A^T eta.
  GroupElement inverse() const;
  /// (b * a) acts as "a first, then b".
  friend GroupElement operator*(const GroupElement& b, const GroupElement& a);

 private:
  Eigen::MatrixXd a_;
  Signature sig_;
};

/// Generators M_ab (a < b) with (M_ab)^c_d = eta_bd delta^c_a - eta_ad delta^c_b,
/// (n+2)(n+1)/2 of them, ordered lexicographically in (a, b).
std::vector<AlgebraElement> algebra_basis(int n);

/// exp(M) by scaling and squaring with the degree-13 Pade approximant.
Eigen::MatrixXd expm_pade13(const Eigen::MatrixXd& m);

/// exp of an algebra element; rejects Frobenius norm > 50.
GroupElement exponential(const AlgebraElement& x);

/// sum_i c_i B_i over the basis with Gaussian c, rescaled to Frobenius norm rho.
AlgebraElement random_algebra_element(int n, double rho, Engine& rng);

/// (A y) / k(A y). Throws ConformalBoundary when k(A y) <= 1e-12 |A y|_inf
/// or A y leaves the domain of k.
SlicePoint act_on_slice(const GroupElement& alpha, const SlicePoint& p, const HomogeneousFn& k);

/// A V / k(A y) - dk_{A y}(A V) / k(A y)^2 * A y for V tangent to X_k at p.
AmbientVector tangent_action(const GroupElement& alpha, const SlicePoint& p, const AmbientVector& v,
                             const HomogeneousFn& k);

/// eta(T V1, T V2) - eta(V1, V2) / k(A y)^2 with T the tangent action.
double conformal_factor_residual(const GroupElement& alpha, const SlicePoint& p,
                                 const AmbientVector& v1, const AmbientVector& v2,
                                 const HomogeneousFn& k);

/// The conformal factor 1 / k(A y)^2.
double conformal_factor(const GroupElement& alpha, const SlicePoint& p, const HomogeneousFn& k);

struct GroupCampaignOptions : CampaignOptions {
  /// Frobenius norm of the sampled algebra elements.
  double rho = 0.5;
};

/// Scaled conformal-factor residuals over random (x, alpha, V1, V2), with x
/// drawn from a chart of X_k. Conformal-boundary hits are counted as
/// rejections; failing trials carry their group element for replay.
VerificationReport group_campaign(const HomogeneousFn& k, const SliceChart& chart,
                                  const GroupCampaignOptions& options);

}  // namespace coneslice
