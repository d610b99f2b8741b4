#include "coneslice/group.hpp"

#include <algorithm>
#include <cmath>

#include "coneslice/embedding.hpp"
#include "coneslice/errors.hpp"

namespace coneslice {

namespace {

void check_square(const Eigen::MatrixXd& m, const Signature& sig, const char* what) {
  if (m.rows() != sig.dim() || m.cols() != sig.dim()) {
    throw ContractViolation(std::string(what) + ": matrix must be " + std::to_string(sig.dim()) +
                            "x" + std::to_string(sig.dim()));
  }
  if (!m.allFinite()) throw ContractViolation(std::string(what) + ": non-finite entry");
}

}  // namespace

AlgebraElement::AlgebraElement(Eigen::MatrixXd m, const Signature& sig) : m_(std::move(m)), sig_(sig) {
  check_square(m_, sig_, "AlgebraElement");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (antisymmetry_defect() > 1e-12 * scale) {
    throw ContractViolation("AlgebraElement: matrix is not eta-antisymmetric");
  }
}

AlgebraElement AlgebraElement::zero(const Signature& sig) {
  return AlgebraElement(Eigen::MatrixXd::Zero(sig.dim(), sig.dim()), sig);
}

double AlgebraElement::antisymmetry_defect() const {
  const Eigen::MatrixXd eta = sig_.eta();
  return (m_.transpose() * eta + eta * m_).cwiseAbs().maxCoeff();
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(a.m_ + b.m_, a.sig_);
}

AlgebraElement operator*(double s, const AlgebraElement& a) { return AlgebraElement(s * a.m_, a.sig_); }

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return AlgebraElement(a.m_ * b.m_ - b.m_ * a.m_, a.sig_);
}

GroupElement::GroupElement(Eigen::MatrixXd a, const Signature& sig) : a_(std::move(a)), sig_(sig) {
  check_square(a_, sig_, "GroupElement");
  const double amax = a_.cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, amax * amax);
  if (isometry_defect() > 1e-10 * scale) {
    throw ContractViolation("GroupElement: matrix does not preserve eta");
  }
  const double det = a_.determinant();
  if (std::abs(det - 1.0) > 1e-8 * std::max(1.0, std::pow(amax, sig_.dim()))) {
    throw ContractViolation("GroupElement: determinant " + std::to_string(det) + " != 1");
  }
}

GroupElement GroupElement::identity(const Signature& sig) {
  return GroupElement(Eigen::MatrixXd::Identity(sig.dim(), sig.dim()), sig);
}

double GroupElement::isometry_defect() const {
  const Eigen::MatrixXd eta = sig_.eta();
  return (a_.transpose() * eta * a_ - eta).cwiseAbs().maxCoeff();
}

AmbientVector GroupElement::apply(const AmbientVector& y) const {
  if (y.dim() != sig_.dim()) throw ContractViolation("GroupElement::apply: dimension mismatch");
  return AmbientVector(a_ * y.coords());
}

GroupElement GroupElement::inverse() const {
  const Eigen::MatrixXd eta = sig_.eta();
  return GroupElement(eta * a_.transpose() * eta, sig_);
}

GroupElement operator*(const GroupElement& b, const GroupElement& a) {
  if (!(a.sig_ == b.sig_)) throw ContractViolation("GroupElement: signature mismatch");
  return GroupElement(b.a_ * a.a_, a.sig_);
}

std::vector<AlgebraElement> algebra_basis(int n) {
  const Signature sig(n);
  const int d = sig.dim();
  std::vector<AlgebraElement> basis;
  basis.reserve(static_cast<std::size_t>(d * (d - 1) / 2));
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      m(a, b) = sig.sign(b);
      m(b, a) = -sig.sign(a);
      basis.emplace_back(std::move(m), sig);
    }
  }
  return basis;
}

Eigen::MatrixXd expm_pade13(const Eigen::MatrixXd& m) {
  // Higham (2005): theta_13 and the [13/13] Pade coefficients.
  constexpr double kTheta13 = 5.371920351148152;
  constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                          1187353796428800.0,  129060195264000.0,   10559470521600.0,
                          670442572800.0,      33522128640.0,       1323241920.0,
                          40840800.0,          960960.0,            16380.0,
                          182.0,               1.0};
  const Eigen::Index d = m.rows();
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / kTheta13))));
  const Eigen::MatrixXd a = m / std::ldexp(1.0, squarings);

  const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Eigen::MatrixXd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

GroupElement exponential(const AlgebraElement& x) {
  if (x.matrix().norm() > 50.0) {
    throw ContractViolation("exponential: |X|_F > 50 would overflow the group element checks");
  }
  if (x.matrix().isZero(0.0)) return GroupElement::identity(x.signature());
  return GroupElement(expm_pade13(x.matrix()), x.signature());
}

AlgebraElement random_algebra_element(int n, double rho, Engine& rng) {
  if (!(rho >= 0.0)) throw ContractViolation("random_algebra_element: rho must be >= 0");
  const std::vector<AlgebraElement> basis = algebra_basis(n);
  const Eigen::VectorXd c = gaussian_vector(rng, static_cast<int>(basis.size()));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 2, n + 2);
  for (std::size_t i = 0; i < basis.size(); ++i) m += c(static_cast<Eigen::Index>(i)) * basis[i].matrix();
  const double norm = m.norm();
  if (rho == 0.0 || norm == 0.0) return AlgebraElement::zero(Signature(n));
  return AlgebraElement(m * (rho / norm), Signature(n));
}

namespace {

struct Image {
  AmbientVector z;  // alpha . y
  double kz;        // k(alpha . y)
};

bool is_identity(const GroupElement& alpha) { return alpha.matrix().isIdentity(0.0); }

Image image_of(const GroupElement& alpha, const SlicePoint& p, const HomogeneousFn& k) {
  const SlicePoint on_k(p.y(), k);
  // k(y) = 1 on X_k.
  if (is_identity(alpha)) return {on_k.y(), 1.0};
  AmbientVector z = alpha.apply(on_k.y());
  if (!k.contains(z)) throw ConformalBoundary("act_on_slice: alpha.y leaves the domain of " + k.name());
  const double kz = k.eval(z);
  if (!(kz > 1e-12 * z.max_abs())) {
    throw ConformalBoundary("act_on_slice: k(alpha.y) = " + std::to_string(kz) +
                            " at or below the conformal-boundary threshold");
  }
  return {std::move(z), kz};
}

}  // namespace

SlicePoint act_on_slice(const GroupElement& alpha, const SlicePoint& p, const HomogeneousFn& k) {
  const Image im = image_of(alpha, p, k);
  return SlicePoint(im.z / im.kz, k);
}

AmbientVector tangent_action(const GroupElement& alpha, const SlicePoint& p, const AmbientVector& v,
                             const HomogeneousFn& k) {
  require_tangent(SlicePoint(p.y(), k), v, "tangent_action");
  const Image im = image_of(alpha, p, k);
  if (is_identity(alpha)) return v;
  const AmbientVector w = alpha.apply(v);
  const double dk_w = k.directional(im.z, w);
  return AmbientVector(w.coords() / im.kz - (dk_w / (im.kz * im.kz)) * im.z.coords());
}

double conformal_factor(const GroupElement& alpha, const SlicePoint& p, const HomogeneousFn& k) {
  const double kz = image_of(alpha, p, k).kz;
  return 1.0 / (kz * kz);
}

double conformal_factor_residual(const GroupElement& alpha, const SlicePoint& p,
                                 const AmbientVector& v1, const AmbientVector& v2,
                                 const HomogeneousFn& k) {
  const Signature& sig = k.signature();
  const double lhs = inner(tangent_action(alpha, p, v1, k), tangent_action(alpha, p, v2, k), sig);
  return lhs - conformal_factor(alpha, p, k) * inner(v1, v2, sig);
}

VerificationReport group_campaign(const HomogeneousFn& k, const SliceChart& chart,
                                  const GroupCampaignOptions& options) {
  if (options.trials < 1) throw ContractViolation("group_campaign: trials must be >= 1");
  const int n = k.signature().n();
  return run_campaign("conformal:" + k.name(), options, [&](std::uint64_t i) {
    Engine rng = trial_engine(options.seed, i);
    const Eigen::VectorXd x = draw_chart_point(chart, rng);
    const SlicePoint p = chart.point(x);
    const AmbientVector v1 = random_chart_tangent(chart, x, rng);
    const AmbientVector v2 = random_chart_tangent(chart, x, rng);
    const GroupElement alpha = exponential(random_algebra_element(n, options.rho, rng));
    TrialOutcome out;
    try {
      const double factor = conformal_factor(alpha, p, k);
      const double rhs = factor * inner(v1, v2, k.signature());
      out.residual = std::abs(conformal_factor_residual(alpha, p, v1, v2, k)) / std::max(1.0, std::abs(rhs));
    } catch (const ConformalBoundary&) {
      out.rejected = true;
    }
    if (!out.rejected && !(out.residual <= options.tolerance)) out.payload = alpha.matrix();
    return out;
  });
}

}  // namespace coneslice
