#pragma once

// Homogeneous scalar functions on R^{n+2}: f(t y) = t^d f(y) for t > 0.
//
// Slices, the deformation map and the group action are all driven by such
// functions (degree 1 for slice functions, degree 0 for scale-factor
// extensions). Each function carries an evaluator and a way to produce its
// differential.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>

#include "coneslice/ambient.hpp"
#include "coneslice/dual.hpp"

namespace coneslice {

/// Ray-invariant subset of R^{n+2} on which a function is defined.
class DomainPredicate {
 public:
  using Fn = std::function<bool(std::span<const double>)>;

  /// The whole space.
  DomainPredicate() = default;
  explicit DomainPredicate(Fn fn) : fn_(std::move(fn)) {}

  bool contains(std::span<const double> y) const { return !fn_ || fn_(y); }
  bool contains(const AmbientVector& y) const { return contains(y.span()); }
  bool is_everything() const noexcept { return !fn_; }

  /// Intersection, short-circuiting left to right.
  friend DomainPredicate operator&&(const DomainPredicate& a, const DomainPredicate& b);

 private:
  Fn fn_;
};

enum class DifferentialMode {
  Analytic,          // closed-form gradient supplied at construction
  Dual,              // forward-mode dual numbers, one pass per direction
  FiniteDifference,  // central differences; kept as a cross-check
};

const char* to_string(DifferentialMode mode);

/// Central-difference step used by the finite-difference mode.
double finite_difference_step(const AmbientVector& y);

class HomogeneousFn {
 public:
  using Evaluator = std::function<double(std::span<const double>)>;
  using DualEvaluator = std::function<ad::Dual(std::span<const ad::Dual>)>;
  using Gradient = std::function<Eigen::VectorXd(std::span<const double>)>;

  /// Build from a generic callable usable on both `std::span<const double>`
  /// and `std::span<const ad::Dual>`; differentials come from dual numbers.
  /// The callable must be pure.
  template <class F>
  static HomogeneousFn smooth(std::string name, int n, double degree, F fn,
                              DomainPredicate domain = {}) {
    Evaluator eval = [fn](std::span<const double> y) -> double { return fn(y); };
    DualEvaluator dual = [fn](std::span<const ad::Dual> y) -> ad::Dual { return fn(y); };
    return HomogeneousFn(std::move(name), Signature(n), degree, std::move(eval), std::move(dual),
                         nullptr, std::move(domain), DifferentialMode::Dual);
  }

  /// Build from an evaluator and a closed-form gradient.
  static HomogeneousFn analytic(std::string name, int n, double degree, Evaluator eval,
                                Gradient gradient, DomainPredicate domain = {},
                                DualEvaluator dual = nullptr);

  /// f(y) = <w, y>; degree 1, defined everywhere, analytic differential w.
  static HomogeneousFn linear(std::string name, const AmbientCovector& w);

  const std::string& name() const noexcept;
  double degree() const noexcept;
  const Signature& signature() const noexcept;
  int dim() const noexcept { return signature().dim(); }
  const DomainPredicate& domain() const noexcept;
  DifferentialMode mode() const noexcept { return mode_; }
  bool has_dual() const noexcept;
  bool has_gradient() const noexcept;

  bool contains(const AmbientVector& y) const;

  /// Checked evaluation; throws OutOfDomain outside the domain predicate.
  double eval(const AmbientVector& y) const;
  double operator()(const AmbientVector& y) const { return eval(y); }

  /// Unchecked evaluators used when composing functions.
  double raw(std::span<const double> y) const;
  ad::Dual raw(std::span<const ad::Dual> y) const;

  /// df at y, by the active mode. Throws OutOfDomain or DifferentiationFailure.
  AmbientCovector differential(const AmbientVector& y) const;
  /// df_y(v); a single dual pass in Dual mode.
  double directional(const AmbientVector& y, const AmbientVector& v) const;

  /// Same function, different differentiation route.
  HomogeneousFn with_mode(DifferentialMode mode) const;

 private:
  struct Impl;

  HomogeneousFn(std::string name, Signature sig, double degree, Evaluator eval,
                DualEvaluator dual, Gradient gradient, DomainPredicate domain,
                DifferentialMode mode);

  void require_domain(const AmbientVector& y, const char* op) const;

  std::shared_ptr<const Impl> impl_;
  DifferentialMode mode_;
};

/// A scalar function on points of a slice, written as a formula in ambient
/// coordinates (for instance a scale factor a on de Sitter space).
class SliceFunction {
 public:
  template <class F>
  static SliceFunction smooth(std::string name, F fn, DomainPredicate domain = {}) {
    SliceFunction out;
    out.name_ = std::move(name);
    out.eval_ = [fn](std::span<const double> y) -> double { return fn(y); };
    out.dual_ = [fn](std::span<const ad::Dual> y) -> ad::Dual { return fn(y); };
    out.domain_ = std::move(domain);
    return out;
  }

  const std::string& name() const noexcept { return name_; }
  const DomainPredicate& domain() const noexcept { return domain_; }
  double operator()(std::span<const double> y) const { return eval_(y); }
  ad::Dual operator()(std::span<const ad::Dual> y) const { return dual_(y); }
  double operator()(const AmbientVector& y) const { return eval_(y.span()); }

 private:
  std::string name_;
  std::function<double(std::span<const double>)> eval_;
  std::function<ad::Dual(std::span<const ad::Dual>)> dual_;
  DomainPredicate domain_;
};

/// Max relative homogeneity defect over `samples` seeded (y, t) draws:
/// |f(t y) - t^d f(y)| / max(1, |t^d f(y)|), t log-uniform in [0.1, 10].
/// Throws Inconclusive if no sample lands in the domain.
double check_homogeneity(const HomogeneousFn& f, int samples, std::uint64_t seed);

/// df_y(y) - degree * f(y); zero for an exactly homogeneous f.
double euler_residual(const HomogeneousFn& f, const AmbientVector& y);

/// k = exp(-l) f for f of degree 1 and l of degree 0. The domain is the
/// intersection of both domains restricted to k > 1e-12, and
/// dk = exp(-l) (df - f dl).
HomogeneousFn compose_k(const HomogeneousFn& f, const HomogeneousFn& l);

/// Degree-0 extension l(y) = a(y / f(y)) of a slice function a on X_f.
/// Defined where f(y) > 0; restricts to a on X_f exactly.
HomogeneousFn extend_scale_factor(const SliceFunction& a, const HomogeneousFn& f);

}  // namespace coneslice
