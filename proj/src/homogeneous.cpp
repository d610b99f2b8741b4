#include "coneslice/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "coneslice/errors.hpp"
#include "coneslice/rng.hpp"

namespace coneslice {

DomainPredicate operator&&(const DomainPredicate& a, const DomainPredicate& b) {
  if (a.is_everything()) return b;
  if (b.is_everything()) return a;
  return DomainPredicate([a, b](std::span<const double> y) { return a.contains(y) && b.contains(y); });
}

const char* to_string(DifferentialMode mode) {
  switch (mode) {
    case DifferentialMode::Analytic:
      return "analytic";
    case DifferentialMode::Dual:
      return "dual";
    case DifferentialMode::FiniteDifference:
      return "finite-difference";
  }
  return "unknown";
}

double finite_difference_step(const AmbientVector& y) { return 6e-6 * std::max(1.0, y.max_abs()); }

struct HomogeneousFn::Impl {
  std::string name;
  Signature sig;
  double degree;
  Evaluator eval;
  DualEvaluator dual;
  Gradient gradient;
  DomainPredicate domain;
};

HomogeneousFn::HomogeneousFn(std::string name, Signature sig, double degree, Evaluator eval,
                             DualEvaluator dual, Gradient gradient, DomainPredicate domain,
                             DifferentialMode mode)
    : impl_(std::make_shared<const Impl>(Impl{std::move(name), std::move(sig), degree,
                                              std::move(eval), std::move(dual),
                                              std::move(gradient), std::move(domain)})),
      mode_(mode) {
  if (!impl_->eval) throw ContractViolation("HomogeneousFn: missing evaluator");
  if (!std::isfinite(degree)) throw ContractViolation("HomogeneousFn: non-finite degree");
}

HomogeneousFn HomogeneousFn::analytic(std::string name, int n, double degree, Evaluator eval,
                                      Gradient gradient, DomainPredicate domain,
                                      DualEvaluator dual) {
  if (!gradient) throw ContractViolation("HomogeneousFn::analytic: missing gradient");
  return HomogeneousFn(std::move(name), Signature(n), degree, std::move(eval), std::move(dual),
                       std::move(gradient), std::move(domain), DifferentialMode::Analytic);
}

HomogeneousFn HomogeneousFn::linear(std::string name, const AmbientCovector& w) {
  const Eigen::VectorXd coeffs = w.coords();
  const int n = w.dim() - 2;
  Evaluator eval = [coeffs](std::span<const double> y) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) s += coeffs(i) * y[i];
    return s;
  };
  DualEvaluator dual = [coeffs](std::span<const ad::Dual> y) {
    ad::Dual s;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) s += coeffs(i) * y[i];
    return s;
  };
  Gradient gradient = [coeffs](std::span<const double>) { return coeffs; };
  return HomogeneousFn(std::move(name), Signature(n), 1.0, std::move(eval), std::move(dual),
                       std::move(gradient), DomainPredicate{}, DifferentialMode::Analytic);
}

const std::string& HomogeneousFn::name() const noexcept { return impl_->name; }
double HomogeneousFn::degree() const noexcept { return impl_->degree; }
const Signature& HomogeneousFn::signature() const noexcept { return impl_->sig; }
const DomainPredicate& HomogeneousFn::domain() const noexcept { return impl_->domain; }
bool HomogeneousFn::has_dual() const noexcept { return static_cast<bool>(impl_->dual); }
bool HomogeneousFn::has_gradient() const noexcept { return static_cast<bool>(impl_->gradient); }

bool HomogeneousFn::contains(const AmbientVector& y) const {
  return y.dim() == dim() && impl_->domain.contains(y);
}

void HomogeneousFn::require_domain(const AmbientVector& y, const char* op) const {
  if (y.dim() != dim()) {
    throw ContractViolation(name() + "::" + op + ": dimension mismatch");
  }
  if (!impl_->domain.contains(y)) {
    throw OutOfDomain(name() + "::" + op + ": point outside domain");
  }
}

double HomogeneousFn::eval(const AmbientVector& y) const {
  require_domain(y, "eval");
  return impl_->eval(y.span());
}

double HomogeneousFn::raw(std::span<const double> y) const { return impl_->eval(y); }

ad::Dual HomogeneousFn::raw(std::span<const ad::Dual> y) const {
  if (!impl_->dual) throw DifferentiationFailure(name() + ": no dual-number evaluator");
  return impl_->dual(y);
}

namespace {

std::vector<ad::Dual> seeded(const AmbientVector& y, const Eigen::VectorXd& direction) {
  std::vector<ad::Dual> out(static_cast<std::size_t>(y.dim()));
  for (int i = 0; i < y.dim(); ++i) out[static_cast<std::size_t>(i)] = {y[i], direction(i)};
  return out;
}

}  // namespace

AmbientCovector HomogeneousFn::differential(const AmbientVector& y) const {
  require_domain(y, "differential");
  const int d = dim();
  Eigen::VectorXd w(d);
  switch (mode_) {
    case DifferentialMode::Analytic:
      w = impl_->gradient(y.span());
      break;
    case DifferentialMode::Dual:
      for (int i = 0; i < d; ++i) {
        const auto duals = seeded(y, Eigen::VectorXd::Unit(d, i));
        w(i) = impl_->dual(duals).der;
      }
      break;
    case DifferentialMode::FiniteDifference: {
      const double h = finite_difference_step(y);
      Eigen::VectorXd probe = y.coords();
      for (int i = 0; i < d; ++i) {
        const double orig = probe(i);
        probe(i) = orig + h;
        const double up = impl_->eval({probe.data(), static_cast<std::size_t>(d)});
        probe(i) = orig - h;
        const double down = impl_->eval({probe.data(), static_cast<std::size_t>(d)});
        probe(i) = orig;
        w(i) = (up - down) / (2.0 * h);
      }
      break;
    }
  }
  if (w.size() != d || !w.allFinite()) {
    throw DifferentiationFailure(name() + ": non-finite differential");
  }
  return AmbientCovector(std::move(w));
}

double HomogeneousFn::directional(const AmbientVector& y, const AmbientVector& v) const {
  if (mode_ != DifferentialMode::Dual) return apply(differential(y), v);
  require_domain(y, "directional");
  if (v.dim() != dim()) throw ContractViolation(name() + "::directional: dimension mismatch");
  const double out = impl_->dual(seeded(y, v.coords())).der;
  if (!std::isfinite(out)) throw DifferentiationFailure(name() + ": non-finite derivative");
  return out;
}

HomogeneousFn HomogeneousFn::with_mode(DifferentialMode mode) const {
  if (mode == DifferentialMode::Analytic && !has_gradient()) {
    throw ContractViolation(name() + ": no analytic gradient available");
  }
  if (mode == DifferentialMode::Dual && !has_dual()) {
    throw ContractViolation(name() + ": no dual-number evaluator available");
  }
  HomogeneousFn out = *this;
  out.mode_ = mode;
  return out;
}

double check_homogeneity(const HomogeneousFn& f, int samples, std::uint64_t seed) {
  if (samples < 1) throw ContractViolation("check_homogeneity: samples must be >= 1");
  constexpr int kAttempts = 100;
  double worst = 0.0;
  int used = 0;
  for (int s = 0; s < samples; ++s) {
    Engine rng = trial_engine(seed, static_cast<std::uint64_t>(s));
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      const AmbientVector y(gaussian_vector(rng, f.dim()));
      const double t = log_uniform(rng, 0.1, 10.0);
      const AmbientVector ty = t * y;
      if (!f.contains(y) || !f.contains(ty)) continue;
      const double expected = std::pow(t, f.degree()) * f.eval(y);
      const double residual = std::abs(f.eval(ty) - expected) / std::max(1.0, std::abs(expected));
      worst = std::max(worst, residual);
      ++used;
      break;
    }
  }
  if (used == 0) throw Inconclusive("check_homogeneity: no sample landed in the domain of " + f.name());
  return worst;
}

double euler_residual(const HomogeneousFn& f, const AmbientVector& y) {
  return f.directional(y, y) - f.degree() * f.eval(y);
}

namespace {

void require_nonempty(const HomogeneousFn& fn) {
  Engine rng = trial_engine(0x5eedULL, 0);
  for (int i = 0; i < 1000; ++i) {
    if (fn.contains(AmbientVector(gaussian_vector(rng, fn.dim())))) return;
  }
  throw ContractViolation(fn.name() + ": domain intersection is empty");
}

}  // namespace

HomogeneousFn compose_k(const HomogeneousFn& f, const HomogeneousFn& l) {
  if (f.degree() != 1.0 || l.degree() != 0.0) {
    throw ContractViolation("compose_k: need f of degree 1 and l of degree 0");
  }
  if (!(f.signature() == l.signature())) throw ContractViolation("compose_k: dimension mismatch");

  HomogeneousFn::Evaluator eval = [f, l](std::span<const double> y) { return std::exp(-l.raw(y)) * f.raw(y); };
  HomogeneousFn::DualEvaluator dual;
  if (f.has_dual() && l.has_dual()) {
    dual = [f, l](std::span<const ad::Dual> y) { return exp(-l.raw(y)) * f.raw(y); };
  }
  HomogeneousFn::Gradient gradient = [f, l](std::span<const double> y) -> Eigen::VectorXd {
    const AmbientVector p(Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
    const double fy = f.raw(y);
    return std::exp(-l.raw(y)) * (f.differential(p).coords() - fy * l.differential(p).coords());
  };
  DomainPredicate positive([f, l](std::span<const double> y) {
    return std::exp(-l.raw(y)) * f.raw(y) > 1e-12;
  });
  HomogeneousFn k = HomogeneousFn::analytic("exp(-" + l.name() + ")*" + f.name(),
                                            f.signature().n(), 1.0, std::move(eval),
                                            std::move(gradient),
                                            f.domain() && l.domain() && positive, std::move(dual));
  require_nonempty(k);
  return k;
}

HomogeneousFn extend_scale_factor(const SliceFunction& a, const HomogeneousFn& f) {
  if (f.degree() != 1.0) throw ContractViolation("extend_scale_factor: f must have degree 1");
  if (!f.has_dual()) {
    throw ContractViolation("extend_scale_factor: f needs a dual-number evaluator");
  }
  auto ray = [f, a](auto y) {
    using T = typename decltype(y)::value_type;
    const T fy = f.raw(y);
    std::vector<T> p(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] / fy;
    return a(std::span<const T>(p));
  };
  DomainPredicate on_ray([f, a](std::span<const double> y) {
    const double fy = f.raw(y);
    if (!(fy > 0.0)) return false;
    std::vector<double> p(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] / fy;
    return a.domain().contains(p);
  });
  return HomogeneousFn::smooth(a.name() + "@ray(" + f.name() + ")", f.signature().n(), 0.0, ray,
                               f.domain() && on_ray);
}

}  // namespace coneslice
