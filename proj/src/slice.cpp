#include "coneslice/slice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "coneslice/errors.hpp"

namespace coneslice {

namespace {

double cone_scale(const AmbientVector& y) { return std::max(1.0, y.max_abs() * y.max_abs()); }

std::string describe(const AmbientVector& y) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < y.dim(); ++i) os << (i ? ", " : "") << y[i];
  os << ")";
  return os.str();
}

}  // namespace

SlicePoint::SlicePoint(AmbientVector y, HomogeneousFn h) : y_(std::move(y)), h_(std::move(h)) {
  if (h_.degree() != 1.0) throw ContractViolation("SlicePoint: slice function must have degree 1");
  const auto [cone, level] = slice_residuals(y_, h_);
  if (std::abs(cone) > kSliceTolerance * cone_scale(y_) || std::abs(level) > kSliceTolerance) {
    throw ContractViolation("SlicePoint: " + describe(y_) + " is not on X_" + h_.name() +
                            " (cone residual " + std::to_string(cone) + ", level residual " +
                            std::to_string(level) + ")");
  }
}

std::pair<double, double> slice_residuals(const AmbientVector& y, const HomogeneousFn& h) {
  return {cone_constraint(y, h.signature()), h.eval(y) - 1.0};
}

SlicePoint ray_project(const AmbientVector& y, const HomogeneousFn& h) {
  if (y.dim() != h.dim()) throw ContractViolation("ray_project: dimension mismatch");
  if (std::abs(cone_constraint(y, h.signature())) > kSliceTolerance * cone_scale(y)) {
    throw ContractViolation("ray_project: " + describe(y) + " is not on the null cone");
  }
  const double hy = h.raw(y.span());
  if (!(hy > 1e-12)) {
    throw ProjectionUndefined("ray_project: " + h.name() + " <= 1e-12 at " + describe(y));
  }
  if (!h.contains(y)) throw OutOfDomain("ray_project: point outside domain of " + h.name());
  return SlicePoint(y / hy, h);
}

TangencyResiduals tangency(const SlicePoint& p, const AmbientVector& v) {
  const AmbientVector& y = p.y();
  const AmbientCovector dh = p.slice().differential(y);
  const double vmax = v.max_abs();
  return {std::abs(inner(y, v, p.signature())) / std::max(1.0, y.max_abs() * vmax),
          std::abs(apply(dh, v)) / std::max(1.0, dh.max_abs() * vmax)};
}

void require_tangent(const SlicePoint& p, const AmbientVector& v, const char* op) {
  const TangencyResiduals r = tangency(p, v);
  if (!r.within(kTangencyTolerance)) {
    throw ContractViolation(std::string(op) + ": vector not tangent to X_" + p.slice().name() +
                            " (cone " + std::to_string(r.cone) + ", level " +
                            std::to_string(r.level) + ")");
  }
}

std::vector<AmbientVector> tangent_basis(const SlicePoint& p) {
  const Signature& sig = p.signature();
  const int d = sig.dim();
  Eigen::MatrixXd constraints(2, d);
  constraints.row(0) = lower_index(p.y(), sig).coords().transpose();
  constraints.row(1) = p.slice().differential(p.y()).coords().transpose();
  // Row scaling keeps the rank test independent of |y|.
  for (int r = 0; r < 2; ++r) constraints.row(r) /= constraints.row(r).norm();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(1) > 1e-10 * sv(0))) {
    throw DegeneratePoint("tangent_basis: constraint covectors are linearly dependent at " +
                          describe(p.y()));
  }
  std::vector<AmbientVector> basis;
  basis.reserve(static_cast<std::size_t>(sig.n()));
  for (int j = 2; j < d; ++j) basis.emplace_back(svd.matrixV().col(j));
  return basis;
}

MetricSample induced_metric(const SlicePoint& p, const std::vector<AmbientVector>& basis) {
  const int m = static_cast<int>(basis.size());
  for (const auto& v : basis) require_tangent(p, v, "induced_metric");
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      g(i, j) = inner(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)],
                      p.signature());
      g(j, i) = g(i, j);
    }
  }
  return {Eigen::VectorXd(), std::move(g)};
}

MetricSignature metric_signature(const Eigen::MatrixXd& g, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  MetricSignature out;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= tol * scale) {
      ++out.zero;
    } else if (ev(i) > 0.0) {
      ++out.positive;
    } else {
      ++out.negative;
    }
  }
  return out;
}

SliceChart::SliceChart(std::string name, HomogeneousFn h, PointMap point_map,
                       TangentMap tangent_map, Domain domain, Sampler sampler)
    : name_(std::move(name)),
      h_(std::move(h)),
      point_map_(std::move(point_map)),
      tangent_map_(std::move(tangent_map)),
      domain_(std::move(domain)),
      sampler_(std::move(sampler)) {}

bool SliceChart::contains(const Eigen::VectorXd& x) const {
  return x.size() == n() && x.allFinite() && (!domain_ || domain_(x));
}

std::optional<Eigen::VectorXd> SliceChart::draw(Engine& rng) const {
  if (!sampler_) throw ContractViolation(name_ + ": chart has no sampler");
  std::optional<Eigen::VectorXd> x = sampler_(rng);
  if (x && !contains(*x)) return std::nullopt;
  return x;
}

void SliceChart::require_domain(const Eigen::VectorXd& x) const {
  if (x.size() != n()) throw ContractViolation(name_ + ": expected " + std::to_string(n()) + " chart coordinates");
  if (!contains(x)) throw OutOfDomain(name_ + ": chart coordinates outside domain");
}

SlicePoint SliceChart::point(const Eigen::VectorXd& x) const {
  require_domain(x);
  return SlicePoint(point_map_(x), h_);
}

AmbientVector SliceChart::tangent(const Eigen::VectorXd& x, int i) const {
  require_domain(x);
  if (i < 0 || i >= n()) throw ContractViolation(name_ + ": tangent index out of range");
  return tangent_map_(x, i);
}

std::vector<AmbientVector> SliceChart::tangents(const Eigen::VectorXd& x) const {
  std::vector<AmbientVector> out;
  out.reserve(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) out.push_back(tangent(x, i));
  return out;
}

MetricSample SliceChart::metric(const Eigen::VectorXd& x) const {
  const std::vector<AmbientVector> t = tangents(x);
  const Signature& sig = h_.signature();
  Eigen::MatrixXd g(n(), n());
  for (int i = 0; i < n(); ++i) {
    for (int j = i; j < n(); ++j) {
      g(i, j) = inner(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)], sig);
      g(j, i) = g(i, j);
    }
  }
  return {x, std::move(g)};
}

HomogeneousFn de_sitter_function(int n, double H) {
  if (!(H > 0.0)) throw ContractViolation("de Sitter slice: H must be positive");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 2);
  w(n + 1) = H;
  return HomogeneousFn::linear("f_dS", AmbientCovector(std::move(w)));
}

HomogeneousFn anti_de_sitter_function(int n, double H) {
  if (!(H > 0.0)) throw ContractViolation("anti-de Sitter slice: H must be positive");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 2);
  w(n) = H;
  return HomogeneousFn::linear("f_AdS", AmbientCovector(std::move(w)));
}

HomogeneousFn null_slice_function(int n, double H) {
  if (!(H > 0.0)) throw ContractViolation("null slice: H must be positive");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 2);
  w(n) = 0.5 * H;
  w(n + 1) = 0.5 * H;
  return HomogeneousFn::linear("f_null", AmbientCovector(std::move(w)));
}

double minkowski_quadratic(const Eigen::VectorXd& x) {
  return x(0) * x(0) - x.tail(x.size() - 1).squaredNorm();
}

namespace {

// d q / d x^i
double quadratic_partial(const Eigen::VectorXd& x, int i) {
  return i == 0 ? 2.0 * x(0) : -2.0 * x(i);
}

}  // namespace

SliceChart ds_graph_chart(int n, double H, int branch) {
  if (branch != 1 && branch != -1) throw ContractViolation("ds_graph_chart: branch must be +1 or -1");
  const HomogeneousFn f = de_sitter_function(n, H);
  const double inv_h2 = 1.0 / (H * H);
  const double s = branch;
  auto point_map = [n, H, inv_h2, s](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(n + 2);
    y.head(n) = x;
    y(n) = s * std::sqrt(minkowski_quadratic(x) + inv_h2);
    y(n + 1) = 1.0 / H;
    return AmbientVector(std::move(y));
  };
  auto tangent_map = [n, inv_h2, s](const Eigen::VectorXd& x, int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 2);
    v(i) = 1.0;
    v(n) = s * quadratic_partial(x, i) / (2.0 * std::sqrt(minkowski_quadratic(x) + inv_h2));
    return AmbientVector(std::move(v));
  };
  auto domain = [inv_h2](const Eigen::VectorXd& x) { return minkowski_quadratic(x) + inv_h2 > 0.0; };
  // Campaign draws stay clear of the chart edge where the graph turns vertical.
  auto sampler = [n, H, inv_h2](Engine& rng) -> std::optional<Eigen::VectorXd> {
    Eigen::VectorXd x = gaussian_vector(rng, n, 0.5 / H);
    if (minkowski_quadratic(x) + inv_h2 < 0.1 * inv_h2) return std::nullopt;
    return x;
  };
  return SliceChart(branch > 0 ? "dS+" : "dS-", f, point_map, tangent_map, domain, sampler);
}

SliceChart minkowski_null_chart(int n, double H) {
  const HomogeneousFn f = null_slice_function(n, H);
  auto point_map = [n, H](const Eigen::VectorXd& x) {
    const double q = minkowski_quadratic(x);
    Eigen::VectorXd y(n + 2);
    y.head(n) = x;
    y(n) = 1.0 / H + 0.25 * H * q;
    y(n + 1) = 1.0 / H - 0.25 * H * q;
    return AmbientVector(std::move(y));
  };
  auto tangent_map = [n, H](const Eigen::VectorXd& x, int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 2);
    v(i) = 1.0;
    const double dq = 0.25 * H * quadratic_partial(x, i);
    v(n) = dq;
    v(n + 1) = -dq;
    return AmbientVector(std::move(v));
  };
  auto sampler = [n, H](Engine& rng) -> std::optional<Eigen::VectorXd> {
    return gaussian_vector(rng, n, 0.5 / H);
  };
  return SliceChart("null", f, point_map, tangent_map, nullptr, sampler);
}

using Matrix = Eigen::MatrixXd;

double scalar_curvature_at_step(const SliceChart& chart, const Eigen::VectorXd& x, double h) {
  const int n = chart.n();
  if (x.size() != n) throw ContractViolation("scalar_curvature: coordinate dimension mismatch");
  if (!(h > 0.0) || x.cwiseAbs().maxCoeff() + h == x.cwiseAbs().maxCoeff()) {
    throw ContractViolation("scalar_curvature: finite-difference step underflow");
  }
  auto gram = [&](const Eigen::VectorXd& at) {
    if (!chart.contains(at)) {
      throw OutOfDomain("scalar_curvature: stencil leaves the chart domain of " + chart.name());
    }
    return chart.metric(at).G;
  };
  auto e = [n](int i) { return Eigen::VectorXd::Unit(n, i); };

  const Matrix g0 = gram(x);
  std::vector<Matrix> plus(static_cast<std::size_t>(n)), minus(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    plus[static_cast<std::size_t>(k)] = gram(x + h * e(k));
    minus[static_cast<std::size_t>(k)] = gram(x - h * e(k));
  }

  // dg[k](i,j) = d_k g_ij, ddg[k][l](i,j) = d_k d_l g_ij
  std::vector<Matrix> dg(static_cast<std::size_t>(n));
  std::vector<std::vector<Matrix>> ddg(static_cast<std::size_t>(n),
                                       std::vector<Matrix>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    dg[uk] = (plus[uk] - minus[uk]) / (2.0 * h);
    ddg[uk][uk] = (plus[uk] - 2.0 * g0 + minus[uk]) / (h * h);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      const Matrix mixed = (gram(x + h * e(k) + h * e(l)) - gram(x + h * e(k) - h * e(l)) -
                            gram(x - h * e(k) + h * e(l)) + gram(x - h * e(k) - h * e(l))) /
                           (4.0 * h * h);
      ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = mixed;
      ddg[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = mixed;
    }
  }

  Eigen::JacobiSVD<Matrix> svd(g0);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (!(sv(n - 1) > 0.0) || sv(0) / sv(n - 1) > 1e10) {
    throw DegenerateMetric("scalar_curvature: induced metric is singular or ill-conditioned");
  }
  const Matrix ginv = g0.inverse();
  std::vector<Matrix> dginv(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) dginv[static_cast<std::size_t>(k)] = -ginv * dg[static_cast<std::size_t>(k)] * ginv;

  auto idx = [n](int a, int b, int c) { return (a * n + b) * n + c; };
  auto d1 = [&](int k, int i, int j) { return dg[static_cast<std::size_t>(k)](i, j); };
  auto d2 = [&](int k, int l, int i, int j) {
    return ddg[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)](i, j);
  };

  // Christoffel symbols Gamma^a_bc and their derivatives d_e Gamma^a_bc.
  std::vector<double> gamma(static_cast<std::size_t>(n * n * n), 0.0);
  std::vector<double> dgamma(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        double sum = 0.0;
        for (int d = 0; d < n; ++d) sum += ginv(a, d) * (d1(b, d, c) + d1(c, d, b) - d1(d, b, c));
        gamma[static_cast<std::size_t>(idx(a, b, c))] = 0.5 * sum;
        for (int ee = 0; ee < n; ++ee) {
          double s = 0.0;
          for (int d = 0; d < n; ++d) {
            s += dginv[static_cast<std::size_t>(ee)](a, d) * (d1(b, d, c) + d1(c, d, b) - d1(d, b, c));
            s += ginv(a, d) * (d2(ee, b, d, c) + d2(ee, c, d, b) - d2(ee, d, b, c));
          }
          dgamma[static_cast<std::size_t>(ee * n * n * n + idx(a, b, c))] = 0.5 * s;
        }
      }
    }
  }
  auto G = [&](int a, int b, int c) { return gamma[static_cast<std::size_t>(idx(a, b, c))]; };
  auto dG = [&](int ee, int a, int b, int c) {
    return dgamma[static_cast<std::size_t>(ee * n * n * n + idx(a, b, c))];
  };

  double scalar = 0.0;
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      double ricci = 0.0;
      for (int a = 0; a < n; ++a) {
        ricci += dG(a, a, b, d) - dG(d, a, b, a);
        for (int ee = 0; ee < n; ++ee) ricci += G(a, a, ee) * G(ee, b, d) - G(a, d, ee) * G(ee, b, a);
      }
      scalar += ginv(b, d) * ricci;
    }
  }
  return scalar;
}

double scalar_curvature(const SliceChart& chart, const Eigen::VectorXd& x) {
  const double h = 1e-3 * std::max(1.0, x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
  const double coarse = scalar_curvature_at_step(chart, x, h);
  const double fine = scalar_curvature_at_step(chart, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace coneslice
