#pragma once

// Standard slices (de Sitter, anti-de Sitter, null/Minkowski), FLRW-type
// spaces W = exp(l) Sigma built from a scale factor on de Sitter space, and
// the local classification of a slice X_k by its osculating plane.

#include <string>
#include <string_view>

#include "coneslice/embedding.hpp"
#include "coneslice/homogeneous.hpp"
#include "coneslice/slice.hpp"

namespace coneslice {

enum class SliceKind { DeSitter, AntiDeSitter, MinkowskiNull };

const char* to_string(SliceKind kind);

struct StandardSlice {
  SliceKind kind;
  double H;
  HomogeneousFn f;
};

StandardSlice standard_slice(SliceKind kind, int n, double H);

/// tau(y) = 1 / (H f_null(y)) = 2 / (H^2 (y^n + y^{n+1})), the conformal time
/// of the flat slicing of de Sitter space. Positive on the + graph branch.
double conformal_time(std::span<const double> y, double H);

/// Scale factors by name:
///   "zero"     a = 0
///   "const:c"  a = c
///   "power:p"  a = p ln(tau), tau the conformal time above
/// Throws ContractViolation on anything else.
SliceFunction parse_scale_factor(std::string_view spec, int n, double H);

struct FlrwSpace {
  StandardSlice base;   // de Sitter, Sigma = X_f
  SliceFunction a;      // scale factor on Sigma
  Deformation deformation;  // (f_dS, l, k)
  SliceChart sigma_chart;   // + branch graph chart of Sigma
  SliceChart w_chart;       // the same chart pushed through Lambda onto W = X_k

  const HomogeneousFn& l() const noexcept { return deformation.l(); }
  const HomogeneousFn& k() const noexcept { return deformation.k(); }
};

/// l = a(y / f_dS(y)), k = exp(-l) f_dS, W = X_k. Checks that l restricts
/// to a on Sigma at the chart origin.
FlrwSpace build_flrw(const SliceFunction& a, int n, double H);

/// max_ij |G^W_ij(Lambda(p)) - exp(2 a(p)) G^dS_ij(p)| at dS chart point x.
double flrw_metric_residual(const FlrwSpace& space, const Eigen::VectorXd& x);

enum class Classification { DeSitter, AntiDeSitter, Null };

const char* to_string(Classification c);

/// |K|^2 within this band counts as null.
inline constexpr double kNullBand = 1e-10;

struct OsculatingResult {
  AmbientVector K;  // raised gradient of k at y_o
  double norm_sq;   // eta(K, K)
  Classification classification;
  HomogeneousFn f_local;  // y -> dk_{y_o}(y)
};

/// Osculating linear slice of X_k at y_o, classified by the sign of |K|^2.
OsculatingResult osculating_slice(const HomogeneousFn& k, const SlicePoint& y_o);

nlohmann::json to_json(const OsculatingResult& result);

}  // namespace coneslice
