#pragma once

// Pseudo-Euclidean linear algebra on R^{n+2} with signature (2,n).
//
// Coordinates are indexed 0..n+1. The metric is diag(+1, -1, ..., -1, +1):
// the two timelike directions are index 0 and index n+1.

#include <span>

#include <Eigen/Dense>

namespace coneslice {

/// Sign pattern of the ambient metric for a slice dimension n >= 2.
class Signature {
 public:
  explicit Signature(int n);

  int n() const noexcept { return n_; }
  /// Ambient dimension n + 2.
  int dim() const noexcept { return n_ + 2; }
  const Eigen::VectorXd& diag() const noexcept { return diag_; }
  double sign(int index) const { return diag_(index); }
  Eigen::MatrixXd eta() const { return diag_.asDiagonal(); }

  bool operator==(const Signature& other) const noexcept { return n_ == other.n_; }

 private:
  int n_;
  Eigen::VectorXd diag_;
};

namespace detail {

void validate_coords(const Eigen::VectorXd& coords, const char* what);

/// Shared storage for vectors and covectors; the Tag keeps the two apart.
template <class Tag>
class AmbientArray {
 public:
  explicit AmbientArray(Eigen::VectorXd coords) : coords_(std::move(coords)) {
    validate_coords(coords_, Tag::name);
  }
  AmbientArray(std::initializer_list<double> coords)
      : AmbientArray(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
            coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

  static AmbientArray zero(int dim) { return AmbientArray(Eigen::VectorXd::Zero(dim)); }
  static AmbientArray unit(int dim, int index) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(index) = 1.0;
    return AmbientArray(std::move(e));
  }

  const Eigen::VectorXd& coords() const noexcept { return coords_; }
  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_(i); }
  std::span<const double> span() const noexcept {
    return {coords_.data(), static_cast<std::size_t>(coords_.size())};
  }
  double max_abs() const noexcept { return coords_.cwiseAbs().maxCoeff(); }

  friend AmbientArray operator+(const AmbientArray& a, const AmbientArray& b) {
    return AmbientArray(a.coords_ + b.coords_);
  }
  friend AmbientArray operator-(const AmbientArray& a, const AmbientArray& b) {
    return AmbientArray(a.coords_ - b.coords_);
  }
  friend AmbientArray operator*(double s, const AmbientArray& a) {
    return AmbientArray(s * a.coords_);
  }
  friend AmbientArray operator/(const AmbientArray& a, double s) {
    return AmbientArray(a.coords_ / s);
  }

 private:
  Eigen::VectorXd coords_;
};

struct VectorTag {
  static constexpr const char* name = "AmbientVector";
};
struct CovectorTag {
  static constexpr const char* name = "AmbientCovector";
};

}  // namespace detail

/// A point of R^{n+2}, or a tangent vector at such a point.
using AmbientVector = detail::AmbientArray<detail::VectorTag>;
/// Dual components, e.g. a differential df at a point.
using AmbientCovector = detail::AmbientArray<detail::CovectorTag>;

/// eta(u, v) = sum_a diag[a] u^a v^a.
double inner(const AmbientVector& u, const AmbientVector& v, const Signature& sig);

/// C(y) = eta(y, y). Zero on the null cone.
double cone_constraint(const AmbientVector& y, const Signature& sig);

/// The dilation field D = y^a d_a evaluated at y.
inline AmbientVector dilation_at(const AmbientVector& y) { return y; }

/// Pairing <w, V>.
double apply(const AmbientCovector& w, const AmbientVector& v);

AmbientVector raise_index(const AmbientCovector& w, const Signature& sig);
AmbientCovector lower_index(const AmbientVector& v, const Signature& sig);

}  // namespace coneslice
