#include "coneslice/ambient.hpp"

#include <string>

#include "coneslice/errors.hpp"

namespace coneslice {

Signature::Signature(int n) : n_(n) {
  if (n < 2) {
    throw ContractViolation("Signature: slice dimension must be >= 2, got " + std::to_string(n));
  }
  diag_ = -Eigen::VectorXd::Ones(n + 2);
  diag_(0) = 1.0;
  diag_(n + 1) = 1.0;
}

namespace detail {

void validate_coords(const Eigen::VectorXd& coords, const char* what) {
  if (coords.size() < 4) {
    throw ContractViolation(std::string(what) + ": need at least 4 coordinates (n >= 2), got " +
                            std::to_string(coords.size()));
  }
  if (!coords.allFinite()) {
    throw ContractViolation(std::string(what) + ": non-finite coordinate");
  }
}

}  // namespace detail

namespace {

void check_dim(int got, const Signature& sig, const char* op) {
  if (got != sig.dim()) {
    throw ContractViolation(std::string(op) + ": dimension " + std::to_string(got) +
                            " does not match signature dimension " + std::to_string(sig.dim()));
  }
}

}  // namespace

double inner(const AmbientVector& u, const AmbientVector& v, const Signature& sig) {
  check_dim(u.dim(), sig, "inner");
  check_dim(v.dim(), sig, "inner");
  return (sig.diag().array() * u.coords().array() * v.coords().array()).sum();
}

double cone_constraint(const AmbientVector& y, const Signature& sig) { return inner(y, y, sig); }

double apply(const AmbientCovector& w, const AmbientVector& v) {
  if (w.dim() != v.dim()) {
    throw ContractViolation("apply: covector/vector dimension mismatch");
  }
  return w.coords().dot(v.coords());
}

AmbientVector raise_index(const AmbientCovector& w, const Signature& sig) {
  check_dim(w.dim(), sig, "raise_index");
  return AmbientVector(sig.diag().cwiseProduct(w.coords()));
}

AmbientCovector lower_index(const AmbientVector& v, const Signature& sig) {
  check_dim(v.dim(), sig, "lower_index");
  return AmbientCovector(sig.diag().cwiseProduct(v.coords()));
}

}  // namespace coneslice
