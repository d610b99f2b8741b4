#pragma once

#include <stdexcept>
#include <string>

namespace coneslice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (dimension mismatch, non-tangent
/// input, invalid construction parameters).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain predicate.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class DifferentiationFailure : public Error {
 public:
  using Error::Error;
};

/// Sampling could not produce a single usable point.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class ProjectionUndefined : public Error {
 public:
  using Error::Error;
};

/// The two slice constraint covectors are linearly dependent.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

class DegenerateMetric : public Error {
 public:
  using Error::Error;
};

/// The group action pushed a point to k <= threshold, i.e. off the chartable
/// part of the slice.
class ConformalBoundary : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling hit its attempt cap.
class DomainExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace coneslice
