#pragma once

#include <stdexcept>
#include <string>

namespace minfib {

/// Base class of every error thrown by the toolkit.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerics
struct DegenerateInput : Error { using Error::Error; };

// manifolds
struct TangencyViolation : Error { using Error::Error; };
struct RetractFailed : Error { using Error::Error; };

// calculus
struct DegeneratePoint : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };

// catalog
struct IndexOutOfRange : Error { using Error::Error; };
struct NotIsotropic : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct ZeroCoefficient : Error { using Error::Error; };
struct MixedFamilies : Error { using Error::Error; };

// fields
struct InvalidField : Error { using Error::Error; };

// fibres
struct FibreNotFound : Error {
  FibreNotFound(const std::string& what, double best)
      : Error(what), best_residual(best) {}
  double best_residual;
};
struct ProjectionFailed : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

}  // namespace minfib
