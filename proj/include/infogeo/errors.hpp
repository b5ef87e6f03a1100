#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

/// Base class for every failure signalled by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point left the model's declared open domain (directly, or through a
/// finite-difference stencil that could not be shrunk back inside).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// det(g + alpha T.v) fell below threshold: the cubic term dominates and the
/// velocity is outside the model's trust region.
class SingularMassMatrix : public Error {
 public:
  using Error::Error;
};

/// Newton shooting ran out of iterations or damping.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The shooting Jacobian dq(1)/dv_in lost rank (conjugate-point symptom).
class SingularShootingJacobian : public Error {
 public:
  using Error::Error;
};

/// An adaptive quadrature or step-halving estimate failed to settle.
class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

/// Pullback through a rank-deficient jacobian (degenerate induced metric).
class DegeneratePullback : public Error {
 public:
  using Error::Error;
};

/// Density not normalized, or KL integrand non-finite (support mismatch).
class DensityError : public Error {
 public:
  using Error::Error;
};

}  // namespace infogeo
