#pragma once

#include <stdexcept>
#include <string>

namespace hillspec {

/// Base class for all library failures so callers can catch one type.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// ODE integration produced a Wronskian/determinant residual above tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& msg, double residual)
      : Error(msg), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Newton root count disagrees with the Galerkin oracle in the same disc.
class MissedRootError : public Error {
 public:
  using Error::Error;
};

/// Band continuation could not cross an interval even at minimal step.
class ContinuationError : public Error {
 public:
  ContinuationError(const std::string& msg, double t_lo, double t_hi)
      : Error(msg), t_lo_(t_lo), t_hi_(t_hi) {}
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }

 private:
  double t_lo_, t_hi_;
};

/// The closed-form Bloch solution degenerated to zero (both monodromy rows).
class DegenerateFormulaError : public Error {
 public:
  using Error::Error;
};

/// |alpha| too small to scale the biorthogonal element stably.
class AlphaUnderflowError : public Error {
 public:
  using Error::Error;
};

/// Input function has mass outside the declared translation window.
class SupportOverflowError : public Error {
 public:
  using Error::Error;
};

/// Grouped principal-value table failed its Cauchy criterion.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Lambda-domain and t-domain integrands disagree at the calibration point.
class BranchInconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace hillspec
