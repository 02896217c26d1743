#pragma once

#include <vector>

#include "hillspec/potential.hpp"
#include "hillspec/types.hpp"

namespace hillspec {

inline constexpr int kDefaultGridSize = 2048;
inline constexpr double kDefaultWronskianTol = 1e-10;

/// Fundamental solutions of -y'' + q y = lambda y on the normalized period
/// [0,1]: theta(0)=1, theta'(0)=0 and phi(0)=0, phi'(0)=1, sampled on the
/// uniform grid x_j = j/grid_size. `lambda` is in original-period units.
struct FundamentalPair {
  Complex lambda{};
  std::vector<double> x;
  std::vector<Complex> theta, theta_d, phi, phi_d;
  Mat2 monodromy{};               // [[theta(1), phi(1)], [theta'(1), phi'(1)]]
  double wronskian_residual = 0;  // max_j |theta phi' - theta' phi - 1|
};

/// Integrates the Hill equation for one fixed potential. Construction
/// precomputes the potential at every Runge-Kutta stage abscissa, so
/// repeated solves at different lambda share that work. Immutable after
/// construction; safe to use from parallel callers.
class HillIntegrator {
 public:
  explicit HillIntegrator(const PeriodicPotential& q,
                          int grid_size = kDefaultGridSize,
                          double wronskian_tol = kDefaultWronskianTol);

  /// Full sampled pair. Throws AccuracyError when the Wronskian residual
  /// exceeds the configured tolerance.
  FundamentalPair fundamental_pair(Complex lambda) const;

  /// Endpoint transfer matrix only (no sample storage). Checks |det-1|.
  Mat2 monodromy(Complex lambda) const;

  const PeriodicPotential& potential() const { return q_; }
  int grid_size() const { return n_; }
  double wronskian_tol() const { return tol_; }

 private:
  template <bool Store>
  FundamentalPair integrate(Complex lambda_internal, Complex lambda_orig) const;

  PeriodicPotential q_;
  int n_;
  double h_;
  double tol_;
  std::vector<Complex> qstage_;  // internal-units q at (step, stage) points
};

FundamentalPair fundamental_pair(const PeriodicPotential& q, Complex lambda,
                                 int grid_size = kDefaultGridSize);

Mat2 monodromy(const PeriodicPotential& q, Complex lambda,
               int grid_size = kDefaultGridSize);

}  // namespace hillspec
