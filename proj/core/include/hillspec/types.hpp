#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace hillspec {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// 2x2 complex matrix, row-major [[a, b], [c, d]].
struct Mat2 {
  Complex a{}, b{}, c{}, d{};

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }
};

/// Shared numerical knobs for the spectral solvers. Defaults are the
/// production settings; tests shrink them where tolerances allow.
struct SolverConfig {
  int grid_size = 2048;             // ODE steps per period (power of two preferred)
  double root_tol = 1e-9;           // |F(lambda) - 2 cos t| convergence target
  double wronskian_tol = 1e-10;     // fundamental-pair consistency gate
  int galerkin_truncation = 25;     // Fourier modes +-K for the matrix oracle
  double merge_scale = 1e-6;        // eigenvalues within merge_scale*(1+|l|) coincide
  int newton_max_iter = 40;
  double diff_step_scale = 1e-6;    // complex-step size 1e-6*(1+|l|)
  double jump_factor = 8.0;         // continuation jump threshold factor
  int max_halvings = 14;            // step-halving depth before giving up
  double t_ref = 1.0;               // quasimomentum used for band labeling
};

inline double merge_tolerance(const SolverConfig& cfg, const Complex& lambda) {
  return cfg.merge_scale * (1.0 + std::abs(lambda));
}

}  // namespace hillspec
