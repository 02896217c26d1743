#pragma once

#include <cstdint>
#include <vector>

#include "hillspec/fundsol.hpp"
#include "hillspec/potential.hpp"
#include "hillspec/types.hpp"

namespace hillspec {

/// Hill discriminant F(lambda) = theta(1) + phi'(1) (monodromy trace).
Complex discriminant(const HillIntegrator& integ, Complex lambda);
Complex discriminant(const PeriodicPotential& q, Complex lambda,
                     int grid_size = kDefaultGridSize);

/// p(lambda) = branch * sqrt(4 - F(lambda)^2), principal square root.
/// On a band point lambda_n(t) this has modulus |2 sin t|.
Complex p_function(const PeriodicPotential& q, Complex lambda, int branch = 1,
                   int grid_size = kDefaultGridSize);

/// Eigenvalues of the (2K+1)-dimensional Fourier section of L_t(q), sorted
/// by magnitude, in original-period units. Independent of the shooting
/// route; used as seed generator and cross-check oracle.
/// Throws std::invalid_argument when truncation < max harmonic of q.
std::vector<Complex> galerkin_eigenvalues(const PeriodicPotential& q, double t,
                                          int truncation);

struct NewtonResult {
  Complex lambda{};
  double residual = 0.0;
  bool converged = false;
  int iters = 0;
};

/// Newton iteration on G(lambda) = F(lambda) - 2 cos t with complex-step
/// derivative. tol <= 0 polishes to stagnation (as far as roundoff allows).
NewtonResult newton_bloch(const HillIntegrator& integ, double t, Complex seed,
                          const SolverConfig& cfg, double tol);

struct BlochRoot {
  Complex lambda{};
  double residual = 0.0;
  int multiplicity = 1;
};

/// The `count` Bloch eigenvalues of L_t(q) of smallest magnitude, expanded
/// by multiplicity (list length == count). Newton-on-F refined, Galerkin
/// seeded and cross-checked; throws MissedRootError when the two routes
/// disagree about the root count.
std::vector<BlochRoot> bloch_roots(const HillIntegrator& integ, double t,
                                   int count, const SolverConfig& cfg = {});
std::vector<Complex> bloch_eigenvalues(const PeriodicPotential& q, double t,
                                       int count, const SolverConfig& cfg = {});

struct BlochBand {
  int index = 0;
  std::vector<double> t;
  std::vector<Complex> lambda;    // original-period units
  std::vector<double> residual;   // |F(lambda) - 2 cos t|
  std::vector<std::uint8_t> collision;
};

struct BandFamily {
  std::vector<double> t_grid;
  std::vector<BlochBand> bands;

  /// Index of a grid point equal to t (within 1e-9); -1 if absent.
  int index_of(double t) const;

  /// Band value at arbitrary t by local quadratic interpolation.
  Complex interpolate(int band, double t) const;

  /// dlambda/dt at grid index i by a nonuniform centered difference.
  Complex slope(int band, int i) const;
};

/// Uniform grid of `base` points on (-pi, pi] with `refine`-times finer
/// sampling within `window` of the singular quasimomentum candidates 0, pi.
std::vector<double> default_t_grid(int base = 512, int refine = 8,
                                   double window = 0.15);

/// Labels bands by magnitude-sorted eigenvalues at t_ref, then continues
/// each across the grid with jump detection and step halving.
BandFamily trace_bands(const PeriodicPotential& q, int count,
                       std::vector<double> t_grid,
                       const SolverConfig& cfg = {});

BlochBand band_trace(const PeriodicPotential& q, int n,
                     const std::vector<double>& t_grid,
                     const SolverConfig& cfg = {});

}  // namespace hillspec
