#pragma once

#include <map>
#include <string>
#include <vector>

#include "hillspec/types.hpp"

namespace hillspec {

/// Coefficients with |c_m| below this are dropped at construction.
inline constexpr double kCoeffDropTol = 1e-14;

enum class PotentialTag { custom, mathieu, optical };

std::string to_string(PotentialTag tag);

/// Complex 1-periodic potential as a finite Fourier series
///   q(x) = sum_m c_m exp(i 2 pi m x),   x in normalized coordinates.
///
/// A potential declared with period rho is rescaled to period 1; `scale`
/// = rho^2 is the eigenvalue multiplier between the internal period-1
/// problem and the user's units. All eigenvalues reported by the library
/// are in the original units (internal lambda divided by scale).
struct PeriodicPotential {
  std::map<int, Complex> coeffs;
  double declared_period = 1.0;
  double scale = 1.0;
  PotentialTag tag = PotentialTag::custom;
  std::vector<Complex> tag_params;

  /// q at normalized x (original energy units). Period-1 by construction.
  Complex evaluate(double x) const;

  /// True when c_{-m} = conj(c_m) for every m.
  bool self_adjoint(double tol = 1e-12) const;

  /// Largest |m| with a retained coefficient (0 for the zero potential).
  int max_harmonic() const;

  /// Potential of the adjoint problem: coefficients conj(c_{-m}).
  PeriodicPotential conjugated() const;

  Complex coeff(int m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? Complex(0.0) : it->second;
  }
};

/// Normalizes a user coefficient map with declared period to the internal
/// period-1 representation. Throws std::invalid_argument for period <= 0.
PeriodicPotential make_potential(const std::map<int, Complex>& coeffs,
                                 double period);

/// q(x) = a e^{i 2 pi x} + b e^{-i 2 pi x}, period 1.
PeriodicPotential mathieu(Complex a, Complex b);

/// q(x) = 2 + (1+2V) e^{i 2 x} + (1-2V) e^{-i 2 x}, period pi.
/// Throws std::invalid_argument for V < 0.
PeriodicPotential optical(double V);

PeriodicPotential zero_potential();

}  // namespace hillspec
