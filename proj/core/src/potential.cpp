#include "hillspec/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace hillspec {

std::string to_string(PotentialTag tag) {
  switch (tag) {
    case PotentialTag::mathieu:
      return "mathieu";
    case PotentialTag::optical:
      return "optical";
    default:
      return "custom";
  }
}

Complex PeriodicPotential::evaluate(double x) const {
  Complex s = 0.0;
  for (const auto& [m, c] : coeffs) {
    const double phase = kTwoPi * m * x;
    s += c * Complex(std::cos(phase), std::sin(phase));
  }
  return s;
}

bool PeriodicPotential::self_adjoint(double tol) const {
  for (const auto& [m, c] : coeffs) {
    if (std::abs(coeff(-m) - std::conj(c)) > tol) return false;
  }
  return true;
}

int PeriodicPotential::max_harmonic() const {
  int mmax = 0;
  for (const auto& [m, c] : coeffs) mmax = std::max(mmax, std::abs(m));
  return mmax;
}

PeriodicPotential PeriodicPotential::conjugated() const {
  PeriodicPotential out;
  out.declared_period = declared_period;
  out.scale = scale;
  out.tag = PotentialTag::custom;
  for (const auto& [m, c] : coeffs) out.coeffs[-m] = std::conj(c);
  return out;
}

PeriodicPotential make_potential(const std::map<int, Complex>& coeffs,
                                 double period) {
  if (!(period > 0.0)) {
    throw std::invalid_argument("make_potential: period must be positive");
  }
  PeriodicPotential q;
  q.declared_period = period;
  q.scale = period * period;
  for (const auto& [m, c] : coeffs) {
    if (std::abs(c) >= kCoeffDropTol) q.coeffs[m] = c;
  }
  return q;
}

PeriodicPotential mathieu(Complex a, Complex b) {
  PeriodicPotential q = make_potential({{1, a}, {-1, b}}, 1.0);
  q.tag = PotentialTag::mathieu;
  q.tag_params = {a, b};
  return q;
}

PeriodicPotential optical(double V) {
  if (V < 0.0) throw std::invalid_argument("optical: V must be nonnegative");
  PeriodicPotential q = make_potential(
      {{0, 2.0}, {1, 1.0 + 2.0 * V}, {-1, 1.0 - 2.0 * V}}, kPi);
  q.tag = PotentialTag::optical;
  q.tag_params = {Complex(V, 0.0)};
  return q;
}

PeriodicPotential zero_potential() { return make_potential({}, 1.0); }

}  // namespace hillspec
