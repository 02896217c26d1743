#pragma once

#include <cassert>
#include <cmath>
#include <span>
#include <vector>

#include "hillspec/types.hpp"

namespace hillspec::detail {

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
  assert(n >= 1);
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P_n'(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

/// Panel [a, b] mapped Gauss rule appended to (ts, ws).
inline void append_panel(const GaussRule& rule, double a, double b,
                         std::vector<double>& ts, std::vector<double>& ws) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    ts.push_back(mid + half * rule.nodes[i]);
    ws.push_back(half * rule.weights[i]);
  }
}

/// Trapezoid rule for a 1-periodic integrand sampled on x_j = j/N, j=0..N.
/// Spectrally accurate for smooth periodic data.
inline Complex trapezoid_periodic(std::span<const Complex> f) {
  assert(f.size() >= 2);
  const size_t n = f.size() - 1;
  Complex s = 0.5 * (f[0] + f[n]);
  for (size_t j = 1; j < n; ++j) s += f[j];
  return s / static_cast<double>(n);
}

/// Discrete L2[0,1] inner product (u, v) = int u conj(v) on the shared grid.
inline Complex inner_product(std::span<const Complex> u,
                             std::span<const Complex> v) {
  assert(u.size() == v.size() && u.size() >= 2);
  const size_t n = u.size() - 1;
  Complex s = 0.5 * (u[0] * std::conj(v[0]) + u[n] * std::conj(v[n]));
  for (size_t j = 1; j < n; ++j) s += u[j] * std::conj(v[j]);
  return s / static_cast<double>(n);
}

/// Bilinear pairing int u v (no conjugation), same grid convention.
inline Complex bilinear_product(std::span<const Complex> u,
                                std::span<const Complex> v) {
  assert(u.size() == v.size() && u.size() >= 2);
  const size_t n = u.size() - 1;
  Complex s = 0.5 * (u[0] * v[0] + u[n] * v[n]);
  for (size_t j = 1; j < n; ++j) s += u[j] * v[j];
  return s / static_cast<double>(n);
}

inline double l2_norm(std::span<const Complex> u) {
  return std::sqrt(std::abs(inner_product(u, u)));
}

}  // namespace hillspec::detail
