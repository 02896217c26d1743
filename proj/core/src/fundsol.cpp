#include "hillspec/fundsol.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hillspec/errors.hpp"

namespace hillspec {
namespace {

// Fehlberg RK7(8) tableau; the 8th-order weights propagate the solution.
constexpr int kStages = 13;

constexpr double kC[kStages] = {
    0.0,       2.0 / 27.0, 1.0 / 9.0, 1.0 / 6.0, 5.0 / 12.0, 0.5, 5.0 / 6.0,
    1.0 / 6.0, 2.0 / 3.0,  1.0 / 3.0, 1.0,       0.0,        1.0};

constexpr double kA[kStages][kStages] = {
    {},
    {2.0 / 27.0},
    {1.0 / 36.0, 1.0 / 12.0},
    {1.0 / 24.0, 0.0, 1.0 / 8.0},
    {5.0 / 12.0, 0.0, -25.0 / 16.0, 25.0 / 16.0},
    {1.0 / 20.0, 0.0, 0.0, 1.0 / 4.0, 1.0 / 5.0},
    {-25.0 / 108.0, 0.0, 0.0, 125.0 / 108.0, -65.0 / 27.0, 125.0 / 54.0},
    {31.0 / 300.0, 0.0, 0.0, 0.0, 61.0 / 225.0, -2.0 / 9.0, 13.0 / 900.0},
    {2.0, 0.0, 0.0, -53.0 / 6.0, 704.0 / 45.0, -107.0 / 9.0, 67.0 / 90.0, 3.0},
    {-91.0 / 108.0, 0.0, 0.0, 23.0 / 108.0, -976.0 / 135.0, 311.0 / 54.0,
     -19.0 / 60.0, 17.0 / 6.0, -1.0 / 12.0},
    {2383.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0, -301.0 / 82.0,
     2133.0 / 4100.0, 45.0 / 82.0, 45.0 / 164.0, 18.0 / 41.0},
    {3.0 / 205.0, 0.0, 0.0, 0.0, 0.0, -6.0 / 41.0, -3.0 / 205.0, -3.0 / 41.0,
     3.0 / 41.0, 6.0 / 41.0},
    {-1777.0 / 4100.0, 0.0, 0.0, -341.0 / 164.0, 4496.0 / 1025.0,
     -289.0 / 82.0, 2193.0 / 4100.0, 51.0 / 82.0, 33.0 / 164.0, 12.0 / 41.0,
     0.0, 1.0}};

constexpr double kB8[kStages] = {0.0,         0.0,         0.0,
                                 0.0,         0.0,         34.0 / 105.0,
                                 9.0 / 35.0,  9.0 / 35.0,  9.0 / 280.0,
                                 9.0 / 280.0, 0.0,         41.0 / 840.0,
                                 41.0 / 840.0};

using State = std::array<Complex, 4>;  // theta, theta', phi, phi'

inline State rhs(const State& y, Complex qv_minus_lambda) {
  return {y[1], qv_minus_lambda * y[0], y[3], qv_minus_lambda * y[2]};
}

}  // namespace

HillIntegrator::HillIntegrator(const PeriodicPotential& q, int grid_size,
                               double wronskian_tol)
    : q_(q), n_(grid_size), h_(1.0 / grid_size), tol_(wronskian_tol) {
  if (grid_size < 2) {
    throw std::invalid_argument("HillIntegrator: grid_size must be >= 2");
  }
  qstage_.resize(static_cast<size_t>(n_) * kStages);
  for (int j = 0; j < n_; ++j) {
    for (int i = 0; i < kStages; ++i) {
      const double x = (j + kC[i]) * h_;
      qstage_[static_cast<size_t>(j) * kStages + i] =
          q_.scale * q_.evaluate(x);
    }
  }
}

template <bool Store>
FundamentalPair HillIntegrator::integrate(Complex lambda_internal,
                                          Complex lambda_orig) const {
  FundamentalPair out;
  out.lambda = lambda_orig;
  if constexpr (Store) {
    out.x.resize(n_ + 1);
    out.theta.resize(n_ + 1);
    out.theta_d.resize(n_ + 1);
    out.phi.resize(n_ + 1);
    out.phi_d.resize(n_ + 1);
  }

  State y = {Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};
  double wmax = 0.0;
  auto record = [&](int j, const State& s) {
    if constexpr (Store) {
      out.x[j] = j * h_;
      out.theta[j] = s[0];
      out.theta_d[j] = s[1];
      out.phi[j] = s[2];
      out.phi_d[j] = s[3];
    }
    const double wr = std::abs(s[0] * s[3] - s[1] * s[2] - 1.0);
    wmax = std::max(wmax, wr);
  };
  record(0, y);

  std::array<State, kStages> k;
  for (int j = 0; j < n_; ++j) {
    const Complex* qrow = &qstage_[static_cast<size_t>(j) * kStages];
    for (int i = 0; i < kStages; ++i) {
      State yi = y;
      for (int m = 0; m < i; ++m) {
        const double a = kA[i][m];
        if (a == 0.0) continue;
        const double ah = a * h_;
        for (int c = 0; c < 4; ++c) yi[c] += ah * k[m][c];
      }
      k[i] = rhs(yi, qrow[i] - lambda_internal);
    }
    for (int i = 0; i < kStages; ++i) {
      if (kB8[i] == 0.0) continue;
      const double bh = kB8[i] * h_;
      for (int c = 0; c < 4; ++c) y[c] += bh * k[i][c];
    }
    record(j + 1, y);
  }

  out.monodromy = Mat2{y[0], y[2], y[1], y[3]};
  out.wronskian_residual = wmax;
  if (!(wmax <= tol_)) {
    throw AccuracyError(
        "fundamental_pair: Wronskian residual " + std::to_string(wmax) +
            " above tolerance; retry with a finer grid",
        wmax);
  }
  return out;
}

FundamentalPair HillIntegrator::fundamental_pair(Complex lambda) const {
  return integrate<true>(lambda * q_.scale, lambda);
}

Mat2 HillIntegrator::monodromy(Complex lambda) const {
  return integrate<false>(lambda * q_.scale, lambda).monodromy;
}

FundamentalPair fundamental_pair(const PeriodicPotential& q, Complex lambda,
                                 int grid_size) {
  return HillIntegrator(q, grid_size).fundamental_pair(lambda);
}

Mat2 monodromy(const PeriodicPotential& q, Complex lambda, int grid_size) {
  return HillIntegrator(q, grid_size).monodromy(lambda);
}

}  // namespace hillspec
