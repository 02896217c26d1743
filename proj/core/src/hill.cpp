#include "hillspec/hill.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hillspec/errors.hpp"

namespace hillspec {
namespace {

bool magnitude_less(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma < mb;
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Generic continuation jump threshold: bands move at O(sqrt(lambda_int))
// in original units per unit t.
double jump_threshold(const SolverConfig& cfg, const PeriodicPotential& q,
                      const Complex& lambda, double dt) {
  const double li = std::abs(lambda) * q.scale;
  const double slope = 2.0 * std::sqrt(std::max(li, 1.0)) / q.scale;
  return cfg.jump_factor *
         std::max(slope * std::abs(dt), 10.0 * merge_tolerance(cfg, lambda));
}

}  // namespace

Complex discriminant(const HillIntegrator& integ, Complex lambda) {
  return integ.monodromy(lambda).trace();
}

Complex discriminant(const PeriodicPotential& q, Complex lambda,
                     int grid_size) {
  return HillIntegrator(q, grid_size).monodromy(lambda).trace();
}

Complex p_function(const PeriodicPotential& q, Complex lambda, int branch,
                   int grid_size) {
  const Complex F = discriminant(q, lambda, grid_size);
  return static_cast<double>(branch >= 0 ? 1 : -1) * std::sqrt(4.0 - F * F);
}

std::vector<Complex> galerkin_eigenvalues(const PeriodicPotential& q, double t,
                                          int truncation) {
  if (truncation < q.max_harmonic()) {
    throw std::invalid_argument(
        "galerkin_eigenvalues: truncation below max harmonic of q");
  }
  const int K = truncation;
  const int dim = 2 * K + 1;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int k = r - K;
    const double mu = kTwoPi * k + t;
    H(r, r) = mu * mu;
    for (int s = 0; s < dim; ++s) {
      const int j = s - K;
      const Complex c = q.coeff(k - j);
      if (c != Complex(0.0)) H(r, s) += q.scale * c;
    }
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H, false);
  std::vector<Complex> ev(dim);
  for (int i = 0; i < dim; ++i) ev[i] = es.eigenvalues()(i) / q.scale;
  std::sort(ev.begin(), ev.end(), magnitude_less);
  return ev;
}

NewtonResult newton_bloch(const HillIntegrator& integ, double t, Complex seed,
                          const SolverConfig& cfg, double tol) {
  const double target_tol = tol > 0.0 ? tol : 1e-13;
  const Complex target = 2.0 * std::cos(t);
  NewtonResult best;
  best.lambda = seed;
  best.residual = std::numeric_limits<double>::infinity();

  Complex lambda = seed;
  bool hit_tol = false;
  for (int it = 0; it < cfg.newton_max_iter; ++it) {
    const Complex g = integ.monodromy(lambda).trace() - target;
    const double res = std::abs(g);
    if (res < best.residual) {
      best.lambda = lambda;
      best.residual = res;
      best.iters = it;
    } else if (res > 2.0 * best.residual && (tol <= 0.0 || hit_tol)) {
      break;  // roundoff has taken over
    }
    // Break one quadratic step after tolerance is reached: near band edges
    // |F'| is small and the plain-tol root can still sit 1e-7 off in lambda.
    if (res <= target_tol && it > 0) {
      if (hit_tol) break;
      hit_tol = true;
    }
    const double hstep = cfg.diff_step_scale * (1.0 + std::abs(lambda));
    const Complex dl(0.0, hstep);
    const Complex gp = integ.monodromy(lambda + dl).trace() - target;
    const Complex deriv = (gp - g) / dl;
    if (std::abs(deriv) == 0.0) break;
    Complex step = g / deriv;
    const double cap = 0.5 * (1.0 + std::abs(lambda));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    lambda -= step;
  }
  const double accept = tol > 0.0 ? tol : 1e-6;
  best.converged = best.residual <= accept;
  return best;
}

std::vector<BlochRoot> bloch_roots(const HillIntegrator& integ, double t,
                                   int count, const SolverConfig& cfg) {
  if (count < 1) throw std::invalid_argument("bloch_roots: count must be >= 1");
  const PeriodicPotential& q = integ.potential();
  const int K = std::max(cfg.galerkin_truncation, q.max_harmonic() + 2);
  const std::vector<Complex> gal = galerkin_eigenvalues(q, t, K);
  const int wanted = std::min<int>(count + 8, static_cast<int>(gal.size()));

  // Cluster the leading Galerkin values: multiple eigenvalues appear as
  // near-coincident entries.
  struct Cluster {
    Complex mean;
    int size = 0;
  };
  std::vector<Cluster> clusters;
  for (int i = 0; i < wanted; ++i) {
    const Complex v = gal[i];
    bool placed = false;
    for (auto& c : clusters) {
      if (std::abs(v - c.mean) < merge_tolerance(cfg, v)) {
        c.mean = (c.mean * static_cast<double>(c.size) + v) /
                 static_cast<double>(c.size + 1);
        ++c.size;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({v, 1});
  }

  const Complex c0 = q.coeff(0);
  auto free_seed = [&](const Complex& near) {
    // closest free eigenvalue (2 pi k + t)^2 / scale + c0
    Complex bestv = near;
    double bestd = std::numeric_limits<double>::infinity();
    for (int k = -(count / 2 + 4); k <= count / 2 + 4; ++k) {
      const double mu = kTwoPi * k + t;
      const Complex v = mu * mu / q.scale + c0;
      const double d = std::abs(v - near);
      if (d < bestd) {
        bestd = d;
        bestv = v;
      }
    }
    return bestv;
  };

  std::vector<BlochRoot> roots;
  int accumulated = 0;
  const Complex target = 2.0 * std::cos(t);
  for (const auto& c : clusters) {
    if (accumulated >= count) break;
    NewtonResult nr = newton_bloch(integ, t, c.mean, cfg, cfg.root_tol);
    if (!nr.converged) {
      nr = newton_bloch(integ, t, free_seed(c.mean), cfg, cfg.root_tol);
    }
    if (!nr.converged) {
      throw MissedRootError(
          "bloch_roots: Newton failed to converge from Galerkin seed at t=" +
          std::to_string(t));
    }
    const double leash = 1e-2 * (1.0 + std::abs(c.mean));
    if (std::abs(nr.lambda - c.mean) > leash) {
      throw MissedRootError(
          "bloch_roots: Newton root strayed from the Galerkin cluster; "
          "root count disagrees with the oracle at t=" +
          std::to_string(t));
    }
    if (c.size >= 2) {
      // Defective point: F localizes a multiple root only to sqrt(residual),
      // while the oracle cluster mean is first-order accurate. Use the mean,
      // gated by the F-residual so the shooting route keeps a veto.
      const double mean_res = std::abs(integ.monodromy(c.mean).trace() - target);
      if (mean_res <= std::max(cfg.root_tol, nr.residual)) {
        nr.lambda = c.mean;
        nr.residual = mean_res;
      }
    }
    bool merged = false;
    for (auto& r : roots) {
      if (std::abs(r.lambda - nr.lambda) < merge_tolerance(cfg, nr.lambda)) {
        r.multiplicity += c.size;
        if (nr.residual < r.residual) {
          r.lambda = nr.lambda;
          r.residual = nr.residual;
        }
        merged = true;
        break;
      }
    }
    if (!merged) roots.push_back({nr.lambda, nr.residual, c.size});
    accumulated += c.size;
  }

  std::vector<BlochRoot> expanded;
  for (const auto& r : roots) {
    for (int i = 0; i < r.multiplicity; ++i) expanded.push_back(r);
  }
  std::sort(expanded.begin(), expanded.end(),
            [](const BlochRoot& a, const BlochRoot& b) {
              return magnitude_less(a.lambda, b.lambda);
            });
  if (static_cast<int>(expanded.size()) < count) {
    throw MissedRootError("bloch_roots: fewer roots than requested at t=" +
                          std::to_string(t));
  }
  expanded.resize(count);
  return expanded;
}

std::vector<Complex> bloch_eigenvalues(const PeriodicPotential& q, double t,
                                       int count, const SolverConfig& cfg) {
  HillIntegrator integ(q, cfg.grid_size, cfg.wronskian_tol);
  std::vector<Complex> out;
  for (const auto& r : bloch_roots(integ, t, count, cfg)) {
    out.push_back(r.lambda);
  }
  return out;
}

int BandFamily::index_of(double tq) const {
  auto it = std::lower_bound(t_grid.begin(), t_grid.end(), tq - 1e-9);
  if (it == t_grid.end() || std::abs(*it - tq) > 1e-9) return -1;
  return static_cast<int>(it - t_grid.begin());
}

Complex BandFamily::interpolate(int band, double tq) const {
  const auto& b = bands.at(band);
  const auto& ts = b.t;
  auto it = std::lower_bound(ts.begin(), ts.end(), tq);
  int i = static_cast<int>(it - ts.begin());
  i = std::clamp(i, 1, static_cast<int>(ts.size()) - 2);
  // quadratic through (i-1, i, i+1)
  const double t0 = ts[i - 1], t1 = ts[i], t2 = ts[i + 1];
  const Complex y0 = b.lambda[i - 1], y1 = b.lambda[i], y2 = b.lambda[i + 1];
  const double d0 = (tq - t1) * (tq - t2) / ((t0 - t1) * (t0 - t2));
  const double d1 = (tq - t0) * (tq - t2) / ((t1 - t0) * (t1 - t2));
  const double d2 = (tq - t0) * (tq - t1) / ((t2 - t0) * (t2 - t1));
  return y0 * d0 + y1 * d1 + y2 * d2;
}

Complex BandFamily::slope(int band, int i) const {
  const auto& b = bands.at(band);
  const int n = static_cast<int>(b.t.size());
  const int j = std::clamp(i, 1, n - 2);
  const double t0 = b.t[j - 1], t1 = b.t[j], t2 = b.t[j + 1];
  const Complex y0 = b.lambda[j - 1], y1 = b.lambda[j], y2 = b.lambda[j + 1];
  // derivative of the local quadratic at t_grid[i]
  const double tq = b.t[std::clamp(i, 0, n - 1)];
  const double d0 = (2.0 * tq - t1 - t2) / ((t0 - t1) * (t0 - t2));
  const double d1 = (2.0 * tq - t0 - t2) / ((t1 - t0) * (t1 - t2));
  const double d2 = (2.0 * tq - t0 - t1) / ((t2 - t0) * (t2 - t1));
  return y0 * d0 + y1 * d1 + y2 * d2;
}

std::vector<double> default_t_grid(int base, int refine, double window) {
  std::vector<double> pts;
  for (int i = 0; i < base; ++i) {
    pts.push_back(-kPi + kTwoPi * (i + 1) / base);
  }
  const double fine = kTwoPi / (static_cast<double>(base) * refine);
  auto add_window = [&](double center) {
    for (double s = -window; s <= window + 0.5 * fine; s += fine) {
      double t = center + s;
      if (t <= -kPi) t += kTwoPi;
      if (t > kPi) t -= kTwoPi;
      pts.push_back(t);
    }
  };
  add_window(0.0);
  add_window(kPi);
  pts.push_back(0.0);
  pts.push_back(kPi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double t : pts) {
    if (out.empty() || t - out.back() > 1e-12) out.push_back(t);
  }
  return out;
}

namespace {

struct Tracer {
  const HillIntegrator& integ;
  const SolverConfig& cfg;
  const PeriodicPotential& q;

  // Continue one band value from (t_from, l_from) to t_to, halving on
  // jump-threshold violations.
  Complex advance(double t_from, Complex l_from, Complex slope_hint,
                  double t_to, int depth) const {
    const double dt = t_to - t_from;
    const Complex pred = l_from + slope_hint * dt;
    NewtonResult nr = newton_bloch(integ, t_to, pred, cfg, cfg.root_tol);
    if (nr.converged &&
        std::abs(nr.lambda - pred) <= jump_threshold(cfg, q, pred, dt)) {
      return nr.lambda;
    }
    if (depth >= cfg.max_halvings) {
      throw ContinuationError(
          "band_trace: continuation failed on [" + std::to_string(t_from) +
              ", " + std::to_string(t_to) + "]",
          std::min(t_from, t_to), std::max(t_from, t_to));
    }
    const double tm = 0.5 * (t_from + t_to);
    const Complex lm = advance(t_from, l_from, slope_hint, tm, depth + 1);
    const Complex sm = (lm - l_from) / (tm - t_from);
    return advance(tm, lm, sm, t_to, depth + 1);
  }
};

}  // namespace

BandFamily trace_bands(const PeriodicPotential& q, int count,
                       std::vector<double> t_grid, const SolverConfig& cfg) {
  if (t_grid.size() < 3) {
    throw std::invalid_argument("trace_bands: need at least 3 grid points");
  }
  for (size_t i = 0; i + 1 < t_grid.size(); ++i) {
    if (!(t_grid[i] < t_grid[i + 1])) {
      throw std::invalid_argument("trace_bands: t_grid must be increasing");
    }
  }
  if (t_grid.front() <= -kPi || t_grid.back() > kPi + 1e-12) {
    throw std::invalid_argument("trace_bands: t_grid must lie in (-pi, pi]");
  }

  HillIntegrator integ(q, cfg.grid_size, cfg.wronskian_tol);
  Tracer tracer{integ, cfg, q};
  const int T = static_cast<int>(t_grid.size());

  // labels at the reference quasimomentum
  std::vector<BlochRoot> ref = bloch_roots(integ, cfg.t_ref, count, cfg);

  int i0 = 0;
  for (int i = 1; i < T; ++i) {
    if (std::abs(t_grid[i] - cfg.t_ref) < std::abs(t_grid[i0] - cfg.t_ref)) {
      i0 = i;
    }
  }

  BandFamily fam;
  fam.t_grid = t_grid;
  fam.bands.resize(count);
  for (int n = 0; n < count; ++n) {
    auto& b = fam.bands[n];
    b.index = n;
    b.t = t_grid;
    b.lambda.assign(T, Complex(0.0));
    b.residual.assign(T, 0.0);
    b.collision.assign(T, 0);
  }

  for (int n = 0; n < count; ++n) {
    auto& b = fam.bands[n];
    // step from t_ref onto the nearest grid point
    b.lambda[i0] = tracer.advance(cfg.t_ref, ref[n].lambda, Complex(0.0),
                                  t_grid[i0], 0);
    auto sweep = [&](int dir) {
      Complex prev = b.lambda[i0];
      double t_prev = t_grid[i0];
      Complex slope(0.0);
      for (int i = i0 + dir; i >= 0 && i < T; i += dir) {
        const Complex next = tracer.advance(t_prev, prev, slope, t_grid[i], 0);
        b.lambda[i] = next;
        slope = (next - prev) / (t_grid[i] - t_prev);
        prev = next;
        t_prev = t_grid[i];
      }
    };
    sweep(+1);
    sweep(-1);
    for (int i = 0; i < T; ++i) {
      b.residual[i] = std::abs(integ.monodromy(b.lambda[i]).trace() -
                               2.0 * std::cos(t_grid[i]));
    }
  }

  // Collision flags: pairwise proximity within merge tolerance anywhere,
  // or a local minimum below the double-root resolution floor, which is
  // the best lambda separation Newton can certify at a defective point.
  auto flag_collisions = [&]() {
    for (int n = 0; n < count; ++n) {
      std::fill(fam.bands[n].collision.begin(), fam.bands[n].collision.end(),
                0);
    }
    for (int m = 0; m < count; ++m) {
      for (int n = m + 1; n < count; ++n) {
        const auto& bm = fam.bands[m];
        const auto& bn = fam.bands[n];
        std::vector<double> d(T);
        for (int i = 0; i < T; ++i) {
          d[i] = std::abs(bm.lambda[i] - bn.lambda[i]);
        }
        for (int i = 0; i < T; ++i) {
          const double floor_tol =
              std::max(merge_tolerance(cfg, bm.lambda[i]),
                       5e-4 * (1.0 + std::abs(bm.lambda[i])));
          const bool local_min = (i == 0 || d[i] <= d[i - 1] + 1e-15) &&
                                 (i == T - 1 || d[i] <= d[i + 1] + 1e-15);
          const bool hit = d[i] < merge_tolerance(cfg, bm.lambda[i]) ||
                           (local_min && d[i] < floor_tol);
          if (hit) {
            fam.bands[m].collision[i] = 1;
            fam.bands[n].collision[i] = 1;
          }
        }
      }
    }
  };
  flag_collisions();

  // At flagged columns re-solve through the oracle-gated route, which
  // recovers multiple roots to first order instead of sqrt(residual).
  for (int i = 0; i < T; ++i) {
    bool any = false;
    for (int n = 0; n < count && !any; ++n) any = fam.bands[n].collision[i];
    if (!any) continue;
    const auto roots = bloch_roots(integ, t_grid[i], count, cfg);
    for (int n = 0; n < count; ++n) {
      if (!fam.bands[n].collision[i]) continue;
      auto& b = fam.bands[n];
      const Complex old = b.lambda[i];
      Complex bestv = old;
      double bestd = std::numeric_limits<double>::infinity();
      for (const auto& r : roots) {
        const double d = std::abs(r.lambda - old);
        if (d < bestd) {
          bestd = d;
          bestv = r.lambda;
        }
      }
      const double floor_tol = 5e-4 * (1.0 + std::abs(old));
      if (bestd <= 2.0 * floor_tol) {
        b.lambda[i] = bestv;
        b.residual[i] = std::abs(integ.monodromy(bestv).trace() -
                                 2.0 * std::cos(t_grid[i]));
      }
    }
  }
  flag_collisions();
  return fam;
}

BlochBand band_trace(const PeriodicPotential& q, int n,
                     const std::vector<double>& t_grid,
                     const SolverConfig& cfg) {
  return trace_bands(q, n + 1, t_grid, cfg).bands.at(n);
}

}  // namespace hillspec
