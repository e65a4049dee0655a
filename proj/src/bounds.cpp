#include "fpa/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fpa {

double xlogx(double x) {
  if (x < 0.0) throw std::invalid_argument("xlogx needs x >= 0");
  return x == 0.0 ? 0.0 : x * std::log(x);
}

double phi_mixed(double t) { return (1.0 + xlogx(t)) / (2.0 - t + xlogx(t)); }

double phi_ml(double gamma, double t) {
  const double num = 1.0 + xlogx(t) - gamma * (t + xlogx(t));
  const double den = 2.0 - t - gamma + (1.0 - gamma) * xlogx(t);
  if (den < 1e-12) return 1.0;  // only approached at gamma = t = 1
  return num / den;
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

BoundResult mixed_poa_bound() {
  BoundResult result;
  result.minimizer_t = golden_section_minimize(phi_mixed, 1e-12, 1.0, 1e-10);
  result.bound_value = phi_mixed(result.minimizer_t);
  return result;
}

BoundResult ml_poa_bound(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must be in [0, 1]");
  auto f = [gamma](double t) { return phi_ml(gamma, t); };

  // Bracket with a coarse scan first; the golden section then only needs
  // unimodality inside the bracket.
  constexpr int kScan = 1024;
  int best = 0;
  double best_val = f(0.0);
  for (int k = 1; k <= kScan; ++k) {
    const double val = f(static_cast<double>(k) / kScan);
    if (val < best_val) {
      best_val = val;
      best = k;
    }
  }
  const double lo = static_cast<double>(best > 0 ? best - 1 : 0) / kScan;
  const double hi = static_cast<double>(best < kScan ? best + 1 : kScan) / kScan;

  BoundResult result;
  result.gamma = gamma;
  result.minimizer_t = golden_section_minimize(f, std::max(lo, 1e-12), hi, 1e-10);
  result.bound_value = f(result.minimizer_t);
  if (best_val < result.bound_value) {
    result.minimizer_t = static_cast<double>(best) / kScan;
    result.bound_value = best_val;
  }
  return result;
}

double full_autobidding_ml_bound(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must be in [0, 1]");
  return 1.0 / (2.0 - gamma);
}

namespace {

// Modulus of continuity of the objective over one grid cell of side h.
// The V1- and x-directions are 2- and 1-Lipschitz, the y-direction carries
// the y ln y term whose increment over a step h is at most h (2 + |ln h|).
double grid_tolerance(int resolution) {
  const double h = 1.0 / (resolution - 1);
  return h * (4.0 + (2.0 + std::abs(std::log(h))));
}

GridVerification lemma_max_grid(double gamma, int resolution, double analytic_min) {
  if (resolution < 10) throw std::invalid_argument("resolution must be >= 10");
  const int r = resolution;
  auto coord = [r](int k) { return static_cast<double>(k) / (r - 1); };

  std::vector<double> psi(r), ylin(r);
  for (int k = 0; k < r; ++k) {
    const double y = coord(k);
    psi[k] = 1.0 - y + (1.0 - gamma) * xlogx(y);
    ylin[k] = y;
  }

  GridVerification out;
  out.analytic_min = analytic_min;
  out.tolerance = grid_tolerance(resolution);
  out.grid_min = 2.0;  // objective is at most 2 on the box
  for (int a = 0; a < r; ++a) {
    const double v1 = coord(a);
    const double v2 = 1.0 - v1;
    for (int b = 0; b < r; ++b) {
      const double x = coord(b);
      for (int c = 0; c < r; ++c) {
        const double val =
            std::max(x * v1, (1.0 - (1.0 - gamma) * x) * v1 + psi[c] * v2) + ylin[c] * v2;
        if (val < out.grid_min) {
          out.grid_min = val;
          out.witness_v1 = v1;
          out.witness_x = x;
          out.witness_y = ylin[c];
        }
      }
    }
  }
  out.pass = out.grid_min >= analytic_min - out.tolerance;
  return out;
}

}  // namespace

GridVerification verify_lemma_max(int resolution) {
  return lemma_max_grid(0.0, resolution, mixed_poa_bound().bound_value);
}

GridVerification verify_lemma_max_ml(double gamma, int resolution) {
  return lemma_max_grid(gamma, resolution, ml_poa_bound(gamma).bound_value);
}

std::vector<GammaSweepRow> gamma_sweep(double step) {
  if (!(step > 0.0) || step > 0.5) throw std::invalid_argument("step must be in (0, 0.5]");
  std::vector<GammaSweepRow> rows;
  for (double gamma = 0.0; gamma < 1.0 - 1e-12; gamma += step)
    rows.push_back({gamma, ml_poa_bound(gamma).bound_value, full_autobidding_ml_bound(gamma)});
  rows.push_back({1.0, ml_poa_bound(1.0).bound_value, full_autobidding_ml_bound(1.0)});
  return rows;
}

std::string gamma_sweep_csv(const std::vector<GammaSweepRow>& rows) {
  std::string csv = "gamma,mixed_bound,full_autobidding_bound\n";
  char line[96];
  for (const GammaSweepRow& row : rows) {
    std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f\n", row.gamma, row.mixed_bound,
                  row.full_autobidding_bound);
    csv += line;
  }
  return csv;
}

}  // namespace fpa
