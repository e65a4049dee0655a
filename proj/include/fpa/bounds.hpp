#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fpa {

struct BoundResult {
  double minimizer_t = 0.0;
  double bound_value = 0.0;
  std::optional<double> gamma;
};

/// x * ln(x) extended by continuity to 0 at x = 0.
double xlogx(double x);

/// (1 + t ln t) / (2 - t + t ln t), the mixed-world ratio at parameter t.
double phi_mixed(double t);

/// The reserve-aware ratio (1 + t ln t - g t (1 + ln t)) / (2 - t - g + (1 - g) t ln t).
double phi_ml(double gamma, double t);

/// Golden-section minimization of a scalar function on [lo, hi] to the given
/// absolute tolerance on the argument.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// min over t in [0, 1] of phi_mixed: the mixed-world price-of-anarchy bound.
BoundResult mixed_poa_bound();

/// min over t in [0, 1] of phi_ml(gamma, .): the bound with machine-learned
/// reserves of accuracy gamma. A coarse scan brackets the minimum first, so
/// the result does not rely on global unimodality.
BoundResult ml_poa_bound(double gamma);

/// 1 / (2 - gamma): the full-autobidding floor with reserves of accuracy gamma.
double full_autobidding_ml_bound(double gamma);

struct GridVerification {
  double grid_min = 0.0;
  double analytic_min = 0.0;
  double witness_v1 = 0.0;
  double witness_x = 0.0;
  double witness_y = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Grid check of the infimum identity behind the mixed bound: minimizes
/// max{x V1, (1-x) V1 + (1 - y + y ln y) V2} + y V2 over the unit box with
/// V2 = 1 - V1, and compares against mixed_poa_bound().
GridVerification verify_lemma_max(int resolution);

/// Same check for the gamma-objective against ml_poa_bound(gamma).
GridVerification verify_lemma_max_ml(double gamma, int resolution);

struct GammaSweepRow {
  double gamma;
  double mixed_bound;
  double full_autobidding_bound;
};

std::vector<GammaSweepRow> gamma_sweep(double step);

/// CSV with header gamma,mixed_bound,full_autobidding_bound, 6 decimals.
std::string gamma_sweep_csv(const std::vector<GammaSweepRow>& rows);

}  // namespace fpa
