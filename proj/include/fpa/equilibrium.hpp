#pragma once

#include "fpa/frontier.hpp"
#include "fpa/types.hpp"

namespace fpa {

struct EquilibriumReport {
  std::vector<double> gaps;       // best-response objective minus current, per bidder
  std::vector<double> roi_slack;  // E[val_i - p_i], constraint-checked for value maximizers
  double epsilon = 0.0;
  bool is_equilibrium = false;
  OutcomeSummary outcome;
};

/// Thrown when a value maximizer's current profile already violates ROI by
/// more than the tolerance: the gap is undefined for an infeasible profile.
class InfeasibleProfile : public std::runtime_error {
 public:
  InfeasibleProfile(int bidder, double slack)
      : std::runtime_error("value maximizer " + std::to_string(bidder) +
                           " violates ROI, slack " + std::to_string(slack)),
        bidder(bidder),
        slack(slack) {}
  int bidder;
  double slack;
};

/// Improvement available to one bidder: best-response objective minus the
/// current objective (utility for UtilityMax, value for ValueMax). Negative
/// only by numerical noise.
double best_response_gap(const AuctionInstance& instance, const StrategyProfile& profile,
                         int bidder, const BestResponseOptions& opts = {},
                         double feasibility_epsilon = 1e-6);

EquilibriumReport verify_equilibrium(const AuctionInstance& instance,
                                     const StrategyProfile& profile, double epsilon,
                                     const BestResponseOptions& opts = {});

struct DynamicsResult {
  StrategyProfile profile;
  bool converged = false;
  int iterations = 0;
};

/// Round-robin best responses, bidders in index order; stops when a full
/// sweep leaves every gap at most epsilon. Non-convergence is a normal
/// outcome for discrete first-price dynamics.
DynamicsResult best_response_dynamics(const AuctionInstance& instance,
                                      const StrategyProfile& initial, int max_iters,
                                      double epsilon, const BestResponseOptions& opts = {});

/// Default starting point for dynamics: value maximizers bid truthfully,
/// utility maximizers best-respond to everyone else bidding truthfully.
StrategyProfile default_initial_profile(const AuctionInstance& instance,
                                        const BestResponseOptions& opts = {});

}  // namespace fpa
