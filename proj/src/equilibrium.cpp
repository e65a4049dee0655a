#include "fpa/equilibrium.hpp"

#include "fpa/core.hpp"

#include <algorithm>

namespace fpa {

namespace {

double current_objective(const AuctionInstance& instance, const OutcomeSummary& outcome,
                         int bidder) {
  if (instance.kinds[bidder] == BidderKind::UtilityMax)
    return outcome.per_bidder_value(bidder) - outcome.per_bidder_payment(bidder);
  return outcome.per_bidder_value(bidder);
}

}  // namespace

double best_response_gap(const AuctionInstance& instance, const StrategyProfile& profile,
                         int bidder, const BestResponseOptions& opts,
                         double feasibility_epsilon) {
  const OutcomeSummary outcome = evaluate_profile(instance, profile, opts.enumeration_cap);
  if (instance.kinds[bidder] == BidderKind::UtilityMax) {
    return best_response_utility(instance, profile, bidder, opts).utility -
           current_objective(instance, outcome, bidder);
  }
  const double slack =
      outcome.per_bidder_value(bidder) - outcome.per_bidder_payment(bidder);
  if (slack < -feasibility_epsilon) throw InfeasibleProfile(bidder, slack);
  return best_response_value(instance, profile, bidder, opts).value -
         current_objective(instance, outcome, bidder);
}

EquilibriumReport verify_equilibrium(const AuctionInstance& instance,
                                     const StrategyProfile& profile, double epsilon,
                                     const BestResponseOptions& opts) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  EquilibriumReport report;
  report.epsilon = epsilon;
  report.outcome = evaluate_profile(instance, profile, opts.enumeration_cap);
  report.is_equilibrium = true;
  for (int i = 0; i < instance.num_bidders; ++i) {
    const double slack =
        report.outcome.per_bidder_value(i) - report.outcome.per_bidder_payment(i);
    report.roi_slack.push_back(slack);
    double gap;
    if (instance.kinds[i] == BidderKind::UtilityMax) {
      gap = best_response_utility(instance, profile, i, opts).utility -
            current_objective(instance, report.outcome, i);
    } else {
      if (slack < -epsilon) throw InfeasibleProfile(i, slack);
      gap = best_response_value(instance, profile, i, opts).value -
            current_objective(instance, report.outcome, i);
      if (slack < -epsilon) report.is_equilibrium = false;
    }
    report.gaps.push_back(gap);
    if (gap > epsilon) report.is_equilibrium = false;
  }
  return report;
}

DynamicsResult best_response_dynamics(const AuctionInstance& instance,
                                      const StrategyProfile& initial, int max_iters,
                                      double epsilon, const BestResponseOptions& opts) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  DynamicsResult result;
  result.profile = initial;

  auto apply_best_response = [&](int i) {
    std::vector<BidDistribution> row;
    if (instance.kinds[i] == BidderKind::UtilityMax)
      row = best_response_utility(instance, result.profile, i, opts).row;
    else
      row = best_response_value(instance, result.profile, i, opts).row;
    for (int j = 0; j < instance.num_auctions; ++j) result.profile.at(i, j) = row[j];
  };

  // Convergence is certified on the post-sweep profile: a gap observed
  // mid-sweep refers to an environment that later updates may have changed.
  auto all_settled = [&]() {
    const OutcomeSummary outcome = evaluate_profile(instance, result.profile, opts.enumeration_cap);
    for (int i = 0; i < instance.num_bidders; ++i) {
      double best;
      if (instance.kinds[i] == BidderKind::UtilityMax) {
        best = best_response_utility(instance, result.profile, i, opts).utility;
      } else {
        const double slack = outcome.per_bidder_value(i) - outcome.per_bidder_payment(i);
        if (slack < -epsilon) return false;
        best = best_response_value(instance, result.profile, i, opts).value;
      }
      if (best - current_objective(instance, outcome, i) > epsilon) return false;
    }
    return true;
  };

  for (int iter = 1; iter <= max_iters; ++iter) {
    for (int i = 0; i < instance.num_bidders; ++i) apply_best_response(i);
    result.iterations = iter;
    if (all_settled()) {
      result.converged = true;
      break;
    }
  }

  // A later competitor update can leave an earlier value maximizer ROI
  // infeasible; re-best-responding restores feasibility for that bidder.
  for (int pass = 0; !result.converged && pass < instance.num_bidders; ++pass) {
    const OutcomeSummary outcome = evaluate_profile(instance, result.profile, opts.enumeration_cap);
    bool repaired = false;
    for (int i = 0; i < instance.num_bidders; ++i) {
      if (instance.kinds[i] != BidderKind::ValueMax) continue;
      if (outcome.per_bidder_value(i) - outcome.per_bidder_payment(i) < -1e-9) {
        apply_best_response(i);
        repaired = true;
      }
    }
    if (!repaired) break;
  }
  return result;
}

StrategyProfile default_initial_profile(const AuctionInstance& instance,
                                        const BestResponseOptions& opts) {
  const int n = instance.num_bidders;
  const int m = instance.num_auctions;
  StrategyProfile profile(n, m);
  for (int i = 0; i < n; ++i) {
    const auto row = truthful_proxy(instance, i);
    for (int j = 0; j < m; ++j) profile.at(i, j) = row[j];
  }
  for (int i = 0; i < n; ++i) {
    if (instance.kinds[i] != BidderKind::UtilityMax) continue;
    const UtilityBestResponse br = best_response_utility(instance, profile, i, opts);
    for (int j = 0; j < m; ++j) profile.at(i, j) = br.row[j];
  }
  return profile;
}

}  // namespace fpa
