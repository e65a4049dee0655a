#pragma once

#include "fpa/types.hpp"

namespace fpa {

/// Distribution of the highest effective competing bid in one auction, from
/// the focal bidder's point of view. Competitor bids below the reserve (and
/// ABSTAIN) are treated as no bid; an outcome without any effective
/// competitor collapses to threshold 0 with tie_wins = true.
struct LandscapeAtom {
  double threshold = 0.0;
  double prob = 0.0;
  // Mass of outcomes at this threshold where the focal bidder wins the tie
  // (value first, then index). tie_wins is true iff that is all of them.
  double tie_win_prob = 0.0;
  bool tie_wins = false;
};

struct CompetitorLandscape {
  std::vector<LandscapeAtom> atoms;  // thresholds strictly increasing

  /// Exact win probability of the focal bidder at this bid (reserve already
  /// accounted for by the caller).
  double win_probability(double bid) const;
};

/// One attainable (expected payment, expected value) point and the bid that
/// realizes it.
struct FrontierPoint {
  double payment = 0.0;
  double value = 0.0;
  Bid bid;
};

/// Piecewise-linear concave value-payment curve: the upper envelope of the
/// points attainable by deterministic bids, reachable exactly by mixing the
/// two breakpoint bids adjacent to any interior point.
struct Frontier {
  std::vector<FrontierPoint> breakpoints;  // payments strictly increasing, first at 0
  double value_cap = 0.0;
};

CompetitorLandscape competitor_landscape(const AuctionInstance& instance,
                                         const StrategyProfile& profile, int bidder, int auction,
                                         std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Evaluates every candidate bid against the landscape and keeps, per
/// payment level, the best value. candidate_bids should include ABSTAIN, all
/// thresholds, threshold + delta where ties are lost, and any caller grid.
std::vector<FrontierPoint> attainable_points(const CompetitorLandscape& landscape,
                                             double value_cap, std::optional<double> reserve,
                                             const std::vector<Bid>& candidate_bids);

/// Upper concave hull of the attainable points, ordered by payment.
Frontier concave_envelope(std::vector<FrontierPoint> points, double value_cap);

struct BestResponseOptions {
  int grid_points = 200;   // uniform candidate bids per auction
  double delta = 1e-9;     // overbid step past a lost tie
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

/// Candidate bids for one bidder-auction pair: ABSTAIN, a uniform grid,
/// landscape thresholds (+delta on lost ties), own value, and the reserve.
std::vector<Bid> candidate_bids(const AuctionInstance& instance,
                                const CompetitorLandscape& landscape, int bidder, int auction,
                                const BestResponseOptions& opts);

struct UtilityBestResponse {
  std::vector<BidDistribution> row;  // one deterministic distribution per auction
  double utility = 0.0;
};

struct ValueBestResponse {
  std::vector<BidDistribution> row;  // at most two atoms per auction
  double value = 0.0;
  double payment = 0.0;
};

/// Per-auction utility maximization over the candidate bids; auctions are
/// independent for a quasi-linear bidder.
UtilityBestResponse best_response_utility(const AuctionInstance& instance,
                                          const StrategyProfile& profile, int bidder,
                                          const BestResponseOptions& opts = {});

/// Value maximization subject to the ROI constraint, by a slope-descending
/// greedy walk over the per-auction frontiers: segments with slope >= 1
/// accumulate slack, remaining segments are taken in decreasing slope order
/// while the slack lasts, with at most one fractional segment realized as a
/// two-bid mixture.
ValueBestResponse best_response_value(const AuctionInstance& instance,
                                      const StrategyProfile& profile, int bidder,
                                      const BestResponseOptions& opts = {});

/// The truthful row b_{i,j} = v_{i,j}: value minus payment is zero in every
/// realized outcome, so it is ROI-feasible against any competitors.
std::vector<BidDistribution> truthful_proxy(const AuctionInstance& instance, int bidder);

/// Builds the frontier for one bidder-auction pair from the current profile.
Frontier build_frontier(const AuctionInstance& instance, const StrategyProfile& profile,
                        int bidder, int auction, const BestResponseOptions& opts = {});

}  // namespace fpa
