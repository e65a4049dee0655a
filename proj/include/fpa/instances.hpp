#pragma once

#include "fpa/types.hpp"

#include <functional>

namespace fpa {

struct ParamHardInstance {
  AuctionInstance instance;
  StrategyProfile profile;
  double predicted_ratio = 0.0;
  double param = 0.0;  // epsilon or t
  int grid_size = 0;   // N, when a CDF was discretized
};

/// The two-bidder, two-auction all-value-maximizer instance whose stated
/// profile is an equilibrium with welfare ratio 1 / (2 - epsilon).
ParamHardInstance thm1_instance(double epsilon);

/// One utility maximizer vs one value maximizer: the value maximizer wins
/// its own auction for free and spends the slack randomizing against the
/// utility maximizer, pinning the ratio at (1 + t ln t) / (2 - t + t ln t).
/// The continuous bid CDF min{1, t / (1 - b)} is discretized on N atoms.
ParamHardInstance lemma_lb_instance(double t, int N);

/// N right-endpoint atoms of a CDF on [lo, hi]; any point mass at lo is kept
/// exactly at lo. Zero-probability atoms are pruned.
BidDistribution discretize_cdf(const std::function<double(double)>& cdf, double lo, double hi,
                               int N);

}  // namespace fpa
