#include "fpa/instances.hpp"

#include "fpa/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace fpa {

ParamHardInstance thm1_instance(double epsilon) {
  if (!(epsilon > 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must be in (0, 1)");

  ParamHardInstance out;
  out.param = epsilon;
  out.instance.num_bidders = 2;
  out.instance.num_auctions = 2;
  out.instance.values = Eigen::MatrixXd{{1.0, 0.0}, {0.0, 1.0 - epsilon}};
  out.instance.kinds = {BidderKind::ValueMax, BidderKind::ValueMax};
  out.instance.validate();

  // Bidder 0 wins auction 0 by tiebreaking and pays 0, and buys auction 1
  // outright at its own full value; bidder 1 cannot afford to compete.
  out.profile = StrategyProfile(2, 2);
  out.profile.at(0, 0) = BidDistribution::deterministic(0.0);
  out.profile.at(1, 0) = BidDistribution::deterministic(0.0);
  out.profile.at(0, 1) = BidDistribution::deterministic(1.0);
  out.profile.at(1, 1) = BidDistribution::deterministic(0.0);

  out.predicted_ratio = 1.0 / (2.0 - epsilon);
  return out;
}

BidDistribution discretize_cdf(const std::function<double(double)>& cdf, double lo, double hi,
                               int N) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  if (!(hi > lo)) throw std::invalid_argument("need hi > lo");
  if (cdf(hi) < 1.0 - 1e-9) throw std::invalid_argument("cdf(hi) must reach 1");

  std::vector<BidAtom> atoms;
  double prev = 0.0;
  double total = 0.0;
  for (int k = 0; k < N; ++k) {
    const double b = lo + (hi - lo) * static_cast<double>(k) / (N - 1);
    const double mass = (k == 0) ? cdf(lo) : cdf(b) - prev;
    prev = (k == 0) ? cdf(lo) : cdf(b);
    if (mass > 0.0) {
      atoms.push_back({Bid::at(b), mass});
      total += mass;
    }
  }
  // Renormalize away accumulated rounding; the spread is within 1e-12.
  for (BidAtom& a : atoms) a.prob /= total;
  return BidDistribution(std::move(atoms));
}

ParamHardInstance lemma_lb_instance(double t, int N) {
  if (!(t > 0.0) || t >= 1.0) throw std::invalid_argument("t must be in (0, 1)");
  if (N < 10) throw std::invalid_argument("N must be >= 10");

  ParamHardInstance out;
  out.param = t;
  out.grid_size = N;

  const double v22 = 1.0 - t + xlogx(t);
  out.instance.num_bidders = 2;
  out.instance.num_auctions = 2;
  out.instance.values = Eigen::MatrixXd{{1.0, 0.0}, {0.0, v22}};
  out.instance.kinds = {BidderKind::UtilityMax, BidderKind::ValueMax};
  out.instance.validate();

  // Bidder 1 randomizes in auction 0 so that bidder 0's value-payment
  // frontier rises with slope exactly 1, making the zero bid a best
  // response; the mass-t atom at 0 is what bidder 0 wins by tiebreaking.
  auto cdf = [t](double b) { return std::min(1.0, t / (1.0 - b)); };
  out.profile = StrategyProfile(2, 2);
  out.profile.at(0, 0) = BidDistribution::deterministic(0.0);
  out.profile.at(1, 0) = discretize_cdf(cdf, 0.0, 1.0 - t, N);
  out.profile.at(0, 1) = BidDistribution::deterministic(0.0);
  out.profile.at(1, 1) = BidDistribution::deterministic(0.0);

  out.predicted_ratio = (1.0 + xlogx(t)) / (2.0 - t + xlogx(t));
  return out;
}

}  // namespace fpa
