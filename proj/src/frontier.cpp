#include "fpa/frontier.hpp"

#include "fpa/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fpa {

double CompetitorLandscape::win_probability(double bid) const {
  double q = 0.0;
  for (const LandscapeAtom& a : atoms) {
    if (a.threshold < bid)
      q += a.prob;
    else if (a.threshold == bid)
      q += a.tie_win_prob;
  }
  return q;
}

namespace {

template <typename Visitor>
void for_each_joint(const std::vector<const BidDistribution*>& dists, std::size_t cap,
                    Visitor&& visit) {
  std::size_t total = 1;
  for (const BidDistribution* d : dists) {
    total *= d->support_size();
    if (total > cap) throw EnumerationCapExceeded(total);
  }
  std::vector<std::size_t> idx(dists.size(), 0);
  for (std::size_t outcome = 0; outcome < total; ++outcome) {
    double prob = 1.0;
    for (std::size_t k = 0; k < dists.size(); ++k) prob *= dists[k]->atoms()[idx[k]].prob;
    visit(idx, prob);
    for (std::size_t k = 0; k < dists.size(); ++k) {
      if (++idx[k] < dists[k]->support_size()) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

CompetitorLandscape competitor_landscape(const AuctionInstance& instance,
                                         const StrategyProfile& profile, int bidder, int auction,
                                         std::size_t enumeration_cap) {
  std::vector<int> competitors;
  std::vector<const BidDistribution*> dists;
  for (int i = 0; i < instance.num_bidders; ++i) {
    if (i == bidder) continue;
    competitors.push_back(i);
    dists.push_back(&profile.at(i, auction));
  }
  const double r = instance.reserve(auction);

  // threshold -> (total mass, mass where the focal bidder wins the tie)
  std::map<double, std::pair<double, double>> acc;
  for_each_joint(dists, enumeration_cap, [&](const std::vector<std::size_t>& idx, double prob) {
    double top = -1.0;
    bool focal_wins = true;
    for (std::size_t k = 0; k < competitors.size(); ++k) {
      const Bid& b = dists[k]->atoms()[idx[k]].bid;
      if (b.is_abstain()) continue;
      const double amount = b.amount();
      if (instance.has_reserves() && amount < r) continue;  // cannot win
      if (amount > top) {
        top = amount;
        focal_wins = wins_tie(instance, auction, bidder, competitors[k]);
      } else if (amount == top) {
        focal_wins = focal_wins && wins_tie(instance, auction, bidder, competitors[k]);
      }
    }
    if (top < 0.0) {  // nobody else can win at any bid
      top = 0.0;
      focal_wins = true;
    }
    auto& slot = acc[top];
    slot.first += prob;
    if (focal_wins) slot.second += prob;
  });

  CompetitorLandscape landscape;
  for (const auto& [threshold, mass] : acc) {
    LandscapeAtom a;
    a.threshold = threshold;
    a.prob = mass.first;
    a.tie_win_prob = mass.second;
    a.tie_wins = mass.second == mass.first;
    landscape.atoms.push_back(a);
  }
  return landscape;
}

std::vector<FrontierPoint> attainable_points(const CompetitorLandscape& landscape,
                                             double value_cap, std::optional<double> reserve,
                                             const std::vector<Bid>& candidate_bids) {
  std::vector<FrontierPoint> points;
  points.reserve(candidate_bids.size());
  for (const Bid& b : candidate_bids) {
    double q = 0.0;
    if (!b.is_abstain() && (!reserve || b.amount() >= *reserve))
      q = landscape.win_probability(b.amount());
    FrontierPoint p;
    p.payment = b.is_abstain() ? 0.0 : b.amount() * q;
    p.value = value_cap * q;
    p.bid = b;
    points.push_back(p);
  }

  // Pareto sweep: keep, per payment level, the best value, and drop any
  // point that pays more for no more value. ABSTAIN and smaller bids win
  // representation ties.
  std::sort(points.begin(), points.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.payment != b.payment) return a.payment < b.payment;
    if (a.value != b.value) return a.value > b.value;
    if (a.bid.is_abstain() != b.bid.is_abstain()) return a.bid.is_abstain();
    if (a.bid.is_abstain()) return false;
    return a.bid.amount() < b.bid.amount();
  });
  std::vector<FrontierPoint> kept;
  for (const FrontierPoint& p : points) {
    if (!kept.empty() && kept.back().payment == p.payment) continue;
    if (!kept.empty() && p.value <= kept.back().value) continue;
    if (kept.empty() || p.value > kept.back().value) kept.push_back(p);
  }
  return kept;
}

Frontier concave_envelope(std::vector<FrontierPoint> points, double value_cap) {
  if (points.empty()) throw std::invalid_argument("concave_envelope needs points");
  std::sort(points.begin(), points.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.payment != b.payment) return a.payment < b.payment;
    return a.value > b.value;
  });
  if (points.front().payment != 0.0)
    throw std::invalid_argument("concave_envelope needs a payment-0 point");

  auto cross = [](const FrontierPoint& o, const FrontierPoint& a, const FrontierPoint& b) {
    return (a.payment - o.payment) * (b.value - o.value) -
           (a.value - o.value) * (b.payment - o.payment);
  };

  Frontier f;
  f.value_cap = value_cap;
  for (const FrontierPoint& p : points) {
    if (!f.breakpoints.empty() && f.breakpoints.back().payment == p.payment) continue;
    if (!f.breakpoints.empty() && p.value <= f.breakpoints.back().value) continue;
    while (f.breakpoints.size() >= 2 &&
           cross(f.breakpoints[f.breakpoints.size() - 2], f.breakpoints.back(), p) >= 0.0)
      f.breakpoints.pop_back();
    f.breakpoints.push_back(p);
  }
  return f;
}

std::vector<Bid> candidate_bids(const AuctionInstance& instance,
                                const CompetitorLandscape& landscape, int bidder, int auction,
                                const BestResponseOptions& opts) {
  std::vector<double> amounts;
  double hi = instance.values(bidder, auction);
  for (const LandscapeAtom& a : landscape.atoms) {
    amounts.push_back(a.threshold);
    if (!a.tie_wins) amounts.push_back(a.threshold + opts.delta);
    hi = std::max(hi, a.threshold + opts.delta);
  }
  amounts.push_back(instance.values(bidder, auction));
  if (instance.has_reserves()) {
    amounts.push_back(instance.reserve(auction));
    hi = std::max(hi, instance.reserve(auction));
  }
  for (int k = 0; k < opts.grid_points; ++k)
    amounts.push_back(hi * static_cast<double>(k) / std::max(1, opts.grid_points - 1));

  std::sort(amounts.begin(), amounts.end());
  amounts.erase(std::unique(amounts.begin(), amounts.end()), amounts.end());

  std::vector<Bid> bids;
  bids.push_back(Bid::abstain());
  for (double a : amounts) bids.push_back(Bid::at(a));
  return bids;
}

Frontier build_frontier(const AuctionInstance& instance, const StrategyProfile& profile,
                        int bidder, int auction, const BestResponseOptions& opts) {
  const CompetitorLandscape landscape =
      competitor_landscape(instance, profile, bidder, auction, opts.enumeration_cap);
  const std::vector<Bid> bids = candidate_bids(instance, landscape, bidder, auction, opts);
  std::optional<double> reserve;
  if (instance.has_reserves()) reserve = instance.reserve(auction);
  std::vector<FrontierPoint> points =
      attainable_points(landscape, instance.values(bidder, auction), reserve, bids);
  if (points.empty() || points.front().payment != 0.0) {
    FrontierPoint origin;
    origin.bid = Bid::abstain();
    points.insert(points.begin(), origin);
  }
  return concave_envelope(std::move(points), instance.values(bidder, auction));
}

UtilityBestResponse best_response_utility(const AuctionInstance& instance,
                                          const StrategyProfile& profile, int bidder,
                                          const BestResponseOptions& opts) {
  if (instance.kinds[bidder] != BidderKind::UtilityMax)
    throw std::invalid_argument("best_response_utility expects a utility maximizer");
  UtilityBestResponse result;
  for (int j = 0; j < instance.num_auctions; ++j) {
    const CompetitorLandscape landscape =
        competitor_landscape(instance, profile, bidder, j, opts.enumeration_cap);
    const std::vector<Bid> bids = candidate_bids(instance, landscape, bidder, j, opts);
    const double v = instance.values(bidder, j);
    const double r = instance.reserve(j);

    Bid best = Bid::abstain();
    double best_utility = 0.0;
    double best_payment = 0.0;
    for (const Bid& b : bids) {
      double q = 0.0;
      if (!b.is_abstain() && (!instance.has_reserves() || b.amount() >= r))
        q = landscape.win_probability(b.amount());
      const double payment = b.is_abstain() ? 0.0 : b.amount() * q;
      const double utility = v * q - payment;
      bool better = utility > best_utility;
      if (utility == best_utility) {
        if (payment < best_payment)
          better = true;
        else if (payment == best_payment && !best.is_abstain())
          better = b.is_abstain() || b.amount() < best.amount();
      }
      if (better) {
        best = b;
        best_utility = utility;
        best_payment = payment;
      }
    }
    result.row.push_back(BidDistribution::deterministic(best));
    result.utility += best_utility;
  }
  return result;
}

namespace {

struct Segment {
  int auction;
  std::size_t index;  // segment between breakpoints index and index + 1
  double slope;
  double d_payment;
};

}  // namespace

ValueBestResponse best_response_value(const AuctionInstance& instance,
                                      const StrategyProfile& profile, int bidder,
                                      const BestResponseOptions& opts) {
  if (instance.kinds[bidder] != BidderKind::ValueMax)
    throw std::invalid_argument("best_response_value expects a value maximizer");
  const int m = instance.num_auctions;

  std::vector<Frontier> frontiers;
  frontiers.reserve(m);
  for (int j = 0; j < m; ++j) frontiers.push_back(build_frontier(instance, profile, bidder, j, opts));

  // Utility-maximizing prefix: walk each frontier past every segment with
  // slope >= 1. These segments only add slack.
  std::vector<std::size_t> position(m, 0);
  std::vector<double> fraction(m, 0.0);
  double slack = 0.0;
  std::vector<Segment> pending;
  for (int j = 0; j < m; ++j) {
    const auto& bp = frontiers[j].breakpoints;
    std::size_t k = 0;
    while (k + 1 < bp.size()) {
      const double dp = bp[k + 1].payment - bp[k].payment;
      const double slope = (bp[k + 1].value - bp[k].value) / dp;
      if (slope >= 1.0)
        ++k;
      else
        break;
    }
    position[j] = k;
    slack += bp[k].value - bp[k].payment;
    for (std::size_t s = k; s + 1 < bp.size(); ++s) {
      const double dp = bp[s + 1].payment - bp[s].payment;
      const double slope = (bp[s + 1].value - bp[s].value) / dp;
      pending.push_back({j, s, slope, dp});
    }
  }
  slack = std::max(slack, 0.0);

  // Spend slack on the steepest remaining segments first. Within one
  // frontier slopes strictly decrease, so global slope order respects the
  // per-auction segment order.
  std::stable_sort(pending.begin(), pending.end(), [](const Segment& a, const Segment& b) {
    if (a.slope != b.slope) return a.slope > b.slope;
    if (a.auction != b.auction) return a.auction < b.auction;
    return a.index < b.index;
  });
  for (const Segment& seg : pending) {
    if (slack <= 0.0) break;
    const double cost = (1.0 - seg.slope) * seg.d_payment;
    if (slack >= cost) {
      slack -= cost;
      position[seg.auction] = seg.index + 1;
      fraction[seg.auction] = 0.0;
    } else {
      position[seg.auction] = seg.index;
      fraction[seg.auction] = slack / cost;
      slack = 0.0;
      break;
    }
  }

  ValueBestResponse result;
  for (int j = 0; j < m; ++j) {
    const auto& bp = frontiers[j].breakpoints;
    const std::size_t k = position[j];
    const double f = fraction[j];
    if (f == 0.0) {
      result.row.push_back(BidDistribution::deterministic(bp[k].bid));
      result.value += bp[k].value;
      result.payment += bp[k].payment;
    } else {
      result.row.push_back(BidDistribution({{bp[k].bid, 1.0 - f}, {bp[k + 1].bid, f}}));
      result.value += (1.0 - f) * bp[k].value + f * bp[k + 1].value;
      result.payment += (1.0 - f) * bp[k].payment + f * bp[k + 1].payment;
    }
  }
  return result;
}

std::vector<BidDistribution> truthful_proxy(const AuctionInstance& instance, int bidder) {
  std::vector<BidDistribution> row;
  row.reserve(instance.num_auctions);
  for (int j = 0; j < instance.num_auctions; ++j)
    row.push_back(BidDistribution::deterministic(instance.values(bidder, j)));
  return row;
}

}  // namespace fpa
