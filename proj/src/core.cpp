#include "fpa/core.hpp"

#include <algorithm>
#include <cmath>

namespace fpa {

BidDistribution::BidDistribution(std::vector<BidAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("BidDistribution needs at least one atom");
  std::stable_sort(atoms_.begin(), atoms_.end(), [](const BidAtom& a, const BidAtom& b) {
    if (a.bid.is_abstain() != b.bid.is_abstain()) return a.bid.is_abstain();
    if (a.bid.is_abstain()) return false;
    return a.bid.amount() < b.bid.amount();
  });
  double total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const BidAtom& a = atoms_[k];
    if (!(a.prob > 0.0) || a.prob > 1.0 + 1e-12)
      throw std::invalid_argument("atom probability must be in (0, 1]");
    if (k > 0 && atoms_[k - 1].bid == a.bid)
      throw std::invalid_argument("duplicate bid atom");
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("atom probabilities must sum to 1");
}

void AuctionInstance::validate() const {
  if (num_bidders <= 0 || num_auctions <= 0)
    throw std::invalid_argument("instance needs at least one bidder and one auction");
  if (values.rows() != num_bidders || values.cols() != num_auctions)
    throw std::invalid_argument("value matrix shape mismatch");
  if ((values.array() < 0.0).any())
    throw std::invalid_argument("values must be nonnegative");
  if (static_cast<int>(kinds.size()) != num_bidders)
    throw std::invalid_argument("kinds length mismatch");
  if (values.colwise().maxCoeff().sum() <= 0.0)
    throw std::invalid_argument("optimal welfare must be positive");
  if (reserves) {
    if (reserves->size() != num_auctions)
      throw std::invalid_argument("reserves length mismatch");
    const double gamma = accuracy.value_or(0.0);
    if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("gamma must be in [0, 1]");
    for (int j = 0; j < num_auctions; ++j) {
      const double top = values.col(j).maxCoeff();
      const double r = (*reserves)(j);
      if (r < gamma * top - 1e-12 || r > top + 1e-12)
        throw std::invalid_argument("reserve outside [gamma * max value, max value]");
    }
  }
}

int rightful_winner(const AuctionInstance& instance, int auction) {
  int best = 0;
  for (int i = 1; i < instance.num_bidders; ++i)
    if (instance.values(i, auction) > instance.values(best, auction)) best = i;
  return best;
}

bool wins_tie(const AuctionInstance& instance, int auction, int bidder, int other) {
  const double vb = instance.values(bidder, auction);
  const double vo = instance.values(other, auction);
  if (vb != vo) return vb > vo;
  return bidder < other;
}

namespace {

// Walks the product of per-bidder atom lists in one auction, invoking the
// visitor with (atom index per bidder, joint probability).
template <typename Visitor>
void for_each_joint_outcome(const std::vector<const BidDistribution*>& dists,
                            std::size_t enumeration_cap, Visitor&& visit) {
  std::size_t total = 1;
  for (const BidDistribution* d : dists) {
    total *= d->support_size();
    if (total > enumeration_cap) throw EnumerationCapExceeded(total);
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

// Winner of one realized auction, or -1 when nobody clears the reserve.
// `bidders` maps positions in `bids` to bidder indices.
int realized_winner(const AuctionInstance& instance, int auction,
                    const std::vector<int>& bidders, const std::vector<Bid>& bids) {
  const double r = instance.reserve(auction);
  int winner = -1;
  double best_bid = 0.0;
  for (std::size_t k = 0; k < bidders.size(); ++k) {
    if (bids[k].is_abstain()) continue;
    const double b = bids[k].amount();
    if (instance.has_reserves() && b < r) continue;
    if (winner < 0 || b > best_bid ||
        (b == best_bid && wins_tie(instance, auction, bidders[k], winner))) {
      winner = bidders[k];
      best_bid = b;
    }
  }
  return winner;
}

}  // namespace

double win_probability(const AuctionInstance& instance, const StrategyProfile& profile,
                       int bidder, int auction, Bid bid, std::size_t enumeration_cap) {
  if (bid.is_abstain()) return 0.0;
  if (instance.has_reserves() && bid.amount() < instance.reserve(auction)) return 0.0;

  std::vector<int> competitors;
  std::vector<const BidDistribution*> dists;
  for (int i = 0; i < instance.num_bidders; ++i) {
    if (i == bidder) continue;
    competitors.push_back(i);
    dists.push_back(&profile.at(i, auction));
  }

  std::vector<int> bidders = competitors;
  bidders.push_back(bidder);
  std::vector<Bid> bids(bidders.size());
  bids.back() = bid;

  double win = 0.0;
  for_each_joint_outcome(dists, enumeration_cap,
                         [&](const std::vector<std::size_t>& idx, double prob) {
                           for (std::size_t k = 0; k < competitors.size(); ++k)
                             bids[k] = dists[k]->atoms()[idx[k]].bid;
                           if (realized_winner(instance, auction, bidders, bids) == bidder)
                             win += prob;
                         });
  return win;
}

OutcomeSummary evaluate_profile(const AuctionInstance& instance, const StrategyProfile& profile,
                                std::size_t enumeration_cap) {
  const int n = instance.num_bidders;
  const int m = instance.num_auctions;
  if (profile.num_bidders() != n || profile.num_auctions() != m)
    throw std::invalid_argument("profile shape mismatch");

  OutcomeSummary out;
  out.win_prob = Eigen::MatrixXd::Zero(n, m);
  out.exp_payment = Eigen::MatrixXd::Zero(n, m);

  std::vector<int> bidders(n);
  for (int i = 0; i < n; ++i) bidders[i] = i;

  for (int j = 0; j < m; ++j) {
    std::vector<const BidDistribution*> dists;
    for (int i = 0; i < n; ++i) dists.push_back(&profile.at(i, j));
    std::vector<Bid> bids(n);
    for_each_joint_outcome(dists, enumeration_cap,
                           [&](const std::vector<std::size_t>& idx, double prob) {
                             for (int i = 0; i < n; ++i) bids[i] = dists[i]->atoms()[idx[i]].bid;
                             const int w = realized_winner(instance, j, bidders, bids);
                             if (w >= 0) {
                               out.win_prob(w, j) += prob;
                               out.exp_payment(w, j) += prob * bids[w].amount();
                             }
                           });
  }

  out.exp_value = out.win_prob.cwiseProduct(instance.values);
  out.per_bidder_value = out.exp_value.rowwise().sum();
  out.per_bidder_payment = out.exp_payment.rowwise().sum();
  out.welfare = out.per_bidder_value.sum();
  out.optimal_welfare = optimal_welfare(instance);
  out.ratio = out.welfare / out.optimal_welfare;
  return out;
}

double optimal_welfare(const AuctionInstance& instance) {
  return instance.values.colwise().maxCoeff().sum();
}

}  // namespace fpa
