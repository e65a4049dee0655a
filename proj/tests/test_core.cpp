#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fpa/core.hpp"
#include "fpa/instances.hpp"

#include <cmath>
#include <random>

using namespace fpa;

namespace {

AuctionInstance two_bidder_one_auction(double v0, double v1) {
  AuctionInstance instance;
  instance.num_bidders = 2;
  instance.num_auctions = 1;
  instance.values = Eigen::MatrixXd{{v0}, {v1}};
  instance.kinds = {BidderKind::UtilityMax, BidderKind::UtilityMax};
  instance.validate();
  return instance;
}

StrategyProfile random_profile(const AuctionInstance& instance, std::mt19937& rng,
                               int max_atoms = 3) {
  std::uniform_real_distribution<double> bid(0.0, 1.5);
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  StrategyProfile profile(instance.num_bidders, instance.num_auctions);
  for (int i = 0; i < instance.num_bidders; ++i) {
    for (int j = 0; j < instance.num_auctions; ++j) {
      const int k = natoms(rng);
      std::vector<double> bids;
      while (static_cast<int>(bids.size()) < k) {
        double b = bid(rng);
        bool dup = false;
        for (double existing : bids) dup = dup || existing == b;
        if (!dup) bids.push_back(b);
      }
      std::vector<double> weights(k);
      double total = 0.0;
      for (double& w : weights) {
        w = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
        total += w;
      }
      std::vector<BidAtom> atoms;
      for (int a = 0; a < k; ++a) atoms.push_back({Bid::at(bids[a]), weights[a] / total});
      profile.at(i, j) = BidDistribution(std::move(atoms));
    }
  }
  return profile;
}

}  // namespace

TEST_CASE("rightful winner follows value then smaller index") {
  AuctionInstance tie = two_bidder_one_auction(1.0, 1.0);
  CHECK(rightful_winner(tie, 0) == 0);

  AuctionInstance clear = two_bidder_one_auction(0.2, 0.7);
  CHECK(rightful_winner(clear, 0) == 1);

  const auto hard = thm1_instance(0.01);
  CHECK(rightful_winner(hard.instance, 1) == 1);
  CHECK(rightful_winner(hard.instance, 0) == 0);
}

TEST_CASE("win probability with value tie-breaking") {
  AuctionInstance instance = two_bidder_one_auction(1.0, 0.5);
  StrategyProfile profile(2, 1);
  profile.at(0, 0) = BidDistribution::deterministic(0.0);  // ignored for focal bidder 0
  profile.at(1, 0) = BidDistribution::deterministic(0.5);

  CHECK(win_probability(instance, profile, 0, 0, Bid::at(0.5)) == 1.0);
  CHECK(win_probability(instance, profile, 0, 0, Bid::at(0.4)) == 0.0);
  CHECK(win_probability(instance, profile, 0, 0, Bid::abstain()) == 0.0);
}

TEST_CASE("win probability enumerates mixed competitor supports") {
  AuctionInstance instance = two_bidder_one_auction(1.0, 0.5);
  StrategyProfile profile(2, 1);
  profile.at(1, 0) =
      BidDistribution({{Bid::at(0.2), 0.5}, {Bid::at(0.6), 0.5}});

  CHECK(win_probability(instance, profile, 0, 0, Bid::at(0.4)) == doctest::Approx(0.5));

  instance.reserves = Eigen::VectorXd::Constant(1, 0.7);
  instance.validate();
  CHECK(win_probability(instance, profile, 0, 0, Bid::at(0.4)) == 0.0);
}

TEST_CASE("evaluate_profile on the two-auction hard instance") {
  const auto hard = thm1_instance(0.01);
  const OutcomeSummary outcome = evaluate_profile(hard.instance, hard.profile);
  CHECK(outcome.per_bidder_value(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(outcome.per_bidder_value(1) == 0.0);
  CHECK(outcome.per_bidder_payment(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(outcome.per_bidder_payment(1) == 0.0);
  CHECK(outcome.welfare == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(outcome.ratio == doctest::Approx(1.0 / 1.99).epsilon(1e-14));
}

TEST_CASE("all-abstain profile allocates nothing") {
  AuctionInstance instance = two_bidder_one_auction(1.0, 0.5);
  StrategyProfile profile(2, 1);
  profile.at(0, 0) = BidDistribution::deterministic(Bid::abstain());
  profile.at(1, 0) = BidDistribution::deterministic(Bid::abstain());
  const OutcomeSummary outcome = evaluate_profile(instance, profile);
  CHECK(outcome.welfare == 0.0);
  CHECK(outcome.win_prob.sum() == 0.0);
}

TEST_CASE("single truthful bidder pays its value") {
  AuctionInstance instance;
  instance.num_bidders = 1;
  instance.num_auctions = 3;
  instance.values = Eigen::MatrixXd{{0.5, 1.5, 2.0}};
  instance.kinds = {BidderKind::ValueMax};
  instance.validate();

  StrategyProfile profile(1, 3);
  for (int j = 0; j < 3; ++j)
    profile.at(0, j) = BidDistribution::deterministic(instance.values(0, j));
  const OutcomeSummary outcome = evaluate_profile(instance, profile);
  CHECK(outcome.per_bidder_value(0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(outcome.per_bidder_payment(0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("optimal welfare sums column maxima") {
  CHECK(optimal_welfare(thm1_instance(0.01).instance) == doctest::Approx(1.99).epsilon(1e-14));

  AuctionInstance single;
  single.num_bidders = 2;
  single.num_auctions = 2;
  single.values = Eigen::MatrixXd{{3.0, 0.0}, {0.0, 0.0}};
  single.kinds = {BidderKind::UtilityMax, BidderKind::UtilityMax};
  single.validate();
  CHECK(optimal_welfare(single) == 3.0);

  AuctionInstance grid;
  grid.num_bidders = 2;
  grid.num_auctions = 2;
  grid.values = Eigen::MatrixXd{{1.0, 2.0}, {3.0, 4.0}};
  grid.kinds = {BidderKind::UtilityMax, BidderKind::UtilityMax};
  grid.validate();
  CHECK(optimal_welfare(grid) == 7.0);
}

TEST_CASE("win probabilities sum to one without reserves") {
  std::mt19937 rng(7);
  AuctionInstance instance;
  instance.num_bidders = 3;
  instance.num_auctions = 2;
  instance.values = Eigen::MatrixXd{{1.0, 0.4}, {0.8, 0.4}, {0.2, 0.9}};
  instance.kinds = {BidderKind::UtilityMax, BidderKind::ValueMax, BidderKind::UtilityMax};
  instance.validate();

  for (int rep = 0; rep < 20; ++rep) {
    const StrategyProfile profile = random_profile(instance, rng);
    const OutcomeSummary outcome = evaluate_profile(instance, profile);
    for (int j = 0; j < instance.num_auctions; ++j)
      CHECK(outcome.win_prob.col(j).sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("scaling values and bids by c scales welfare and leaves the ratio alone") {
  std::mt19937 rng(11);
  AuctionInstance instance;
  instance.num_bidders = 2;
  instance.num_auctions = 2;
  instance.values = Eigen::MatrixXd{{1.0, 0.3}, {0.6, 0.8}};
  instance.kinds = {BidderKind::ValueMax, BidderKind::UtilityMax};
  instance.validate();
  const StrategyProfile profile = random_profile(instance, rng);

  const double c = 3.5;
  AuctionInstance scaled = instance;
  scaled.values *= c;
  StrategyProfile scaled_profile(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::vector<BidAtom> atoms;
      for (const BidAtom& a : profile.at(i, j).atoms())
        atoms.push_back({a.bid.is_abstain() ? Bid::abstain() : Bid::at(c * a.bid.amount()), a.prob});
      scaled_profile.at(i, j) = BidDistribution(std::move(atoms));
    }

  const OutcomeSummary base = evaluate_profile(instance, profile);
  const OutcomeSummary big = evaluate_profile(scaled, scaled_profile);
  CHECK(big.welfare == doctest::Approx(c * base.welfare).epsilon(1e-12));
  CHECK(big.optimal_welfare == doctest::Approx(c * base.optimal_welfare).epsilon(1e-12));
  CHECK(big.per_bidder_payment.sum() ==
        doctest::Approx(c * base.per_bidder_payment.sum()).epsilon(1e-12));
  CHECK(big.ratio == doctest::Approx(base.ratio).epsilon(1e-12));
  CHECK((big.win_prob - base.win_prob).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("deterministic profiles match the single-outcome computation") {
  AuctionInstance instance;
  instance.num_bidders = 3;
  instance.num_auctions = 2;
  instance.values = Eigen::MatrixXd{{1.0, 0.4}, {0.8, 0.4}, {0.2, 0.9}};
  instance.kinds = {BidderKind::UtilityMax, BidderKind::ValueMax, BidderKind::UtilityMax};
  instance.validate();

  StrategyProfile profile(3, 2);
  const double bids[3][2] = {{0.5, 0.2}, {0.5, 0.3}, {0.1, 0.3}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) profile.at(i, j) = BidDistribution::deterministic(bids[i][j]);

  // Auction 0: tie at 0.5 between bidders 0 and 1, values 1.0 vs 0.8.
  // Auction 1: tie at 0.3 between bidders 1 and 2, values 0.4 vs 0.9.
  const OutcomeSummary outcome = evaluate_profile(instance, profile);
  CHECK(outcome.win_prob(0, 0) == 1.0);
  CHECK(outcome.win_prob(2, 1) == 1.0);
  CHECK(outcome.exp_payment(0, 0) == 0.5);
  CHECK(outcome.exp_payment(2, 1) == 0.3);
  CHECK(outcome.welfare == doctest::Approx(1.9));
}

TEST_CASE("Monte Carlo sampling reproduces exact win probabilities") {
  std::mt19937 rng(2024);
  AuctionInstance instance;
  instance.num_bidders = 2;
  instance.num_auctions = 1;
  instance.values = Eigen::MatrixXd{{1.0}, {0.7}};
  instance.kinds = {BidderKind::UtilityMax, BidderKind::UtilityMax};
  instance.validate();
  const StrategyProfile profile = random_profile(instance, rng);
  const OutcomeSummary exact = evaluate_profile(instance, profile);

  constexpr int kSamples = 100000;
  auto sample_bid = [&](const BidDistribution& dist) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (const BidAtom& a : dist.atoms()) {
      if (u <= a.prob) return a.bid;
      u -= a.prob;
    }
    return dist.atoms().back().bid;
  };
  Eigen::Vector2d wins = Eigen::Vector2d::Zero();
  for (int s = 0; s < kSamples; ++s) {
    const Bid b0 = sample_bid(profile.at(0, 0));
    const Bid b1 = sample_bid(profile.at(1, 0));
    if (b0.is_abstain() && b1.is_abstain()) continue;
    // bidder 0 has the higher value, so it wins ties
    if (b1.is_abstain() || (!b0.is_abstain() && b0.amount() >= b1.amount()))
      wins(0) += 1.0;
    else
      wins(1) += 1.0;
  }
  for (int i = 0; i < 2; ++i) {
    const double p = exact.win_prob(i, 0);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) / kSamples);
    CHECK(std::abs(wins(i) / kSamples - p) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("instance validation rejects bad reserves and empty welfare") {
  AuctionInstance instance = two_bidder_one_auction(1.0, 0.5);
  instance.reserves = Eigen::VectorXd::Constant(1, 1.5);  // above the top value
  CHECK_THROWS_AS(instance.validate(), std::invalid_argument);

  instance.reserves = Eigen::VectorXd::Constant(1, 0.3);
  instance.accuracy = 0.8;  // gamma * max = 0.8 > 0.3
  CHECK_THROWS_AS(instance.validate(), std::invalid_argument);

  AuctionInstance zero;
  zero.num_bidders = 1;
  zero.num_auctions = 1;
  zero.values = Eigen::MatrixXd{{0.0}};
  zero.kinds = {BidderKind::UtilityMax};
  CHECK_THROWS_AS(zero.validate(), std::invalid_argument);
}

TEST_CASE("enumeration cap aborts oversized supports") {
  AuctionInstance instance = two_bidder_one_auction(1.0, 0.5);
  std::vector<BidAtom> atoms;
  for (int k = 0; k < 50; ++k) atoms.push_back({Bid::at(0.01 * (k + 1)), 1.0 / 50});
  StrategyProfile profile(2, 1);
  profile.at(0, 0) = BidDistribution(atoms);
  profile.at(1, 0) = BidDistribution(atoms);
  CHECK_THROWS_AS(evaluate_profile(instance, profile, /*enumeration_cap=*/100),
                  EnumerationCapExceeded);
}
