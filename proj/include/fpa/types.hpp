#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fpa {

enum class BidderKind { UtilityMax, ValueMax };

/// A bid is either a nonnegative amount or ABSTAIN (never wins, never pays).
class Bid {
 public:
  Bid() : abstain_(true), amount_(0.0) {}

  static Bid abstain() { return Bid(); }

  static Bid at(double amount) {
    if (!(amount >= 0.0)) throw std::invalid_argument("bid amount must be >= 0");
    Bid b;
    b.abstain_ = false;
    b.amount_ = amount;
    return b;
  }

  bool is_abstain() const { return abstain_; }

  double amount() const {
    if (abstain_) throw std::logic_error("ABSTAIN has no amount");
    return amount_;
  }

  friend bool operator==(const Bid& a, const Bid& b) {
    if (a.abstain_ != b.abstain_) return false;
    return a.abstain_ || a.amount_ == b.amount_;
  }

 private:
  bool abstain_;
  double amount_;
};

struct BidAtom {
  Bid bid;
  double prob;
};

/// Finite-support randomized bid in one auction. ABSTAIN, if present, is the
/// first atom; real bids follow in strictly increasing order.
class BidDistribution {
 public:
  BidDistribution() = default;
  explicit BidDistribution(std::vector<BidAtom> atoms);

  static BidDistribution deterministic(Bid b) {
    return BidDistribution({{b, 1.0}});
  }

  static BidDistribution deterministic(double amount) {
    return deterministic(Bid::at(amount));
  }

  const std::vector<BidAtom>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }

 private:
  std::vector<BidAtom> atoms_;
};

struct AuctionInstance {
  int num_bidders = 0;
  int num_auctions = 0;
  Eigen::MatrixXd values;  // num_bidders x num_auctions
  std::vector<BidderKind> kinds;
  std::optional<Eigen::VectorXd> reserves;
  std::optional<double> accuracy;  // gamma, only meaningful with reserves

  void validate() const;

  double reserve(int auction) const {
    return reserves ? (*reserves)(auction) : 0.0;
  }
  bool has_reserves() const { return reserves.has_value(); }
};

/// Product-form randomized strategies: one BidDistribution per bidder-auction
/// pair, all independent.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  StrategyProfile(int num_bidders, int num_auctions)
      : n_(num_bidders), m_(num_auctions), cells_(num_bidders * num_auctions) {}

  int num_bidders() const { return n_; }
  int num_auctions() const { return m_; }

  BidDistribution& at(int bidder, int auction) {
    return cells_[bidder * m_ + auction];
  }
  const BidDistribution& at(int bidder, int auction) const {
    return cells_[bidder * m_ + auction];
  }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<BidDistribution> cells_;
};

struct OutcomeSummary {
  Eigen::MatrixXd win_prob;
  Eigen::MatrixXd exp_value;
  Eigen::MatrixXd exp_payment;
  Eigen::VectorXd per_bidder_value;
  Eigen::VectorXd per_bidder_payment;
  double welfare = 0.0;
  double optimal_welfare = 0.0;
  double ratio = 0.0;
};

/// Thrown when the joint competitor support in one auction exceeds the
/// exact-enumeration cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(std::size_t size)
      : std::runtime_error("joint bid support too large for exact evaluation: " +
                           std::to_string(size)) {}
};

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

}  // namespace fpa
