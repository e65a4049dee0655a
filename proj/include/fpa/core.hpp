#pragma once

#include "fpa/types.hpp"

namespace fpa {

/// The bidder with the highest value in an auction; ties go to the smaller
/// index. The optimal allocation assigns each auction to its rightful winner.
int rightful_winner(const AuctionInstance& instance, int auction);

/// True iff `bidder` beats `other` in a tie at equal bids: higher value first,
/// then smaller index.
bool wins_tie(const AuctionInstance& instance, int auction, int bidder, int other);

/// Exact probability that `bidder` wins `auction` with the given bid, against
/// the competitor distributions in `profile`. ABSTAIN and bids below the
/// reserve never win.
double win_probability(const AuctionInstance& instance, const StrategyProfile& profile,
                       int bidder, int auction, Bid bid,
                       std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Exact expected allocation, value, and payment for every bidder-auction
/// pair, by enumerating the product of bid supports one auction at a time.
OutcomeSummary evaluate_profile(const AuctionInstance& instance, const StrategyProfile& profile,
                                std::size_t enumeration_cap = kDefaultEnumerationCap);

/// Sum over auctions of the highest value: the welfare of the optimal
/// allocation.
double optimal_welfare(const AuctionInstance& instance);

}  // namespace fpa
