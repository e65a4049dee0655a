#include "fpa/audits.hpp"

#include "fpa/bounds.hpp"
#include "fpa/core.hpp"

#include <algorithm>
#include <cmath>

namespace fpa {

AuditLedger compute_ledger(const AuctionInstance& instance, const OutcomeSummary& outcome) {
  AuditLedger ledger;
  const int n = instance.num_bidders;
  const int m = instance.num_auctions;

  for (int i = 0; i < n; ++i)
    if (instance.kinds[i] == BidderKind::ValueMax) ledger.A += outcome.per_bidder_value(i);

  for (int j = 0; j < m; ++j) {
    const int rw = rightful_winner(instance, j);
    const double top = instance.values(rw, j);
    const bool rw_utility = instance.kinds[rw] == BidderKind::UtilityMax;
    if (rw_utility) {
      ledger.V2 += top;
      ledger.B += outcome.exp_value(rw, j);
      AuditLedger::PerAuction row;
      row.auction = j;
      row.x = outcome.win_prob(rw, j);
      row.local_bound = (1.0 - row.x + xlogx(row.x)) * top;
      ledger.per_auction.push_back(row);
    } else {
      ledger.V1 += top;
    }
    for (int i = 0; i < n; ++i) {
      if (!rw_utility)
        ledger.C += outcome.exp_payment(i, j);
      else if (i != rw)
        ledger.D += outcome.exp_payment(i, j);
      else
        ledger.rightful_utilitymax_payment += outcome.exp_payment(i, j);
    }
  }

  ledger.welfare = outcome.welfare;
  ledger.total_payment = outcome.per_bidder_payment.sum();
  if (ledger.V1 > 0.0) ledger.x_value = std::clamp(ledger.A / ledger.V1, 0.0, 1.0);
  if (ledger.V2 > 0.0) ledger.y_value = std::clamp(ledger.B / ledger.V2, 0.0, 1.0);
  return ledger;
}

namespace {

AuditResult make_result(std::string name, double lhs, double rhs, double tol) {
  AuditResult r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.pass = lhs >= rhs - tol;
  return r;
}

double others_payment(const OutcomeSummary& outcome, int auction, int rw) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < outcome.exp_payment.rows(); ++i)
    if (static_cast<int>(i) != rw) total += outcome.exp_payment(i, auction);
  return total;
}

}  // namespace

AuditResult audit_lemma_value(const AuditLedger& ledger, double tol) {
  return make_result("value", ledger.A + ledger.C, ledger.V1, tol);
}

AuditResult audit_lemma_local(const AuctionInstance& instance, const OutcomeSummary& outcome,
                              int auction, double tol) {
  const int rw = rightful_winner(instance, auction);
  const double x = outcome.win_prob(rw, auction);
  const double bound = (1.0 - x + xlogx(x)) * instance.values(rw, auction);
  return make_result("local[" + std::to_string(auction) + "]",
                     others_payment(outcome, auction, rw), bound, tol);
}

AuditResult audit_lemma_combination(const AuditLedger& ledger, double tol) {
  return make_result("combination", ledger.welfare,
                     std::max(ledger.A, ledger.C + ledger.D) + ledger.B, tol);
}

AuditResult audit_lemma_value_ml(const AuditLedger& ledger, double gamma, double tol) {
  return make_result("value-ml", (1.0 - gamma) * ledger.A + ledger.C, ledger.V1, tol);
}

AuditResult audit_lemma_local_ml(const AuctionInstance& instance, const OutcomeSummary& outcome,
                                 int auction, double gamma, double tol) {
  const int rw = rightful_winner(instance, auction);
  const double x = outcome.win_prob(rw, auction);
  const double bound =
      (1.0 - x + (1.0 - gamma) * xlogx(x)) * instance.values(rw, auction);
  return make_result("local-ml[" + std::to_string(auction) + "]",
                     others_payment(outcome, auction, rw), bound, tol);
}

std::vector<AuditResult> run_all_audits(const AuctionInstance& instance,
                                        const OutcomeSummary& outcome, double tol) {
  const AuditLedger ledger = compute_ledger(instance, outcome);
  std::vector<AuditResult> results;
  results.push_back(audit_lemma_value(ledger, tol));
  results.push_back(audit_lemma_combination(ledger, tol));
  for (const auto& row : ledger.per_auction)
    results.push_back(audit_lemma_local(instance, outcome, row.auction, tol));
  if (instance.has_reserves() && instance.accuracy) {
    const double gamma = *instance.accuracy;
    results.push_back(audit_lemma_value_ml(ledger, gamma, tol));
    for (const auto& row : ledger.per_auction)
      results.push_back(audit_lemma_local_ml(instance, outcome, row.auction, gamma, tol));
  }
  return results;
}

}  // namespace fpa
