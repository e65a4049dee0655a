#pragma once

#include "fpa/types.hpp"

#include <string>

namespace fpa {

/// Aggregate quantities of an evaluated profile, split by the kind of each
/// auction's rightful winner:
///   A: value received by value maximizers,
///   B: value received by utility maximizers in their rightful auctions,
///   C: payments in auctions whose rightful winner is a value maximizer,
///   D: payments by non-rightful bidders in auctions whose rightful winner
///      is a utility maximizer,
///   V1 / V2: optimal welfare of the two auction groups.
struct AuditLedger {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double x_value = 0.0;  // A >= x V1 and C >= (1 - x) V1 when V1 > 0
  double y_value = 0.0;  // B / V2 when V2 > 0
  double welfare = 0.0;
  double total_payment = 0.0;
  double rightful_utilitymax_payment = 0.0;  // payments by rightful utility maximizers at home

  struct PerAuction {
    int auction = 0;
    double x = 0.0;            // rightful winner's win probability
    double local_bound = 0.0;  // (1 - x + x ln x) * top value
  };
  std::vector<PerAuction> per_auction;  // auctions whose rightful winner is a utility maximizer
};

AuditLedger compute_ledger(const AuctionInstance& instance, const OutcomeSummary& outcome);

struct AuditResult {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs; tight witnesses show margin near 0
  bool pass = false;
};

/// A + C >= V1 (value maximizers either take their rightful value or force
/// the payment that covers it).
AuditResult audit_lemma_value(const AuditLedger& ledger, double tol);

/// In one auction with rightful winner i winning with probability x, the
/// other bidders pay at least (1 - x + x ln x) * v_{i,j}.
AuditResult audit_lemma_local(const AuctionInstance& instance, const OutcomeSummary& outcome,
                              int auction, double tol);

/// Welfare >= max{A, C + D} + B.
AuditResult audit_lemma_combination(const AuditLedger& ledger, double tol);

/// (1 - gamma) A + C >= V1 with reserves of accuracy gamma.
AuditResult audit_lemma_value_ml(const AuditLedger& ledger, double gamma, double tol);

/// Others' payment >= (1 - x + (1 - gamma) x ln x) * v_{rw(j),j}.
AuditResult audit_lemma_local_ml(const AuctionInstance& instance, const OutcomeSummary& outcome,
                                 int auction, double gamma, double tol);

/// Every applicable audit for the given evaluated profile.
std::vector<AuditResult> run_all_audits(const AuctionInstance& instance,
                                        const OutcomeSummary& outcome, double tol);

}  // namespace fpa
