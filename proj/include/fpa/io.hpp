#pragma once

#include "fpa/audits.hpp"
#include "fpa/equilibrium.hpp"
#include "fpa/types.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace fpa {

/// Thrown on malformed input; `field` names the offending entry.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& field, const std::string& what)
      : std::runtime_error("invalid \"" + field + "\": " + what), field(field) {}
  std::string field;
};

nlohmann::json instance_to_json(const AuctionInstance& instance);
AuctionInstance instance_from_json(const nlohmann::json& j);

nlohmann::json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const nlohmann::json& j);

nlohmann::json outcome_to_json(const OutcomeSummary& outcome);
nlohmann::json report_to_json(const EquilibriumReport& report);
nlohmann::json ledger_to_json(const AuditLedger& ledger);
nlohmann::json audit_results_to_json(const std::vector<AuditResult>& results);
nlohmann::json frontier_to_json(const Frontier& frontier);

}  // namespace fpa
