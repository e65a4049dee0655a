#include "fpa/io.hpp"

#include <nlohmann/json.hpp>

namespace fpa {

using nlohmann::json;

json instance_to_json(const AuctionInstance& instance) {
  json j;
  j["n"] = instance.num_bidders;
  j["m"] = instance.num_auctions;
  json values = json::array();
  for (int i = 0; i < instance.num_bidders; ++i) {
    json row = json::array();
    for (int k = 0; k < instance.num_auctions; ++k) row.push_back(instance.values(i, k));
    values.push_back(row);
  }
  j["values"] = values;
  json kinds = json::array();
  for (BidderKind k : instance.kinds)
    kinds.push_back(k == BidderKind::UtilityMax ? "utility" : "value");
  j["kinds"] = kinds;
  if (instance.reserves) {
    json reserves = json::array();
    for (int k = 0; k < instance.num_auctions; ++k) reserves.push_back((*instance.reserves)(k));
    j["reserves"] = reserves;
  }
  if (instance.accuracy) j["gamma"] = *instance.accuracy;
  return j;
}

AuctionInstance instance_from_json(const json& j) {
  AuctionInstance instance;
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<int>() <= 0)
    throw ParseError("n", "positive integer required");
  if (!j.contains("m") || !j["m"].is_number_integer() || j["m"].get<int>() <= 0)
    throw ParseError("m", "positive integer required");
  instance.num_bidders = j["n"].get<int>();
  instance.num_auctions = j["m"].get<int>();

  if (!j.contains("values") || !j["values"].is_array() ||
      static_cast<int>(j["values"].size()) != instance.num_bidders)
    throw ParseError("values", "expected n rows");
  instance.values.resize(instance.num_bidders, instance.num_auctions);
  for (int i = 0; i < instance.num_bidders; ++i) {
    const json& row = j["values"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != instance.num_auctions)
      throw ParseError("values", "row " + std::to_string(i) + " must have m entries");
    for (int k = 0; k < instance.num_auctions; ++k) {
      if (!row[k].is_number() || row[k].get<double>() < 0.0)
        throw ParseError("values", "entries must be nonnegative numbers");
      instance.values(i, k) = row[k].get<double>();
    }
  }

  if (!j.contains("kinds") || !j["kinds"].is_array() ||
      static_cast<int>(j["kinds"].size()) != instance.num_bidders)
    throw ParseError("kinds", "expected n entries");
  for (const json& k : j["kinds"]) {
    if (k == "utility")
      instance.kinds.push_back(BidderKind::UtilityMax);
    else if (k == "value")
      instance.kinds.push_back(BidderKind::ValueMax);
    else
      throw ParseError("kinds", "entries must be \"utility\" or \"value\"");
  }

  if (j.contains("reserves")) {
    const json& r = j["reserves"];
    if (!r.is_array() || static_cast<int>(r.size()) != instance.num_auctions)
      throw ParseError("reserves", "expected m entries");
    Eigen::VectorXd reserves(instance.num_auctions);
    for (int k = 0; k < instance.num_auctions; ++k) {
      if (!r[k].is_number() || r[k].get<double>() < 0.0)
        throw ParseError("reserves", "entries must be nonnegative numbers");
      reserves(k) = r[k].get<double>();
    }
    instance.reserves = reserves;
  }
  if (j.contains("gamma")) {
    if (!j["gamma"].is_number()) throw ParseError("gamma", "number required");
    instance.accuracy = j["gamma"].get<double>();
  }

  try {
    instance.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError("instance", e.what());
  }
  return instance;
}

json profile_to_json(const StrategyProfile& profile) {
  json rows = json::array();
  for (int i = 0; i < profile.num_bidders(); ++i) {
    json row = json::array();
    for (int k = 0; k < profile.num_auctions(); ++k) {
      json atoms = json::array();
      for (const BidAtom& a : profile.at(i, k).atoms()) {
        json atom;
        if (a.bid.is_abstain())
          atom["abstain"] = true;
        else
          atom["bid"] = a.bid.amount();
        atom["prob"] = a.prob;
        atoms.push_back(atom);
      }
      row.push_back(atoms);
    }
    rows.push_back(row);
  }
  return rows;
}

StrategyProfile profile_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("profile", "expected n rows");
  const int n = static_cast<int>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("profile", "expected m cells per row");
  const int m = static_cast<int>(j[0].size());

  StrategyProfile profile(n, m);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != m)
      throw ParseError("profile", "row " + std::to_string(i) + " must have m cells");
    for (int k = 0; k < m; ++k) {
      std::vector<BidAtom> atoms;
      for (const json& atom : j[i][k]) {
        if (!atom.contains("prob") || !atom["prob"].is_number())
          throw ParseError("prob", "every atom needs a numeric probability");
        const double prob = atom["prob"].get<double>();
        if (prob <= 0.0 || prob > 1.0) throw ParseError("prob", "must be in (0, 1]");
        if (atom.contains("abstain") && atom["abstain"].get<bool>()) {
          atoms.push_back({Bid::abstain(), prob});
        } else {
          if (!atom.contains("bid") || !atom["bid"].is_number() ||
              atom["bid"].get<double>() < 0.0)
            throw ParseError("bid", "nonnegative number required");
          atoms.push_back({Bid::at(atom["bid"].get<double>()), prob});
        }
      }
      try {
        profile.at(i, k) = BidDistribution(std::move(atoms));
      } catch (const std::invalid_argument& e) {
        throw ParseError("profile[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                         e.what());
      }
    }
  }
  return profile;
}

namespace {

json matrix_to_json(const Eigen::MatrixXd& mat) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < mat.cols(); ++k) row.push_back(mat(i, k));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json outcome_to_json(const OutcomeSummary& outcome) {
  json j;
  j["win_prob"] = matrix_to_json(outcome.win_prob);
  j["exp_value"] = matrix_to_json(outcome.exp_value);
  j["exp_payment"] = matrix_to_json(outcome.exp_payment);
  j["per_bidder_value"] = std::vector<double>(
      outcome.per_bidder_value.data(), outcome.per_bidder_value.data() + outcome.per_bidder_value.size());
  j["per_bidder_payment"] = std::vector<double>(
      outcome.per_bidder_payment.data(),
      outcome.per_bidder_payment.data() + outcome.per_bidder_payment.size());
  j["welfare"] = outcome.welfare;
  j["optimal_welfare"] = outcome.optimal_welfare;
  j["ratio"] = outcome.ratio;
  return j;
}

json report_to_json(const EquilibriumReport& report) {
  json j;
  j["gaps"] = report.gaps;
  j["roi_slack"] = report.roi_slack;
  j["epsilon"] = report.epsilon;
  j["is_equilibrium"] = report.is_equilibrium;
  j["outcome"] = outcome_to_json(report.outcome);
  return j;
}

json ledger_to_json(const AuditLedger& ledger) {
  json j;
  j["A"] = ledger.A;
  j["B"] = ledger.B;
  j["C"] = ledger.C;
  j["D"] = ledger.D;
  j["V1"] = ledger.V1;
  j["V2"] = ledger.V2;
  j["x"] = ledger.x_value;
  j["y"] = ledger.y_value;
  j["welfare"] = ledger.welfare;
  json per_auction = json::array();
  for (const auto& row : ledger.per_auction)
    per_auction.push_back({{"auction", row.auction}, {"x", row.x}, {"local_bound", row.local_bound}});
  j["per_auction"] = per_auction;
  return j;
}

json audit_results_to_json(const std::vector<AuditResult>& results) {
  json rows = json::array();
  for (const AuditResult& r : results)
    rows.push_back({{"lemma", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"margin", r.margin},
                    {"pass", r.pass}});
  return rows;
}

json frontier_to_json(const Frontier& frontier) {
  json breakpoints = json::array();
  for (const FrontierPoint& p : frontier.breakpoints) {
    json bp;
    bp["payment"] = p.payment;
    bp["value"] = p.value;
    if (p.bid.is_abstain())
      bp["abstain"] = true;
    else
      bp["bid"] = p.bid.amount();
    breakpoints.push_back(bp);
  }
  json j;
  j["value_cap"] = frontier.value_cap;
  j["breakpoints"] = breakpoints;
  return j;
}

}  // namespace fpa
