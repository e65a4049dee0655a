#include "fpa/audits.hpp"
#include "fpa/bounds.hpp"
#include "fpa/core.hpp"
#include "fpa/equilibrium.hpp"
#include "fpa/instances.hpp"
#include "fpa/io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPropertyFailed = 2;  // computed fine, but the checked property is false

json read_input(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(path);
    if (!in) throw fpa::ParseError("input", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw fpa::ParseError("input", e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct Problem {
  fpa::AuctionInstance instance;
  fpa::StrategyProfile profile;
  bool has_profile = false;
};

Problem read_problem(const std::string& path) {
  const json j = read_input(path);
  Problem p;
  if (!j.contains("instance")) throw fpa::ParseError("instance", "missing");
  p.instance = fpa::instance_from_json(j["instance"]);
  if (j.contains("profile")) {
    p.profile = fpa::profile_from_json(j["profile"]);
    if (p.profile.num_bidders() != p.instance.num_bidders ||
        p.profile.num_auctions() != p.instance.num_auctions)
      throw fpa::ParseError("profile", "shape does not match the instance");
    p.has_profile = true;
  }
  return p;
}

int run_bounds(double gamma, const std::string& output) {
  json j;
  const fpa::BoundResult mixed = gamma == 0.0 ? fpa::mixed_poa_bound() : fpa::ml_poa_bound(gamma);
  j["gamma"] = gamma;
  j["mixed_bound"] = mixed.bound_value;
  j["minimizer_t"] = mixed.minimizer_t;
  j["full_autobidding_bound"] = fpa::full_autobidding_ml_bound(gamma);
  write_output(output, j.dump(2));
  return kExitOk;
}

int run_sweep(double step, const std::string& output) {
  write_output(output, fpa::gamma_sweep_csv(fpa::gamma_sweep(step)));
  return kExitOk;
}

int run_make_instance(const std::string& which, double eps, double t, int grid,
                      const std::string& output) {
  fpa::ParamHardInstance hard;
  json params;
  if (which == "thm1") {
    hard = fpa::thm1_instance(eps);
    params["eps"] = eps;
  } else {
    hard = fpa::lemma_lb_instance(t, grid);
    params["t"] = t;
    params["grid"] = grid;
  }
  json j;
  j["instance"] = fpa::instance_to_json(hard.instance);
  j["profile"] = fpa::profile_to_json(hard.profile);
  j["predicted_ratio"] = hard.predicted_ratio;
  j["params"] = params;
  write_output(output, j.dump(2));
  return kExitOk;
}

int run_verify(const std::string& input, double epsilon, int grid_size,
               const std::string& output) {
  const Problem p = read_problem(input);
  if (!p.has_profile) throw fpa::ParseError("profile", "missing");
  fpa::BestResponseOptions opts;
  opts.grid_points = grid_size;
  const fpa::EquilibriumReport report = fpa::verify_equilibrium(p.instance, p.profile, epsilon, opts);
  write_output(output, fpa::report_to_json(report).dump(2));
  return report.is_equilibrium ? kExitOk : kExitPropertyFailed;
}

int run_best_response(const std::string& input, int bidder, int grid_size,
                      const std::string& output) {
  const Problem p = read_problem(input);
  if (!p.has_profile) throw fpa::ParseError("profile", "missing");
  if (bidder < 0 || bidder >= p.instance.num_bidders)
    throw fpa::ParseError("bidder", "out of range");
  fpa::BestResponseOptions opts;
  opts.grid_points = grid_size;

  fpa::StrategyProfile responded = p.profile;
  json j;
  if (p.instance.kinds[bidder] == fpa::BidderKind::UtilityMax) {
    const auto br = fpa::best_response_utility(p.instance, p.profile, bidder, opts);
    for (int k = 0; k < p.instance.num_auctions; ++k) responded.at(bidder, k) = br.row[k];
    j["objective"] = br.utility;
    j["kind"] = "utility";
  } else {
    const auto br = fpa::best_response_value(p.instance, p.profile, bidder, opts);
    for (int k = 0; k < p.instance.num_auctions; ++k) responded.at(bidder, k) = br.row[k];
    j["objective"] = br.value;
    j["payment"] = br.payment;
    j["kind"] = "value";
  }
  j["bidder"] = bidder;
  j["profile"] = fpa::profile_to_json(responded);
  write_output(output, j.dump(2));
  return kExitOk;
}

int run_dynamics(const std::string& input, int max_iters, double epsilon, int grid_size,
                 const std::string& output) {
  const Problem p = read_problem(input);
  fpa::BestResponseOptions opts;
  opts.grid_points = grid_size;
  const fpa::StrategyProfile start =
      p.has_profile ? p.profile : fpa::default_initial_profile(p.instance, opts);
  const fpa::DynamicsResult result =
      fpa::best_response_dynamics(p.instance, start, max_iters, epsilon, opts);
  json j;
  j["converged"] = result.converged;
  j["iterations"] = result.iterations;
  j["profile"] = fpa::profile_to_json(result.profile);
  j["outcome"] = fpa::outcome_to_json(fpa::evaluate_profile(p.instance, result.profile));
  write_output(output, j.dump(2));
  return kExitOk;
}

int run_audit(const std::string& input, double tol, const std::string& output) {
  const Problem p = read_problem(input);
  if (!p.has_profile) throw fpa::ParseError("profile", "missing");
  const fpa::OutcomeSummary outcome = fpa::evaluate_profile(p.instance, p.profile);
  const auto results = fpa::run_all_audits(p.instance, outcome, tol);

  std::string table = "lemma             lhs           rhs           margin        pass\n";
  char line[160];
  bool all_pass = true;
  for (const fpa::AuditResult& r : results) {
    std::snprintf(line, sizeof(line), "%-16s %13.6g %13.6g %13.6g  %s\n", r.name.c_str(), r.lhs,
                  r.rhs, r.margin, r.pass ? "pass" : "FAIL");
    table += line;
    all_pass = all_pass && r.pass;
  }
  std::cout << table;
  if (!output.empty() && output != "-")
    write_output(output, fpa::audit_results_to_json(results).dump(2));
  return all_pass ? kExitOk : kExitPropertyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-price auction analysis: exact evaluation, best responses, "
               "equilibrium verification, and price-of-anarchy bounds"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "-";
  double epsilon = 1e-6;
  int grid_size = 200;
  double gamma = 0.0;
  double step = 0.01;
  double eps_param = 0.01;
  double t_param = 0.2;
  int grid_n = 2000;
  int bidder = 0;
  int max_iters = 100;
  std::string subtype;

  auto* bounds = app.add_subcommand("bounds", "Evaluate the closed-form PoA bounds");
  bounds->add_option("--gamma", gamma, "Reserve accuracy in [0, 1]")->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--output", output, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep-gamma", "CSV sweep of the bounds over gamma");
  sweep->add_option("--step", step, "Gamma step in (0, 0.5]")->check(CLI::Range(1e-9, 0.5));
  sweep->add_option("--output", output, "Output path (default stdout)");

  auto* make = app.add_subcommand("make-instance", "Emit a hard instance with its profile");
  make->add_option("type", subtype, "thm1 or lem-lb")
      ->required()
      ->check(CLI::IsMember({"thm1", "lem-lb"}));
  make->add_option("--eps", eps_param, "thm1 epsilon in (0, 1)");
  make->add_option("--t", t_param, "lem-lb parameter t in (0, 1)");
  make->add_option("--grid", grid_n, "lem-lb discretization size N");
  make->add_option("--output", output, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a profile for epsilon-equilibrium");
  verify->add_option("--input", input, "Instance + profile JSON (default stdin)");
  verify->add_option("--epsilon", epsilon, "Gap tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--grid-size", grid_size, "Candidate bids per auction");
  verify->add_option("--output", output, "Output path (default stdout)");

  auto* best = app.add_subcommand("best-response", "Best response for one bidder");
  best->add_option("--input", input, "Instance + profile JSON (default stdin)");
  best->add_option("--bidder", bidder, "Bidder index")->required();
  best->add_option("--grid-size", grid_size, "Candidate bids per auction");
  best->add_option("--output", output, "Output path (default stdout)");

  auto* dynamics = app.add_subcommand("dynamics", "Round-robin best-response dynamics");
  dynamics->add_option("--input", input, "Instance (+ optional starting profile) JSON");
  dynamics->add_option("--max-iters", max_iters, "Sweep limit")->check(CLI::PositiveNumber);
  dynamics->add_option("--epsilon", epsilon, "Gap tolerance")->check(CLI::PositiveNumber);
  dynamics->add_option("--grid-size", grid_size, "Candidate bids per auction");
  dynamics->add_option("--output", output, "Output path (default stdout)");

  auto* audit = app.add_subcommand("audit", "Run the lemma audits on a profile");
  audit->add_option("--input", input, "Instance + profile JSON (default stdin)");
  audit->add_option("--epsilon", epsilon, "Audit tolerance")->check(CLI::PositiveNumber);
  audit->add_option("--output", output, "Optional JSON output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) return run_bounds(gamma, output);
    if (sweep->parsed()) return run_sweep(step, output);
    if (make->parsed()) return run_make_instance(subtype, eps_param, t_param, grid_n, output);
    if (verify->parsed()) return run_verify(input, epsilon, grid_size, output);
    if (best->parsed()) return run_best_response(input, bidder, grid_size, output);
    if (dynamics->parsed()) return run_dynamics(input, max_iters, epsilon, grid_size, output);
    if (audit->parsed()) return run_audit(input, epsilon, output);
  } catch (const fpa::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
