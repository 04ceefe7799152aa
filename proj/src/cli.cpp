#include "tinopt/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "tinopt/evaluate.hpp"
#include "tinopt/io.hpp"
#include "tinopt/potential.hpp"
#include "tinopt/powerctl.hpp"
#include "tinopt/region.hpp"
#include "tinopt/tincheck.hpp"

namespace tinopt::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::istream& input;
  bool stdin_used = false;
};

std::string read_text(Context& ctx, const std::string& path) {
  if (path == "-") {
    if (ctx.stdin_used) throw UsageError("standard input can only be read once");
    ctx.stdin_used = true;
    std::ostringstream buf;
    buf << ctx.input.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

Json read_json(Context& ctx, const std::string& path) {
  const std::string text = read_text(ctx, path);
  try {
    Json doc = Json::parse(text);
    // Accept another command's full output in place of its payload.
    if (doc.is_object() && doc.contains("payload") && doc.contains("status")) doc = doc["payload"];
    return doc;
  } catch (const Json::parse_error& e) {
    throw ValidationError("", "'" + path + "' is not valid JSON: " + e.what());
  }
}

NetworkSpec read_spec(Context& ctx, const std::string& path, bool natural) {
  NetworkSpec spec = spec_from_json(read_json(ctx, path));
  return natural ? spec.with_pi(natural_pi(spec)) : spec;
}

GdofTuple read_tuple(Context& ctx, const std::string& path, const NetworkSpec& spec) {
  Json doc = read_json(ctx, path);
  if (doc.contains("tuple")) doc = doc["tuple"];
  GdofTuple tuple = tuple_from_json(doc);
  validate_tuple(spec, tuple);
  return tuple;
}

PowerAllocation read_allocation(Context& ctx, const std::string& path, const NetworkSpec& spec) {
  Json doc = read_json(ctx, path);
  if (doc.contains("allocation")) doc = doc["allocation"];
  PowerAllocation alloc = allocation_from_json(doc);
  validate_allocation(spec, alloc);
  return alloc;
}

std::string node_name(int node) { return node == source_node ? "u" : "v" + std::to_string(node); }

Json term_json(const Term& t) { return Json{{"user", t.user + 1}, {"cap", t.cap}}; }

Json inequality_json(const Inequality& ineq) {
  Json lhs = Json::array();
  for (const auto& t : ineq.lhs) lhs.push_back(term_json(t));
  Json users = Json::array(), states = Json::array();
  for (int u : ineq.source.users) users.push_back(u + 1);
  for (int s : ineq.source.states) states.push_back(s + 1);
  return Json{{"text", ineq.to_string()},
              {"lhs", std::move(lhs)},
              {"rhs", rational_to_json(ineq.rhs)},
              {"provenance",
               {{"kind", ineq.source.kind == Provenance::Kind::individual ? "individual" : "cycle"},
                {"users", std::move(users)},
                {"states", std::move(states)}}}};
}

Json membership_json(const Membership& m) {
  Json out{{"member", m.member}, {"violated", nullptr}, {"invalid", nullptr}};
  if (m.violated) out["violated"] = inequality_json(*m.violated);
  if (m.invalid) out["invalid"] = Json{{"user", m.invalid->user + 1}, {"order", m.invalid->order + 1}};
  return out;
}

Json circuit_json(const NegativeCircuit& c) {
  Json arcs = Json::array();
  for (const auto& a : c.arcs)
    arcs.push_back(Json{{"from", node_name(a.tail)},
                        {"to", node_name(a.head)},
                        {"label", a.label ? Json(*a.label + 1) : Json(nullptr)},
                        {"length", rational_to_json(a.length)}});
  return Json{{"arcs", std::move(arcs)}, {"length", rational_to_json(c.length)}};
}

Json verdict_json(const TinVerdict& v) {
  Json out{{"holds", v.holds}, {"witness", nullptr}};
  if (v.witness) {
    const auto& w = *v.witness;
    out["witness"] = Json{{"k", w.k + 1},           {"i", w.i + 1},
                          {"j", w.j + 1},           {"state_k", w.state_k + 1},
                          {"state_j", w.state_j + 1}, {"alpha_kk", rational_to_json(w.direct)},
                          {"alpha_jk", rational_to_json(w.caused)}, {"alpha_ki", rational_to_json(w.received)}};
  }
  return out;
}

Json variables_json(const NetworkSpec& spec) {
  Json out = Json::array();
  for (const auto& v : deliverable_variables(spec))
    out.push_back("d" + std::to_string(v.user + 1) + "[" + std::to_string(v.order + 1) + "]");
  return out;
}

std::vector<double> parse_powers(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double p = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(p);
    } catch (const std::exception&) {
      throw UsageError("--p expects a comma-separated list of numbers, got '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--p needs at least one value");
  return out;
}

struct Envelope {
  Json payload;
  std::vector<std::string> diagnostics;
  int exit_code = 0;
};

std::string render(const std::string& status, const Json& payload, const std::vector<std::string>& diagnostics) {
  Json doc{{"status", status}, {"payload", payload}, {"diagnostics", diagnostics}};
  return doc.dump(2) + "\n";
}

}  // namespace

CommandResult run(const std::vector<std::string>& args, std::istream& input) {
  CLI::App app{"Optimal GDoF regions of multi-state interference networks under opportunistic TIN", "tin-opt"};
  app.require_subcommand(1);

  std::string spec_path, tuple_path, alloc_path, check_path;
  bool raw = false, natural = false, brute = false, minimal = false;
  std::string powers = "1e4,1e6,1e8,1e10";
  std::string step = "0.5";
  std::size_t cap = 100'000;
  std::optional<std::uint64_t> seed;

  auto* check = app.add_subcommand("check", "Decide the TIN-optimality condition");
  check->add_option("spec", spec_path, "Network document ('-' for stdin)")->required();
  check->add_flag("--bruteforce", brute, "Also enumerate every mixed state and compare");

  auto* pi = app.add_subcommand("pi", "Natural decoding thresholds from TIN capability");
  pi->add_option("spec", spec_path, "Network document")->required();

  auto* region = app.add_subcommand("region", "GDoF region as linear inequalities");
  region->add_option("spec", spec_path, "Network document")->required();
  region->add_flag("--raw", raw, "Skip redundancy removal");
  region->add_flag("--minimal", minimal, "Also drop single-user bounds implied by multi-user ones");
  region->add_option("--check", check_path, "Tuple document to test for membership");

  auto* member = app.add_subcommand("member", "Test a GDoF tuple against the region");
  member->add_option("spec", spec_path, "Network document")->required();
  member->add_option("tuple", tuple_path, "Tuple document")->required();

  auto* feasible = app.add_subcommand("feasible", "Potential-graph feasibility with certificate");
  feasible->add_option("spec", spec_path, "Network document")->required();
  feasible->add_option("tuple", tuple_path, "Tuple document")->required();

  auto* allocate_cmd = app.add_subcommand("allocate", "Power allocation via the auxiliary best-state network");
  allocate_cmd->add_option("spec", spec_path, "Network document")->required();
  allocate_cmd->add_option("tuple", tuple_path, "Tuple document")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Achieved GDoF and finite-P rates of an allocation");
  evaluate->add_option("spec", spec_path, "Network document")->required();
  evaluate->add_option("alloc", alloc_path, "Allocation document")->required();
  evaluate->add_option("--p", powers, "Comma-separated SNR values P > 1");

  auto* oracle = app.add_subcommand("oracle", "Grid scan comparing region membership with feasibility");
  oracle->add_option("spec", spec_path, "Network document")->required();
  oracle->add_option("--step", step, "Grid step (decimal)");
  oracle->add_option("--cap", cap, "Maximum number of grid points");
  oracle->add_option("--seed", seed, "Sample grid points with this seed when the grid exceeds the cap");

  app.add_subcommand("example", "Print the built-in 3-user 2-state example network");

  for (auto* sub : {region, member, feasible, allocate_cmd, evaluate, oracle})
    sub->add_flag("--natural-pi", natural, "Replace the document's thresholds with the natural assignment");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return {0, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {2, render("error", nullptr, {e.what()}), std::string(e.what()) + "\nRun 'tin-opt --help' for usage.\n"};
  }

  Context ctx{input};
  Envelope env;
  try {
    if (app.got_subcommand("example")) {
      return {0, serialize_spec(example_network()) + "\n", ""};
    } else if (check->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, false);
      const TinVerdict verdict = check_tin_optimality(spec);
      env.payload = verdict_json(verdict);
      if (brute) {
        const TinVerdict slow = check_tin_optimality_bruteforce(spec);
        env.payload["bruteforce"] = verdict_json(slow);
        env.payload["mixed_states"] = mixed_state_count(spec, 1'000'000);
        env.payload["agree"] = slow == verdict;
        if (!(slow == verdict)) {
          env.diagnostics.push_back("fast and brute-force checks disagree");
          env.exit_code = 3;
        }
      }
    } else if (pi->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, false);
      const NetworkSpec natural_spec = spec.with_pi(natural_pi(spec));
      const auto cap_values = tin_capability(spec);
      Json capability = Json::array();
      for (int k = 0; k < spec.users(); ++k) {
        Json row = Json::array();
        for (int m = 0; m < spec.states(); ++m)
          row.push_back(rational_to_json(cap_values[static_cast<std::size_t>(k) * spec.states() + m]));
        capability.push_back(std::move(row));
      }
      Json best = Json::array();
      for (int m : best_states(spec)) best.push_back(m + 1);
      env.payload = Json{{"pi", pi_to_json(natural_spec)}, {"capability", std::move(capability)}, {"best_states", best}};
    } else if (region->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      auto ineqs = enumerate_region(spec);
      if (!raw)
        ineqs = remove_redundant(std::move(ineqs),
                                 minimal ? RedundancyPolicy::minimal : RedundancyPolicy::keep_individual);
      Json list = Json::array();
      for (const auto& ineq : ineqs) list.push_back(inequality_json(ineq));
      env.payload = Json{{"raw", raw},
                         {"policy", raw ? "none" : (minimal ? "minimal" : "keep_individual")},
                         {"variables", variables_json(spec)},
                         {"count", ineqs.size()},
                         {"inequalities", std::move(list)}};
      if (!check_path.empty()) env.payload["membership"] = membership_json(is_member(ineqs, spec, read_tuple(ctx, check_path, spec)));
    } else if (member->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      const GdofTuple tuple = read_tuple(ctx, tuple_path, spec);
      env.payload = membership_json(is_member(remove_redundant(enumerate_region(spec)), spec, tuple));
    } else if (feasible->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      const GdofTuple tuple = read_tuple(ctx, tuple_path, spec);
      const auto verdict = decide_feasibility(spec, tuple);
      env.payload = Json{{"feasible", verdict.feasible()}};
      if (verdict.feasible()) {
        env.payload["allocation"] = allocation_to_json(verdict.allocation());
        env.payload["verified"] = verify_certificate(spec, tuple, verdict.allocation());
      } else {
        env.payload["circuit"] = circuit_json(verdict.circuit());
      }
    } else if (allocate_cmd->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      const GdofTuple tuple = read_tuple(ctx, tuple_path, spec);
      Json best = Json::array();
      for (int m : best_states(spec)) best.push_back(m + 1);
      try {
        const AllocationOutcome outcome = allocate(spec, tuple);
        env.payload = Json{{"pi", pi_to_json(spec)},
                           {"auxiliary_states", best},
                           {"method", to_string(outcome.method)},
                           {"allocation", allocation_to_json(outcome.allocation)},
                           {"verified", verify_certificate(spec, tuple, outcome.allocation)}};
      } catch (const AllocationError& e) {
        env.payload = Json{{"pi", pi_to_json(spec)}, {"auxiliary_states", best}, {"circuit", circuit_json(e.circuit())}};
        env.diagnostics.push_back(e.what());
        env.exit_code = 1;
      }
    } else if (evaluate->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      const PowerAllocation alloc = read_allocation(ctx, alloc_path, spec);
      const auto p_values = parse_powers(powers);
      Json reports = Json::array();
      for (const auto& report : finite_p_report(spec, alloc, p_values)) {
        Json entries = Json::array();
        for (const auto& e : report.entries) {
          Json sinr = Json::array();
          for (const auto& s : e.sinr) sinr.push_back(Json{{"state", s.state + 1}, {"value", format_double(s.sinr)}});
          entries.push_back(Json{{"user", e.user + 1},
                                 {"order", e.order + 1},
                                 {"sinr", std::move(sinr)},
                                 {"rate", format_double(e.rate)},
                                 {"normalized", format_double(e.normalized)}});
        }
        reports.push_back(Json{{"P", format_double(report.power)}, {"entries", std::move(entries)}});
      }
      env.payload = Json{{"achieved", tuple_to_json(achieved_gdof(spec, alloc))}, {"reports", std::move(reports)}};
    } else if (oracle->parsed()) {
      const NetworkSpec spec = read_spec(ctx, spec_path, natural);
      ScanOptions options;
      try {
        options.step = parse_rational(step);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--step: ") + e.what());
      }
      options.cap = cap;
      options.seed = seed;
      const ScanResult scan = oracle_membership_scan(spec, options);
      Json disagreements = Json::array();
      for (const auto& d : scan.disagreements)
        disagreements.push_back(Json{{"tuple", tuple_to_json(d.tuple)}, {"member", d.member}, {"feasible", d.feasible}});
      env.payload = Json{{"grid_size", scan.grid_size},
                         {"scanned", scan.scanned},
                         {"members", scan.members},
                         {"disagreements", std::move(disagreements)},
                         {"certificate_failures", scan.certificate_failures}};
      if (!scan.disagreements.empty() || !scan.certificate_failures.empty()) {
        env.diagnostics.push_back(std::to_string(scan.disagreements.size()) + " disagreements, " +
                                  std::to_string(scan.certificate_failures.size()) + " certificate failures");
        env.exit_code = 3;
      }
    }
  } catch (const UsageError& e) {
    return {2, render("error", nullptr, {e.what()}), std::string(e.what()) + "\n"};
  } catch (const ValidationError& e) {
    return {1, render("error", nullptr, {e.what()}), std::string(e.what()) + "\n"};
  } catch (const InstanceTooLarge& e) {
    return {1, render("error", nullptr, {e.what()}), std::string(e.what()) + "\n"};
  }

  std::string errors;
  for (const auto& d : env.diagnostics) errors += d + "\n";
  return {env.exit_code, render(env.exit_code == 0 ? "ok" : "error", env.payload, env.diagnostics), errors};
}

}  // namespace tinopt::cli
