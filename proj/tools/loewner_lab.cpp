// loewner-lab: verify one instance, run a campaign, or hunt for counterexamples.
//
// Exit codes: 0 every chain passed, 1 some chain failed (or a counterexample
// was found), 2 usage, configuration or input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "loewner/campaign.hpp"
#include "loewner/canonical_json.hpp"
#include "loewner/chain.hpp"
#include "loewner/errors.hpp"
#include "loewner/hunt.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw loewner::IoError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw loewner::ParseError(path + ": " + e.what());
  }
}

void write_text(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  if (!out || !(out << text << '\n')) throw loewner::IoError("cannot write " + *path);
}

struct VerifyArgs {
  std::string theorem, instance, function;
  std::optional<std::string> map;
  double tol = loewner::kDefaultPsdTolerance;
  std::uint64_t seed = 0;
  std::vector<std::string> relax;
  bool displayed_form = false;
};

int run_verify(const VerifyArgs& a) {
  const auto theorem = loewner::parse_theorem_id(a.theorem);
  const auto f = loewner::parse_function_spec(a.function);
  const nlohmann::json doc = read_json(a.instance);
  const loewner::AnyInstance instance = loewner::instance_from_json(doc);

  const auto dim = std::visit(
      [](const auto& inst) -> Eigen::Index {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, loewner::MultiInstance>) return inst.quads.front().dim();
        else if constexpr (std::is_same_v<T, loewner::MercerInstance>) return inst.b_list.front().dim();
        else return inst.a.dim();
      },
      instance);
  std::optional<loewner::PositiveUnitalMap> map;
  if (a.map) {
    map = loewner::sample_map(*a.map, dim, a.seed);
  } else if (doc.contains("map")) {
    map = loewner::map_from_json(doc.at("map"), dim);
  }

  const auto chain = loewner::build_chain(theorem, instance, f, map, {a.tol, a.relax, a.displayed_form});
  auto report = loewner::evaluate_chain(chain, a.tol);
  if (a.map) report.seed = a.seed;
  std::cout << loewner::canonical_dump(loewner::to_json(report), 2) << '\n';
  return report.pass ? kPass : kFail;
}

struct CampaignArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

int run_campaign_cmd(const CampaignArgs& a) {
  auto config = loewner::load_campaign_config(a.config);
  if (a.seed) config.seed = *a.seed;
  const auto report = loewner::run_campaign(config, a.jobs);
  if (a.out) {
    loewner::emit_report(report, *a.out);
    int pass = 0, fail = 0, skipped = 0;
    for (const auto& c : report.cells) {
      pass += c.pass;
      fail += c.fail;
      skipped += c.skipped ? 1 : 0;
    }
    std::cout << "verdict " << (report.pass ? "pass" : "fail") << ": " << report.cells.size() << " cells ("
              << skipped << " skipped), " << pass << " passing and " << fail << " failing instances\n";
  } else {
    std::cout << loewner::canonical_dump(loewner::to_json(report), 2) << '\n';
  }
  return report.pass ? kPass : kFail;
}

struct HuntArgs {
  std::string theorem, function;
  std::optional<std::string> relax, map, out;
  int budget = 1000;
  std::uint64_t seed = 0;
  int dim = 1;
  double tol = loewner::kDefaultPsdTolerance;
};

int run_hunt(const HuntArgs& a) {
  loewner::HuntRequest req;
  req.theorem = loewner::parse_theorem_id(a.theorem);
  req.relaxation = a.relax;
  req.budget = a.budget;
  req.seed = a.seed;
  req.dim = a.dim;
  req.tol = a.tol;
  if (a.map) req.map_spec = loewner::parse_map_spec(*a.map);
  const auto f = loewner::parse_function_spec(a.function);
  const auto result = loewner::hunt_counterexample(req, f);
  write_text(a.out, loewner::canonical_dump(loewner::to_json(result, req, f), 2));
  return result.counterexample ? kFail : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Loewner-order inequality chains for matrix functions",
               "loewner-lab"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Evaluate one chain on an instance file; prints the report");
  verify->add_option("--theorem", va.theorem, "Theorem id, e.g. LC-QUAD (case-insensitive)")->required();
  verify->add_option("--instance", va.instance, "Instance JSON file")->required();
  verify->add_option("--function", va.function, "exp, exp:a=<a>, recip, pow:p=<p>, const:c=<c>")->required();
  verify->add_option("--map", va.map, "Map spec for single-map theorems (overrides a \"map\" key in the file)");
  verify->add_option("--tol", va.tol, "Relative PSD tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "Seed used when --map needs sampling");
  verify->add_option("--relax", va.relax, "Hypothesis to skip (repeatable)");
  verify->add_flag("--displayed-form", va.displayed_form,
                   "SQ-MULTI-B/SQ-MERCER: use the correction term exactly as printed");

  CampaignArgs ca;
  auto* campaign = app.add_subcommand("campaign", "Run a randomized campaign from a JSON config");
  campaign->add_option("--config", ca.config, "Campaign config JSON")->required();
  campaign->add_option("--out", ca.out, "Report path (stdout when omitted)");
  campaign->add_option("--seed", ca.seed, "Overrides the config seed");
  campaign->add_option("--jobs", ca.jobs, "Worker threads; does not change the report")->check(CLI::PositiveNumber);

  HuntArgs ha;
  auto* hunt = app.add_subcommand("hunt", "Search for a failing instance with one hypothesis dropped");
  hunt->add_option("--theorem", ha.theorem, "Theorem id")->required();
  hunt->add_option("--function", ha.function, "Function spec")->required();
  hunt->add_option("--relax", ha.relax, "cond-i-f, cond-i-sum, cond-ii-f, cond-ii-sum or equal-sum");
  hunt->add_option("--budget", ha.budget, "Maximum number of samples")->check(CLI::NonNegativeNumber);
  hunt->add_option("--seed", ha.seed, "Seed");
  hunt->add_option("--dim", ha.dim, "Matrix dimension")->check(CLI::Range(1, 16));
  hunt->add_option("--map", ha.map, "Map spec for single-map theorems");
  hunt->add_option("--tol", ha.tol, "Relative PSD tolerance")->check(CLI::PositiveNumber);
  hunt->add_option("--out", ha.out, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*verify) return run_verify(va);
    if (*campaign) return run_campaign_cmd(ca);
    if (*hunt) return run_hunt(ha);
  } catch (const loewner::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kInputError;
}
