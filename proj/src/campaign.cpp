#include "loewner/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "loewner/canonical_json.hpp"
#include "loewner/errors.hpp"

namespace loewner {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) { return j.at(key); }

std::vector<std::string> string_list(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(key, "missing");
    return {};
  }
  const json& v = field(j, key);
  if (!v.is_array()) throw ConfigError(key, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      throw ConfigError(std::string(key) + "[" + std::to_string(i) + "]", "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  if (required && out.empty()) throw ConfigError(key, "must not be empty");
  return out;
}

double real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

long long integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<long long>();
}

Range range(const json& j, const char* key, Range fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != 2) throw ConfigError(key, "expected [lo, hi]");
  Range r{real(v[0], std::string(key) + "[0]"), real(v[1], std::string(key) + "[1]")};
  if (!(r.lo <= r.hi)) throw ConfigError(key, "needs lo <= hi");
  return r;
}

}  // namespace

CampaignConfig parse_campaign_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  static const std::vector<std::string> known = {
      "theorem_ids", "function_specs", "map_specs", "dims", "m_range", "width_range",
      "instances_per_cell", "tol", "seed", "family_size"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      throw ConfigError(it.key(), "unknown field");
    }
  }

  CampaignConfig c;
  c.theorem_ids = string_list(j, "theorem_ids", true);
  for (std::size_t i = 0; i < c.theorem_ids.size(); ++i) {
    try {
      c.theorem_ids[i] = std::string(to_string(parse_theorem_id(c.theorem_ids[i])));
    } catch (const UnknownKind& e) {
      throw ConfigError("theorem_ids[" + std::to_string(i) + "]", e.what());
    }
  }
  c.function_specs = string_list(j, "function_specs", true);
  for (std::size_t i = 0; i < c.function_specs.size(); ++i) {
    try {
      parse_function_spec(c.function_specs[i]);
    } catch (const Error& e) {
      throw ConfigError("function_specs[" + std::to_string(i) + "]", e.what());
    }
  }
  c.map_specs = string_list(j, "map_specs", false);
  for (std::size_t i = 0; i < c.map_specs.size(); ++i) {
    try {
      parse_map_spec(c.map_specs[i]);
    } catch (const Error& e) {
      throw ConfigError("map_specs[" + std::to_string(i) + "]", e.what());
    }
  }
  if (j.contains("dims")) {
    const json& v = j.at("dims");
    if (!v.is_array() || v.empty()) throw ConfigError("dims", "expected a non-empty array");
    c.dims.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string path = "dims[" + std::to_string(i) + "]";
      const auto d = integer(v[i], path);
      if (d < 1) throw ConfigError(path, "dimension must be >= 1");
      c.dims.push_back(static_cast<int>(d));
    }
  }
  c.m_range = range(j, "m_range", c.m_range);
  c.width_range = range(j, "width_range", c.width_range);
  if (!(c.width_range.lo > 0)) throw ConfigError("width_range", "widths must be > 0 so that m < M");
  if (j.contains("instances_per_cell")) {
    const auto n = integer(j.at("instances_per_cell"), "instances_per_cell");
    if (n < 1) throw ConfigError("instances_per_cell", "must be >= 1");
    c.instances_per_cell = static_cast<int>(n);
  }
  if (j.contains("tol")) {
    c.tol = real(j.at("tol"), "tol");
    if (!(c.tol > 0)) throw ConfigError("tol", "must be > 0");
  }
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("family_size")) {
    const auto n = integer(j.at("family_size"), "family_size");
    if (n < 1) throw ConfigError("family_size", "must be >= 1");
    c.family_size = static_cast<int>(n);
  }
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  return parse_campaign_config(j);
}

json to_json(const CampaignConfig& c) {
  return {{"theorem_ids", c.theorem_ids},
          {"function_specs", c.function_specs},
          {"map_specs", c.map_specs},
          {"dims", c.dims},
          {"m_range", {c.m_range.lo, c.m_range.hi}},
          {"width_range", {c.width_range.lo, c.width_range.hi}},
          {"instances_per_cell", c.instances_per_cell},
          {"tol", c.tol},
          {"seed", c.seed},
          {"family_size", c.family_size}};
}

// --- running -----------------------------------------------------------------

namespace {

struct Cell {
  TheoremId theorem;
  std::size_t function;  // index into the parsed functions
  std::string map;
  int dim;
  std::string skip_reason;
};

struct Outcome {
  bool pass = false;
  double min_link_eigenvalue = std::numeric_limits<double>::infinity();
  std::vector<bool> equality;
  std::string digest;
  std::string error;
  bool refinement_ok = true;
};

std::string skip_reason(TheoremId id, const FunctionDescriptor& f) {
  if (!function_class_matches(id, f)) return "function class mismatch";
  const auto p = f.params().find("p");
  if (id == TheoremId::LcPow && (p == f.params().end() || p->second > 0)) return "function parameter mismatch";
  if (id == TheoremId::SqPow && (p == f.params().end() || p->second < 2)) return "function parameter mismatch";
  return {};
}

std::vector<std::string> maps_for(const TheoremInfo& info, const CampaignConfig& c) {
  std::vector<std::string> out;
  const bool family = info.shape == InstanceShape::Multi || info.shape == InstanceShape::Mercer;
  if (!info.single_map && !family) return {"none"};
  for (const auto& spec : c.map_specs) {
    if (parse_map_spec(spec).is_family() == family) out.push_back(spec);
  }
  if (out.empty()) out.push_back(family ? "family:n=" + std::to_string(c.family_size) : "identity");
  return out;
}

Outcome run_instance(const Cell& cell, const FunctionDescriptor& f, const CampaignConfig& c,
                     std::size_t cell_index, int instance) {
  Outcome out;
  Rng rng = Rng(c.seed).split(cell_index).split(static_cast<std::uint64_t>(instance));
  const double lower = rng.uniform(c.m_range.lo, c.m_range.hi);
  const double upper = lower + rng.uniform(c.width_range.lo, c.width_range.hi);
  CaseRequest req{cell.theorem, cell.dim, lower, upper, std::nullopt,
                  static_cast<std::size_t>(c.family_size), std::nullopt};
  if (cell.map != "none") req.map_spec = parse_map_spec(cell.map);
  try {
    const SampledCase sample = sample_case(req, f, rng);
    const ExpressionChain chain = build_chain(cell.theorem, sample.instance, f, sample.map, {c.tol, {}, false});
    const ChainReport report = evaluate_chain(chain, c.tol);
    out.pass = report.pass;
    out.min_link_eigenvalue = report.min_link_eigenvalue();
    for (const auto& l : report.links) out.equality.push_back(l.equality);
    out.digest = report.instance_digest;
    out.refinement_ok = check_refinement(chain, c.tol).pass();
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& config, int jobs) {
  std::vector<FunctionDescriptor> functions;
  for (const auto& spec : config.function_specs) functions.push_back(parse_function_spec(spec));

  std::vector<Cell> cells;
  for (const auto& tid : config.theorem_ids) {
    const TheoremId id = parse_theorem_id(tid);
    for (std::size_t fi = 0; fi < functions.size(); ++fi) {
      for (const auto& map : maps_for(theorem_info(id), config)) {
        for (int dim : config.dims) cells.push_back({id, fi, map, dim, skip_reason(id, functions[fi])});
      }
    }
  }

  struct Task {
    std::size_t cell;
    int instance;
  };
  std::vector<Task> tasks;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    if (!cells[ci].skip_reason.empty()) continue;
    for (int i = 0; i < config.instances_per_cell; ++i) tasks.push_back({ci, i});
  }

  std::vector<Outcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Cell& cell = cells[tasks[t].cell];
      outcomes[t] = run_instance(cell, functions[cell.function], config, tasks[t].cell, tasks[t].instance);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  CampaignReport report;
  report.config = config;
  std::size_t t = 0;
  for (const auto& cell : cells) {
    CellReport r;
    r.theorem = std::string(to_string(cell.theorem));
    r.function = config.function_specs[cell.function];
    r.map = cell.map;
    r.dim = cell.dim;
    r.min_link_eigenvalue = std::numeric_limits<double>::infinity();
    if (!cell.skip_reason.empty()) {
      r.skipped = true;
      r.skip_reason = cell.skip_reason;
      report.cells.push_back(std::move(r));
      continue;
    }
    r.equality_links.assign(static_cast<std::size_t>(theorem_info(cell.theorem).term_count - 1), 0);
    for (int i = 0; i < config.instances_per_cell; ++i, ++t) {
      const Outcome& o = outcomes[t];
      if (!o.error.empty()) {
        ++r.fail;
        r.errors.push_back("instance " + std::to_string(i) + ": " + o.error);
        continue;
      }
      o.pass ? ++r.pass : ++r.fail;
      if (!o.pass) r.failing_digests.push_back(o.digest);
      if (!o.refinement_ok) ++r.refinement_failures;
      r.min_link_eigenvalue = std::min(r.min_link_eigenvalue, o.min_link_eigenvalue);
      for (std::size_t k = 0; k < o.equality.size() && k < r.equality_links.size(); ++k) {
        r.equality_links[k] += o.equality[k] ? 1 : 0;
      }
    }
    if (r.fail > 0) report.pass = false;
    report.cells.push_back(std::move(r));
  }
  return report;
}

json to_json(const CampaignReport& report) {
  json cells = json::array();
  for (const auto& c : report.cells) {
    json j = {{"theorem", c.theorem}, {"function", c.function}, {"map", c.map},
              {"dim", c.dim},         {"skipped", c.skipped}};
    if (c.skipped) {
      j["skip_reason"] = c.skip_reason;
    } else {
      j["pass"] = c.pass;
      j["fail"] = c.fail;
      j["min_link_eigenvalue"] = std::isfinite(c.min_link_eigenvalue) ? json(c.min_link_eigenvalue) : json();
      j["equality_links"] = c.equality_links;
      j["failing_digests"] = c.failing_digests;
      j["errors"] = c.errors;
      j["refinement_failures"] = c.refinement_failures;
    }
    cells.push_back(std::move(j));
  }
  return {{"config", to_json(report.config)},
          {"cells", cells},
          {"verdict", report.pass ? "pass" : "fail"},
          {"seed", report.config.seed},
          {"version", kToolVersion}};
}

void emit_report(const CampaignReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report to " + path.string());
  out << canonical_dump(to_json(report), 2) << '\n';
  if (!out) throw IoError("failed writing report to " + path.string());
}

}  // namespace loewner
