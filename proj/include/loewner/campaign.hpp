#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loewner/hunt.hpp"

namespace loewner {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Range {
  double lo = 0;
  double hi = 0;
};

/// JSON keys mirror the field names. M is drawn as m + width so that every
/// sampled pair has m < M.
struct CampaignConfig {
  std::vector<std::string> theorem_ids;
  std::vector<std::string> function_specs;
  std::vector<std::string> map_specs;
  std::vector<int> dims{1};
  Range m_range{1.0, 2.0};
  Range width_range{0.25, 1.0};
  int instances_per_cell = 1;
  double tol = kDefaultPsdTolerance;
  std::uint64_t seed = 0;
  int family_size = 3;
};

/// Throws ConfigError naming the offending field, e.g. "dims[2]".
CampaignConfig parse_campaign_config(const nlohmann::json& j);
CampaignConfig load_campaign_config(const std::filesystem::path& path);
nlohmann::json to_json(const CampaignConfig& config);

struct CellReport {
  std::string theorem;
  std::string function;
  std::string map;  // "none" for map-less theorems
  int dim = 1;
  bool skipped = false;
  std::string skip_reason;
  int pass = 0;
  int fail = 0;
  double min_link_eigenvalue = 0;
  std::vector<int> equality_links;  // per link, how many instances flagged equality
  std::vector<std::string> failing_digests;
  std::vector<std::string> errors;  // instances that could not be built count as failures
  int refinement_failures = 0;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<CellReport> cells;
  bool pass = true;
};

/// Deterministic in (config, seed) for any `jobs`: every instance draws
/// from its own stream Rng(seed).split(cell).split(instance), and results
/// are merged in index order.
CampaignReport run_campaign(const CampaignConfig& config, int jobs = 1);

nlohmann::json to_json(const CampaignReport& report);

/// Canonical JSON (sorted keys, 17 significant digits); throws IoError.
void emit_report(const CampaignReport& report, const std::filesystem::path& path);

}  // namespace loewner
