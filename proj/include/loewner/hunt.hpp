#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "loewner/chain.hpp"

namespace loewner {

/// An instance (and Phi, for single-map theorems) drawn for one theorem.
struct SampledCase {
  AnyInstance instance;
  std::optional<PositiveUnitalMap> map;
};

struct CaseRequest {
  TheoremId theorem = TheoremId::LcQuad;
  Eigen::Index dim = 1;
  double lower = 1;  // m
  double upper = 2;  // M
  /// Single-map kind for single-map theorems ("identity" when absent).
  std::optional<MapSpec> map_spec;
  std::size_t family_size = 3;
  /// When set, the sample is aimed at violating exactly this hypothesis.
  std::optional<std::string> relaxation;
};

/// Smallest admissible lambda_min(A) for f: 0 for superquadratic chains, a
/// margin of 0.1 (m - lo) inside an open lower domain end, else unbounded.
double a_floor_for(const FunctionDescriptor& f, TheoremId theorem, double lower);

/// Draws an instance of the theorem's shape. For condition-(i)/(ii) theorems
/// the sum relation follows f's monotonicity on [m, M]; a relaxation flips
/// the relation it names.
SampledCase sample_case(const CaseRequest& request, const FunctionDescriptor& f, Rng& rng);

struct HuntRequest {
  TheoremId theorem = TheoremId::LcQuad;
  std::optional<std::string> relaxation;
  int budget = 0;
  std::uint64_t seed = 0;
  Eigen::Index dim = 1;
  std::optional<MapSpec> map_spec;
  double tol = kDefaultPsdTolerance;
};

struct Counterexample {
  SampledCase sample;
  double lower = 0, upper = 0;
  ChainReport report;
};

struct HuntResult {
  int samples = 0;           // draws made, at most the budget
  int relevant_samples = 0;  // draws that violated only the relaxed hypothesis
  std::optional<Counterexample> counterexample;
};

/// Draws up to `budget` instances with m ~ U[1, 2] and M - m ~ U[0.25, 1].
/// With a relaxation, draws that still satisfy the full hypothesis are
/// discarded; without one, every draw satisfies it. Returns the first draw
/// whose chain fails.
HuntResult hunt_counterexample(const HuntRequest& request, const FunctionDescriptor& f);

nlohmann::json to_json(const HuntResult& result, const HuntRequest& request, const FunctionDescriptor& f);

}  // namespace loewner
