#include "loewner/hunt.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"

namespace loewner {

double a_floor_for(const FunctionDescriptor& f, TheoremId theorem, double lower) {
  double floor = kNoFloor;
  const Interval& d = f.domain();
  if (std::isfinite(d.lo)) floor = d.lo_closed ? d.lo : d.lo + 0.1 * (lower - d.lo);
  if (theorem_info(theorem).nonnegative_a) floor = std::max(floor, 0.0);
  return floor;
}

namespace {

SumRelation pick(Rng& rng, SumRelation a, SumRelation b) { return rng.uniform() < 0.5 ? a : b; }

SumRelation quadruple_relation(const TheoremInfo& info, const FunctionDescriptor& f,
                               const CaseRequest& req, Rng& rng) {
  const auto& relax = req.relaxation;
  if (info.sums == SumHypothesis::Conditions) {
    if (relax == "cond-i-f" || relax == "cond-ii-sum") return SumRelation::SumLeq;
    if (relax == "cond-i-sum" || relax == "cond-ii-f") return SumRelation::SumGeq;
    const bool increasing = f(req.lower) <= f(req.upper);
    return pick(rng, SumRelation::EqualSum, increasing ? SumRelation::SumLeq : SumRelation::SumGeq);
  }
  if (relax == "equal-sum") return pick(rng, SumRelation::SumLeq, SumRelation::SumGeq);
  return SumRelation::EqualSum;
}

std::size_t family_size(const CaseRequest& req) {
  if (req.map_spec && req.map_spec->family_size) return static_cast<std::size_t>(*req.map_spec->family_size);
  return req.family_size;
}

}  // namespace

SampledCase sample_case(const CaseRequest& req, const FunctionDescriptor& f, Rng& rng) {
  const TheoremInfo& info = theorem_info(req.theorem);
  const double floor = a_floor_for(f, req.theorem, req.lower);
  const bool nonneg = info.nonnegative_a;
  switch (info.shape) {
    case InstanceShape::Quadruple: {
      const SumRelation rel = quadruple_relation(info, f, req, rng);
      QuadrupleInstance q = sample_quadruple({req.dim, req.lower, req.upper, rel, nonneg, floor, {}}, rng);
      std::optional<PositiveUnitalMap> map;
      if (info.single_map) map = sample_map(req.map_spec.value_or(parse_map_spec("identity")), req.dim, rng);
      return {std::move(q), std::move(map)};
    }
    case InstanceShape::Midpoint:
      return {sample_midpoint(req.dim, req.lower, req.upper, nonneg, floor, rng), std::nullopt};
    case InstanceShape::Multi: {
      const std::size_t n = family_size(req);
      if (req.relaxation != "equal-sum") {
        return {sample_multi_instance(n, req.dim, req.lower, req.upper, nonneg, floor, rng), std::nullopt};
      }
      std::vector<QuadrupleInstance> quads;
      for (std::size_t i = 0; i < n; ++i) {
        const SumRelation rel = pick(rng, SumRelation::SumLeq, SumRelation::SumGeq);
        quads.push_back(sample_quadruple({req.dim, req.lower, req.upper, rel, nonneg, floor, {}}, rng));
      }
      return {MultiInstance{std::move(quads), sample_map_family(n, req.dim, rng), req.lower, req.upper},
              std::nullopt};
    }
    case InstanceShape::Mercer:
      return {sample_mercer_family(family_size(req), req.dim, req.lower, req.upper, rng), std::nullopt};
  }
  throw ShapeMismatch("unknown instance shape");
}

HuntResult hunt_counterexample(const HuntRequest& req, const FunctionDescriptor& f) {
  if (req.relaxation) {
    const auto allowed = applicable_relaxations(req.theorem);
    if (std::find(allowed.begin(), allowed.end(), *req.relaxation) == allowed.end()) {
      throw UnknownRelaxation("relaxation '" + *req.relaxation + "' is not known for " +
                              std::string(to_string(req.theorem)));
    }
  }
  BuildOptions strict{req.tol, {}, false};
  BuildOptions relaxed = strict;
  if (req.relaxation) relaxed.relaxations.push_back(*req.relaxation);

  HuntResult result;
  const Rng root(req.seed);
  for (int s = 0; s < req.budget; ++s) {
    ++result.samples;
    Rng rng = root.split(static_cast<std::uint64_t>(s));
    const double lower = rng.uniform(1.0, 2.0);
    const double upper = lower + rng.uniform(0.25, 1.0);
    CaseRequest creq{req.theorem, req.dim, lower, upper, req.map_spec, 3, req.relaxation};
    std::optional<SampledCase> drawn;
    try {
      drawn = sample_case(creq, f, rng);
    } catch (const ExhaustedRetries&) {
      continue;
    }
    SampledCase& sample = *drawn;
    if (req.relaxation) {
      try {
        build_chain(req.theorem, sample.instance, f, sample.map, strict);
        continue;  // satisfies the full hypothesis; not a probe of the relaxed one
      } catch (const HypothesisViolation&) {
      }
    }
    std::optional<ExpressionChain> chain;
    try {
      chain = build_chain(req.theorem, sample.instance, f, sample.map, relaxed);
    } catch (const HypothesisViolation&) {
      continue;  // also violates something that was not relaxed
    }
    ++result.relevant_samples;
    ChainReport report = evaluate_chain(*chain, req.tol);
    if (!report.pass) {
      report.seed = req.seed;
      result.counterexample = Counterexample{std::move(sample), lower, upper, std::move(report)};
      return result;
    }
  }
  return result;
}

nlohmann::json to_json(const HuntResult& result, const HuntRequest& req, const FunctionDescriptor& f) {
  nlohmann::json j = {{"theorem", to_string(req.theorem)},
                      {"function", f.id()},
                      {"relaxation", req.relaxation ? nlohmann::json(*req.relaxation) : nlohmann::json()},
                      {"budget", req.budget},
                      {"seed", req.seed},
                      {"dim", req.dim},
                      {"samples", result.samples},
                      {"relevant_samples", result.relevant_samples},
                      {"found", result.counterexample.has_value()}};
  if (result.counterexample) {
    const auto& cx = *result.counterexample;
    nlohmann::json c = {{"instance", to_json(cx.sample.instance)}, {"report", to_json(cx.report)}};
    if (cx.sample.map) c["map"] = to_json(*cx.sample.map);
    j["counterexample"] = c;
  }
  return j;
}

}  // namespace loewner
