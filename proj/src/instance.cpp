#include "loewner/instance.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/functional_calculus.hpp"
#include "loewner/loewner_order.hpp"
#include "loewner/matrix_io.hpp"

namespace loewner {

std::string_view to_string(SumRelation r) {
  switch (r) {
    case SumRelation::EqualSum: return "equal-sum";
    case SumRelation::SumLeq: return "sum-leq";
    case SumRelation::SumGeq: return "sum-geq";
  }
  return "equal-sum";
}

SumRelation parse_sum_relation(std::string_view s) {
  if (s == "equal-sum") return SumRelation::EqualSum;
  if (s == "sum-leq") return SumRelation::SumLeq;
  if (s == "sum-geq") return SumRelation::SumGeq;
  throw ParseError("unknown sum relation '" + std::string(s) + "'");
}

QuadrupleInstance MidpointInstance::as_quadruple() const {
  const Hermitian x = midpoint();
  return {a, x, x, d, lower, upper, SumRelation::EqualSum, require_nonnegative_a};
}

std::vector<Hermitian> MercerInstance::reflected() const {
  std::vector<Hermitian> out;
  out.reserve(b_list.size());
  for (const auto& b : b_list) out.push_back((-b).shifted(upper + lower));
  return out;
}

MultiInstance MercerInstance::as_multi() const {
  MultiInstance multi{{}, family, lower, upper};
  const auto c_list = reflected();
  for (std::size_t i = 0; i < b_list.size(); ++i) {
    const auto n = b_list[i].dim();
    multi.quads.push_back({Hermitian::scalar(n, lower), b_list[i], c_list[i],
                           Hermitian::scalar(n, upper), lower, upper, SumRelation::EqualSum,
                           lower >= 0});
  }
  return multi;
}

// --- sampling ----------------------------------------------------------------

namespace {

void require_interval(double lower, double upper) {
  if (!(lower < upper)) throw DegenerateInterval("need m < M, got m = " + std::to_string(lower) +
                                                 ", M = " + std::to_string(upper));
}

double effective_floor(bool nonneg_a, double a_floor) {
  return nonneg_a ? std::max(0.0, a_floor) : a_floor;
}

Hermitian psd_with_spectrum_in(Eigen::Index n, double lo, double hi, Rng& rng) {
  std::vector<double> values(n);
  for (auto& v : values) v = rng.uniform(lo, hi);
  return random_with_spectrum(values, rng);
}

// A = mI - (M+m - S)_+ - Q with lambda_min(A) >= floor; nullopt when the
// floor cannot be met for this S.
std::optional<Hermitian> lower_operator_for_sum(const Hermitian& s, double lower, double upper,
                                                double floor, double q_scale, Rng& rng) {
  const Hermitian p0 = positive_part((-s).shifted(upper + lower));
  const Hermitian a0 = (-p0).shifted(lower);
  double cap = q_scale;
  if (std::isfinite(floor)) {
    const double room = spectral_bounds(a0).first - floor;
    if (room < 0) return std::nullopt;
    cap = std::min(cap, room);
  }
  return a0 - random_psd(s.dim(), cap, rng);
}

}  // namespace

Hermitian sample_sandwiched_matrix(Eigen::Index dim, double lo, double hi, Rng& rng) {
  if (lo > hi) throw DegenerateInterval("sample_sandwiched_matrix needs lo <= hi");
  if (lo == hi) return Hermitian::scalar(dim, lo);
  std::vector<double> values(dim);
  for (auto& v : values) v = rng.uniform(lo, hi);
  Hermitian x = random_with_spectrum(values, rng);
  const double eps = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  const auto [smin, smax] = spectral_bounds(x);
  if (smin < lo - eps || smax > hi + eps) throw Error("sandwiched sample left [lo, hi]");
  return x;
}

QuadrupleInstance sample_quadruple(const QuadrupleRequest& req, Rng& rng) {
  require_interval(req.lower, req.upper);
  const double floor = effective_floor(req.nonneg_a, req.a_floor);
  if (floor > req.lower) throw ExhaustedRetries("floor on A exceeds m; no instance exists");
  const double width = req.upper - req.lower;
  const double q_scale = req.q_scale.value_or(0.25 * width);
  const Eigen::Index n = req.dim;
  const double a_room = std::isfinite(floor) ? req.lower - floor : 2.5 * width;

  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    Hermitian b = sample_sandwiched_matrix(n, req.lower, req.upper, rng);
    Hermitian c = sample_sandwiched_matrix(n, req.lower, req.upper, rng);
    std::optional<QuadrupleInstance> inst;
    switch (req.relation) {
      case SumRelation::EqualSum: {
        const Hermitian s = b + c;
        auto a = lower_operator_for_sum(s, req.lower, req.upper, floor, q_scale, rng);
        if (!a) continue;
        inst = QuadrupleInstance{*a, b, c, s - *a, req.lower, req.upper, req.relation, req.nonneg_a};
        break;
      }
      case SumRelation::SumLeq: {
        // Small slack under m, large slack over M.
        const Hermitian a =
            (-psd_with_spectrum_in(n, 0.0, std::min(q_scale, a_room), rng)).shifted(req.lower);
        const double k = rng.uniform(0.0, 1.5);
        const Hermitian d = psd_with_spectrum_in(n, k * width, (k + 1) * width, rng).shifted(req.upper);
        inst = QuadrupleInstance{a, b, c, d, req.lower, req.upper, req.relation, req.nonneg_a};
        break;
      }
      case SumRelation::SumGeq: {
        const double k = rng.uniform(0.0, 1.5);
        const double hi = std::min((k + 1) * width, a_room);
        const double lo = std::min(k * width, hi);
        const Hermitian a = (-psd_with_spectrum_in(n, lo, hi, rng)).shifted(req.lower);
        const Hermitian d = psd_with_spectrum_in(n, 0.0, rng.uniform(0.0, 0.5) * width, rng).shifted(req.upper);
        inst = QuadrupleInstance{a, b, c, d, req.lower, req.upper, req.relation, req.nonneg_a};
        break;
      }
    }
    if (std::isfinite(floor) && spectral_bounds(inst->a).first < floor) continue;
    if (validate_instance(*inst).empty()) return *inst;
  }
  throw ExhaustedRetries("no valid " + std::string(to_string(req.relation)) + " quadruple after " +
                         std::to_string(kMaxSampleAttempts) + " attempts");
}

MidpointInstance sample_midpoint(Eigen::Index dim, double lower, double upper, bool nonneg_a,
                                 double a_floor, Rng& rng) {
  require_interval(lower, upper);
  const double floor = effective_floor(nonneg_a, a_floor);
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    const Hermitian x = sample_sandwiched_matrix(dim, lower, upper, rng);
    const Hermitian s = 2.0 * x;
    auto a = lower_operator_for_sum(s, lower, upper, floor, 0.25 * (upper - lower), rng);
    if (!a) continue;
    MidpointInstance inst{*a, s - *a, lower, upper, nonneg_a};
    if (validate_instance(inst).empty()) return inst;
  }
  throw ExhaustedRetries("no valid midpoint instance after " + std::to_string(kMaxSampleAttempts) +
                         " attempts");
}

MultiInstance sample_multi_instance(std::size_t n, Eigen::Index dim, double lower, double upper,
                                    bool nonneg_a, double a_floor, Rng& rng) {
  require_interval(lower, upper);
  std::vector<QuadrupleInstance> quads;
  for (std::size_t i = 0; i < n; ++i) {
    quads.push_back(sample_quadruple({dim, lower, upper, SumRelation::EqualSum, nonneg_a, a_floor, {}}, rng));
  }
  return {std::move(quads), sample_map_family(n, dim, rng), lower, upper};
}

MercerInstance sample_mercer_family(std::size_t n, Eigen::Index dim, double lower, double upper,
                                    Rng& rng) {
  require_interval(lower, upper);
  if (n < 1) throw Error("Mercer family needs n >= 1");
  std::vector<Hermitian> b_list;
  for (std::size_t i = 0; i < n; ++i) b_list.push_back(sample_sandwiched_matrix(dim, lower, upper, rng));
  return {std::move(b_list), lower, upper, sample_map_family(n, dim, rng)};
}

// --- validation --------------------------------------------------------------

namespace {

struct Checker {
  double lower, upper, eps, tol;
  std::vector<Violation> out;

  void interval() {
    if (!(lower < upper)) out.push_back({"m < M", upper - lower});
  }
  void at_most(const Hermitian& x, double bound, const std::string& name, const std::string& bound_name) {
    const double hi = spectral_bounds(x).second;
    if (hi > bound + eps) out.push_back({"lambda_max(" + name + ") > " + bound_name, hi});
  }
  void at_least(const Hermitian& x, double bound, const std::string& name, const std::string& bound_name) {
    const double lo = spectral_bounds(x).first;
    if (lo < bound - eps) out.push_back({"lambda_min(" + name + ") < " + bound_name, lo});
  }
  void inside(const Hermitian& x, const std::string& name) {
    at_least(x, lower, name, "m");
    at_most(x, upper, name, "M");
  }
  void quadruple(const QuadrupleInstance& q, const std::string& suffix, bool check_relation = true) {
    at_most(q.a, lower, "A" + suffix, "m");
    inside(q.b, "B" + suffix);
    inside(q.c, "C" + suffix);
    at_least(q.d, upper, "D" + suffix, "M");
    if (q.require_nonnegative_a) at_least(q.a, 0.0, "A" + suffix, "0");
    if (!check_relation) return;
    const Hermitian ad = q.a + q.d;
    const Hermitian bc = q.b + q.c;
    const auto v = loewner_leq(bc, ad, tol);
    switch (q.relation) {
      case SumRelation::EqualSum:
        if (v.relation != LoewnerRelation::Equal) {
          out.push_back({"A" + suffix + " + D" + suffix + " != B" + suffix + " + C" + suffix,
                         frobenius_distance(ad, bc)});
        }
        break;
      case SumRelation::SumLeq:
        if (!v.leq()) out.push_back({"not B + C <= A + D", v.min_eigenvalue_of_difference});
        break;
      case SumRelation::SumGeq:
        if (!v.geq()) out.push_back({"not A + D <= B + C", -v.max_eigenvalue_of_difference});
        break;
    }
  }
  void family(const MapFamily& f, std::size_t n) {
    if (f.size() != n) out.push_back({"family size != operator count", double(f.size())});
    const double dev = family_unital_deviation(f);
    if (dev > std::max(tol, kMapTolerance)) out.push_back({"sum_i Phi_i(I) != I", dev});
  }
};

Checker make_checker(double lower, double upper, double tol) {
  return {lower, upper, tol * std::max(1.0, std::abs(lower) + std::abs(upper)), tol, {}};
}

}  // namespace

std::vector<Violation> validate_instance(const QuadrupleInstance& inst, double tol) {
  auto chk = make_checker(inst.lower, inst.upper, tol);
  chk.interval();
  chk.quadruple(inst, "");
  return chk.out;
}

std::vector<Violation> validate_spectra(const QuadrupleInstance& inst, double tol) {
  auto chk = make_checker(inst.lower, inst.upper, tol);
  chk.interval();
  chk.quadruple(inst, "", false);
  return chk.out;
}

std::vector<Violation> validate_instance(const MidpointInstance& inst, double tol) {
  auto chk = make_checker(inst.lower, inst.upper, tol);
  chk.interval();
  chk.at_most(inst.a, inst.lower, "A", "m");
  chk.inside(inst.midpoint(), "(A+D)/2");
  chk.at_least(inst.d, inst.upper, "D", "M");
  if (inst.require_nonnegative_a) chk.at_least(inst.a, 0.0, "A", "0");
  return chk.out;
}

std::vector<Violation> validate_instance(const MultiInstance& inst, double tol) {
  auto chk = make_checker(inst.lower, inst.upper, tol);
  chk.interval();
  for (std::size_t i = 0; i < inst.quads.size(); ++i) {
    const auto& q = inst.quads[i];
    if (q.lower != inst.lower || q.upper != inst.upper) chk.out.push_back({"quadruple bounds differ", double(i)});
    if (q.relation != SumRelation::EqualSum) chk.out.push_back({"quadruple is not equal-sum", double(i)});
    chk.quadruple(q, "_" + std::to_string(i + 1));
  }
  chk.family(inst.family, inst.quads.size());
  return chk.out;
}

std::vector<Violation> validate_instance(const MercerInstance& inst, double tol) {
  auto chk = make_checker(inst.lower, inst.upper, tol);
  chk.interval();
  const auto c_list = inst.reflected();
  for (std::size_t i = 0; i < inst.b_list.size(); ++i) {
    chk.inside(inst.b_list[i], "B_" + std::to_string(i + 1));
    chk.inside(c_list[i], "C_" + std::to_string(i + 1));
  }
  chk.family(inst.family, inst.b_list.size());
  return chk.out;
}

std::vector<Violation> validate_instance(const AnyInstance& inst, double tol) {
  return std::visit([tol](const auto& i) { return validate_instance(i, tol); }, inst);
}

// --- files -------------------------------------------------------------------

nlohmann::json to_json(const QuadrupleInstance& inst) {
  return {{"A", to_json(inst.a)},          {"B", to_json(inst.b)},
          {"C", to_json(inst.c)},          {"D", to_json(inst.d)},
          {"m", inst.lower},               {"M", inst.upper},
          {"relation", to_string(inst.relation)}, {"nonneg_A", inst.require_nonnegative_a}};
}

nlohmann::json to_json(const MidpointInstance& inst) {
  return {{"A", to_json(inst.a)}, {"D", to_json(inst.d)}, {"m", inst.lower}, {"M", inst.upper},
          {"nonneg_A", inst.require_nonnegative_a}};
}

nlohmann::json to_json(const MultiInstance& inst) {
  nlohmann::json quads = nlohmann::json::array();
  for (const auto& q : inst.quads) {
    quads.push_back({{"A", to_json(q.a)}, {"B", to_json(q.b)}, {"C", to_json(q.c)}, {"D", to_json(q.d)}});
  }
  const bool nonneg = !inst.quads.empty() && inst.quads.front().require_nonnegative_a;
  return {{"quads", quads}, {"m", inst.lower}, {"M", inst.upper}, {"family", to_json(inst.family)},
          {"nonneg_A", nonneg}};
}

nlohmann::json to_json(const MercerInstance& inst) {
  nlohmann::json b = nlohmann::json::array();
  for (const auto& x : inst.b_list) b.push_back(to_json(x));
  return {{"B_list", b}, {"m", inst.lower}, {"M", inst.upper}, {"family", to_json(inst.family)}};
}

nlohmann::json to_json(const AnyInstance& inst) {
  return std::visit([](const auto& i) { return to_json(i); }, inst);
}

namespace {

double number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("instance needs numeric '") + key + "'");
  }
  return j.at(key).get<double>();
}

bool flag(const nlohmann::json& j, const char* key) {
  return j.contains(key) && j.at(key).get<bool>();
}

}  // namespace

AnyInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("instance file must hold a JSON object");
  const double lower = number(j, "m");
  const double upper = number(j, "M");
  if (j.contains("B_list")) {
    std::vector<Hermitian> b;
    for (const auto& x : j.at("B_list")) b.push_back(hermitian_from_json(x));
    if (b.empty()) throw ParseError("'B_list' is empty");
    return MercerInstance{b, lower, upper, family_from_json(j.at("family"), b.front().dim())};
  }
  if (j.contains("quads")) {
    std::vector<QuadrupleInstance> quads;
    const bool nonneg = flag(j, "nonneg_A");
    for (const auto& q : j.at("quads")) {
      quads.push_back({hermitian_from_json(q.at("A")), hermitian_from_json(q.at("B")),
                       hermitian_from_json(q.at("C")), hermitian_from_json(q.at("D")), lower, upper,
                       SumRelation::EqualSum, nonneg});
    }
    if (quads.empty()) throw ParseError("'quads' is empty");
    return MultiInstance{quads, family_from_json(j.at("family"), quads.front().dim()), lower, upper};
  }
  if (j.contains("B")) {
    const auto relation = j.contains("relation") ? parse_sum_relation(j.at("relation").get<std::string>())
                                                 : SumRelation::EqualSum;
    return QuadrupleInstance{hermitian_from_json(j.at("A")), hermitian_from_json(j.at("B")),
                             hermitian_from_json(j.at("C")), hermitian_from_json(j.at("D")),
                             lower, upper, relation, flag(j, "nonneg_A")};
  }
  if (j.contains("A") && j.contains("D")) {
    return MidpointInstance{hermitian_from_json(j.at("A")), hermitian_from_json(j.at("D")), lower, upper,
                            flag(j, "nonneg_A")};
  }
  throw ParseError("cannot tell the instance shape from its keys");
}

std::string_view shape_name(const AnyInstance& inst) {
  switch (inst.index()) {
    case 0: return "quadruple";
    case 1: return "midpoint";
    case 2: return "multi";
    default: return "mercer";
  }
}

}  // namespace loewner
