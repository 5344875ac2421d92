#include "loewner/chain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "loewner/canonical_json.hpp"
#include "loewner/errors.hpp"

namespace loewner {

namespace {

Hermitian apply_clamped(const Hermitian& x, const std::function<double(double)>& fn,
                        const Interval& domain, double band) {
  auto eig = eigendecompose(x);
  const double b = std::max(band, kBoundaryClampTolerance * x.frobenius_norm());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues(i);
    const double t = clamp_into(domain, lambda, b);
    if (std::isnan(t)) {
      throw DomainViolation("eigenvalue " + std::to_string(lambda) + " outside " + domain.to_string(),
                            lambda);
    }
    eig.eigenvalues(i) = fn(t);
  }
  return eig.reconstruct();
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

// --- kernel ------------------------------------------------------------------

InterpolationKernel::InterpolationKernel(const FunctionDescriptor& f, double lower, double upper)
    : f_(&f), m_(lower), big_m_(upper), width_(upper - lower) {
  if (!(lower < upper)) throw DegenerateInterval("need m < M");
  fm_ = f(lower);
  fbig_ = f(upper);
  fwidth_ = f.domain().contains(width_) ? f(width_) : std::numeric_limits<double>::quiet_NaN();
  const double fmid = f(0.5 * (lower + upper));
  if (fm_ > 0 && fbig_ > 0 && fmid > 0) {
    log_fm_ = std::log(fm_);
    log_fbig_ = std::log(fbig_);
    log_k_ = 2 * std::log(fmid) - log_fm_ - log_fbig_;
    has_logs_ = true;
  }
}

InterpolationKernel InterpolationKernel::power_closed_form(const FunctionDescriptor& f, double p,
                                                           double lower, double upper) {
  if (!(lower > 0)) throw DomainViolation("closed-form power constant needs m > 0", lower);
  InterpolationKernel k(f, lower, upper);
  k.log_k_ = 2 * p * std::log((lower + upper) / (2 * std::sqrt(lower * upper)));
  k.log_fm_ = p * std::log(lower);
  k.log_fbig_ = p * std::log(upper);
  k.has_logs_ = true;
  return k;
}

double InterpolationKernel::g(double t) const {
  if (!has_logs_) throw DomainViolation(f_->id() + ": g needs f > 0 on [m, M]", m_);
  return std::exp(tilde_t(t, m_, big_m_) * log_k_ + (big_m_ - t) / width_ * log_fm_ +
                  (t - m_) / width_ * log_fbig_);
}

double InterpolationKernel::linear(double t) const {
  return (big_m_ - t) / width_ * fm_ + (t - m_) / width_ * fbig_;
}

double InterpolationKernel::correction(double t) const {
  return (big_m_ - t) / width_ * (*f_)(t - m_) + (t - m_) / width_ * (*f_)(big_m_ - t);
}

Hermitian InterpolationKernel::f(const Hermitian& x) const {
  return apply_clamped(x, [this](double t) { return f_->eval_unchecked(t); }, f_->domain(), band_);
}

Hermitian InterpolationKernel::g(const Hermitian& x) const {
  return apply_clamped(x, [this](double t) { return g(t); }, Interval::real_line(), band_);
}

Hermitian InterpolationKernel::linear(const Hermitian& x) const {
  return (x * ((fbig_ - fm_) / width_)).shifted((big_m_ * fm_ - m_ * fbig_) / width_);
}

Hermitian InterpolationKernel::linear_sum(const Hermitian& s) const {
  return (s * ((fbig_ - fm_) / width_)).shifted(2 * (big_m_ * fm_ - m_ * fbig_) / width_);
}

Hermitian InterpolationKernel::correction(const Hermitian& x) const {
  return apply_clamped(x, [this](double t) { return correction(t); },
                       Interval::closed(m_, big_m_), band_);
}

Hermitian InterpolationKernel::f_below(const Hermitian& a) const {
  return apply_clamped(a, [this](double t) { return (*f_)(m_ - t); }, {-kInf, m_, false, true}, band_);
}

Hermitian InterpolationKernel::f_above(const Hermitian& d) const {
  return apply_clamped(d, [this](double t) { return (*f_)(t - big_m_); }, {big_m_, kInf, true, false},
                       band_);
}

Hermitian InterpolationKernel::ramp_below(const Hermitian& a) const {
  return (-a).shifted(m_) * (fwidth_ / width_);
}

Hermitian InterpolationKernel::ramp_above(const Hermitian& d) const {
  return d.shifted(-big_m_) * (fwidth_ / width_);
}

// --- hypotheses --------------------------------------------------------------

namespace {

struct Relaxed {
  bool cond_i_f = false, cond_i_sum = false, cond_ii_f = false, cond_ii_sum = false;
  bool equal_sum = false;
};

Relaxed parse_relaxations(TheoremId id, const std::vector<std::string>& names) {
  Relaxed r;
  const auto allowed = applicable_relaxations(id);
  for (const auto& name : names) {
    if (std::find(kRelaxationNames.begin(), kRelaxationNames.end(), name) == kRelaxationNames.end()) {
      throw UnknownRelaxation("unknown relaxation '" + name + "'");
    }
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UnknownRelaxation("relaxation '" + name + "' does not apply to " +
                              std::string(to_string(id)));
    }
    if (name == "cond-i-f") r.cond_i_f = true;
    if (name == "cond-i-sum") r.cond_i_sum = true;
    if (name == "cond-ii-f") r.cond_ii_f = true;
    if (name == "cond-ii-sum") r.cond_ii_sum = true;
    if (name == "equal-sum") r.equal_sum = true;
  }
  return r;
}

void raise_first(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  const auto& v = violations.front();
  throw HypothesisViolation(v.constraint, "offending value " + std::to_string(v.eigenvalue));
}

void check_function(const TheoremInfo& info, const FunctionDescriptor& f) {
  if (!f.has(info.required_class)) {
    throw HypothesisViolation("function class", f.id() + " is not declared " +
                                                    std::string(to_string(info.required_class)));
  }
  const auto p = f.params().find("p");
  if (info.id == TheoremId::LcPow && (p == f.params().end() || p->second > 0)) {
    throw HypothesisViolation("p <= 0", f.id() + " is not t^p with p <= 0");
  }
  if (info.id == TheoremId::SqPow && (p == f.params().end() || p->second < 2)) {
    throw HypothesisViolation("p >= 2", f.id() + " is not t^p with p >= 2");
  }
}

void check_equal_sum(const QuadrupleInstance& q, double tol, const std::string& suffix) {
  const auto v = loewner_leq(q.b + q.c, q.a + q.d, tol);
  if (v.relation != LoewnerRelation::Equal) {
    throw HypothesisViolation("A" + suffix + " + D" + suffix + " = B" + suffix + " + C" + suffix,
                              "||A+D-B-C||_F = " + std::to_string(frobenius_distance(q.a + q.d, q.b + q.c)));
  }
}

void check_nonnegative(const TheoremInfo& info, double lower, const Hermitian& a, double tol,
                       const std::string& suffix) {
  if (!info.nonnegative_a) return;
  if (lower < 0) throw HypothesisViolation("0 <= m", "m = " + std::to_string(lower));
  const double lo = spectral_bounds(a).first;
  if (lo < -tol * std::max(1.0, a.frobenius_norm())) {
    throw HypothesisViolation("0 <= A" + suffix, "lambda_min(A" + suffix + ") = " + std::to_string(lo));
  }
}

void check_conditions(const QuadrupleInstance& q, const FunctionDescriptor& f, double tol,
                      const Relaxed& r) {
  const auto v = loewner_leq(q.b + q.c, q.a + q.d, tol);
  const double fm = f(q.lower);
  const double fbig = f(q.upper);
  const double slack = tol * std::max(1.0, std::abs(fm) + std::abs(fbig));
  const bool f_up = fm <= fbig + slack;
  const bool f_down = fbig <= fm + slack;
  const bool cond_i = (v.leq() || r.cond_i_sum) && (f_up || r.cond_i_f);
  const bool cond_ii = (v.geq() || r.cond_ii_sum) && (f_down || r.cond_ii_f);
  if (!cond_i && !cond_ii) {
    throw HypothesisViolation(
        "condition (i) or (ii)",
        "B+C <= A+D: " + std::string(v.leq() ? "yes" : "no") + ", A+D <= B+C: " +
            (v.geq() ? "yes" : "no") + ", f(m) = " + std::to_string(fm) + ", f(M) = " + std::to_string(fbig));
  }
}

const PositiveUnitalMap& resolve_map(const TheoremInfo& info, const std::optional<PositiveUnitalMap>& map,
                                     std::optional<PositiveUnitalMap>& storage, Eigen::Index dim) {
  if (!info.single_map) {
    if (map && !std::holds_alternative<IdentityMap>(map->kind())) {
      throw ShapeMismatch(std::string(info.name) + " takes no map");
    }
    storage = PositiveUnitalMap::identity(dim);
    return *storage;
  }
  if (!map) {
    storage = PositiveUnitalMap::identity(dim);
    return *storage;
  }
  if (map->input_dim() != dim) {
    throw ShapeMismatch("map input dimension " + std::to_string(map->input_dim()) +
                        " does not match instance dimension " + std::to_string(dim));
  }
  return *map;
}

void check_family(const MapFamily& family, std::size_t n, Eigen::Index dim, double tol) {
  if (family.size() != n) {
    throw ShapeMismatch("family has " + std::to_string(family.size()) + " maps for " +
                        std::to_string(n) + " operators");
  }
  if (family.input_dim() != dim) throw ShapeMismatch("family input dimension does not match instance");
  const double dev = family_unital_deviation(family);
  if (dev > std::max(tol, kMapTolerance)) {
    throw HypothesisViolation("sum_i Phi_i(I) = I", "deviation " + std::to_string(dev));
  }
}

Hermitian jordan(const Hermitian& x, const Hermitian& y) {
  return Hermitian::project(0.5 * (x.dense() * y.dense() + y.dense() * x.dense()));
}

// sum_i Phi_i(fn(x_i))
template <typename Fn>
Hermitian family_sum(const MapFamily& fam, const std::vector<Hermitian>& xs, Fn&& fn) {
  std::vector<Hermitian> mapped;
  mapped.reserve(xs.size());
  for (const auto& x : xs) mapped.push_back(fn(x));
  return fam.apply_sum(mapped);
}

struct Terms {
  std::vector<Hermitian> terms;
  std::vector<std::string> labels;
  std::vector<Hermitian> baseline;
};

Terms lc_five(std::vector<Hermitian> t, std::vector<std::string> labels) {
  Terms out{std::move(t), std::move(labels), {}};
  out.baseline = {out.terms.front(), out.terms.back()};
  return out;
}

Terms sq_pair(Hermitian base_lhs, Hermitian lhs, Hermitian rhs, Hermitian base_rhs, std::string lhs_label,
              std::string rhs_label) {
  return {{std::move(lhs), std::move(rhs)}, {std::move(lhs_label), std::move(rhs_label)},
          {std::move(base_lhs), std::move(base_rhs)}};
}

// --- quadruple-shape chains ----------------------------------------------------

Terms build_quadruple(TheoremId id, const QuadrupleInstance& q, const InterpolationKernel& k,
                      const PositiveUnitalMap& phi) {
  const auto& [a, b, c, d] = std::tie(q.a, q.b, q.c, q.d);
  const auto P = [&phi](const Hermitian& x) { return phi(x); };
  switch (id) {
    case TheoremId::LcQuad:
    case TheoremId::LcPow:
      return lc_five({k.f(b) + k.f(c), k.g(b) + k.g(c), k.linear_sum(b + c), k.g(a) + k.g(d), k.f(a) + k.f(d)},
                     {"f(B)+f(C)", "g(B)+g(C)", "L(B)+L(C)", "g(A)+g(D)", "f(A)+f(D)"});
    case TheoremId::LcMap: {
      const Hermitian pa = P(a), pd = P(d);
      return lc_five({P(k.f(b)) + P(k.f(c)), P(k.g(b)) + P(k.g(c)), k.linear_sum(P(b + c)),
                      k.g(pa) + k.g(pd), k.f(pa) + k.f(pd)},
                     {"Phi(f(B))+Phi(f(C))", "Phi(g(B))+Phi(g(C))", "L-sum(Phi(B+C))",
                      "g(Phi(A))+g(Phi(D))", "f(Phi(A))+f(Phi(D))"});
    }
    case TheoremId::LcMapV2: {
      const Hermitian pb = P(b), pc = P(c);
      return lc_five({k.f(pb) + k.f(pc), k.g(pb) + k.g(pc), k.linear_sum(P(b + c)), P(k.g(a)) + P(k.g(d)),
                      P(k.f(a)) + P(k.f(d))},
                     {"f(Phi(B))+f(Phi(C))", "g(Phi(B))+g(Phi(C))", "L-sum(Phi(B+C))",
                      "Phi(g(A))+Phi(g(D))", "Phi(f(A))+Phi(f(D))"});
    }
    case TheoremId::LcMapV3: {
      const Hermitian pa = P(a), pc = P(c);
      return lc_five({P(k.f(b)) + k.f(pc), P(k.g(b)) + k.g(pc), k.linear_sum(P(b + c)), k.g(pa) + P(k.g(d)),
                      k.f(pa) + P(k.f(d))},
                     {"Phi(f(B))+f(Phi(C))", "Phi(g(B))+g(Phi(C))", "L-sum(Phi(B+C))",
                      "g(Phi(A))+Phi(g(D))", "f(Phi(A))+Phi(f(D))"});
    }
    case TheoremId::MosBase: {
      const Hermitian lhs = k.f(P(b)) + k.f(P(c));
      const Hermitian rhs = P(k.f(a)) + P(k.f(d));
      return {{lhs, rhs}, {"f(Phi(B))+f(Phi(C))", "Phi(f(A))+Phi(f(D))"}, {lhs, rhs}};
    }
    case TheoremId::SqMap:
    case TheoremId::SqPow: {
      const Hermitian pa = P(a), pb = P(b), pc = P(c), pd = P(d);
      const Hermitian lhs = k.f(pb) + k.f(pc);
      const Hermitian base_rhs = P(k.f(a)) + P(k.f(d));
      const Hermitian rhs = base_rhs - k.correction(pb) - k.correction(pc) - P(k.f_below(a)) -
                            k.ramp_below(pa) - P(k.f_above(d)) - k.ramp_above(pd);
      return sq_pair(lhs, lhs, rhs, base_rhs, "f(Phi(B))+f(Phi(C))",
                     "Phi(f(A))+Phi(f(D))-h(Phi(B))-h(Phi(C))-Phi(f(m-A))-(m-Phi(A))f(M-m)/(M-m)"
                     "-Phi(f(D-M))-(Phi(D)-M)f(M-m)/(M-m)");
    }
    case TheoremId::SqMapV2: {
      const Hermitian pa = P(a), pd = P(d);
      const Hermitian lhs = P(k.f(b)) + P(k.f(c));
      const Hermitian base_rhs = k.f(pa) + k.f(pd);
      const Hermitian rhs = base_rhs - P(k.correction(b)) - P(k.correction(c)) - k.f_below(pa) -
                            k.ramp_below(pa) - k.f_above(pd) - k.ramp_above(pd);
      return sq_pair(lhs, lhs, rhs, base_rhs, "Phi(f(B))+Phi(f(C))",
                     "f(Phi(A))+f(Phi(D))-Phi(h(B))-Phi(h(C))-f(m-Phi(A))-(m-Phi(A))f(M-m)/(M-m)"
                     "-f(Phi(D)-M)-(Phi(D)-M)f(M-m)/(M-m)");
    }
    case TheoremId::SqMapV3: {
      const Hermitian pa = P(a), pb = P(b), pd = P(d);
      const Hermitian lhs = k.f(pb) + P(k.f(c));
      const Hermitian base_rhs = P(k.f(a)) + k.f(pd);
      const Hermitian rhs = base_rhs - k.correction(pb) - P(k.correction(c)) - P(k.f_below(a)) -
                            k.ramp_below(pa) - k.f_above(pd) - k.ramp_above(pd);
      return sq_pair(lhs, lhs, rhs, base_rhs, "f(Phi(B))+Phi(f(C))",
                     "Phi(f(A))+f(Phi(D))-h(Phi(B))-Phi(h(C))-Phi(f(m-A))-(m-Phi(A))f(M-m)/(M-m)"
                     "-f(Phi(D)-M)-(Phi(D)-M)f(M-m)/(M-m)");
    }
    case TheoremId::SqQuad: {
      const Hermitian base_lhs = k.f(b) + k.f(c);
      const Hermitian lhs = base_lhs + k.correction(b) + k.correction(c);
      const Hermitian base_rhs = k.f(a) + k.f(d);
      const Hermitian rhs = base_rhs - k.f_below(a) - k.ramp_below(a) - k.f_above(d) - k.ramp_above(d);
      return sq_pair(base_lhs, lhs, rhs, base_rhs, "f(B)+f(C)+h(B)+h(C)",
                     "f(A)+f(D)-f(m-A)-(m-A)f(M-m)/(M-m)-f(D-M)-(D-M)f(M-m)/(M-m)");
    }
    default:
      throw ShapeMismatch(std::string(to_string(id)) + " does not take a quadruple instance");
  }
}

Terms build_midpoint(TheoremId id, const MidpointInstance& inst, const InterpolationKernel& k) {
  const Hermitian x = inst.midpoint();
  const auto& [a, d] = std::tie(inst.a, inst.d);
  if (id == TheoremId::LcMid) {
    return lc_five({k.f(x), k.g(x), k.linear(x), 0.5 * (k.g(a) + k.g(d)), 0.5 * (k.f(a) + k.f(d))},
                   {"f(X)", "g(X)", "L(X)", "(g(A)+g(D))/2", "(f(A)+f(D))/2"});
  }
  const Hermitian base_lhs = k.f(x);
  const Hermitian lhs = base_lhs + k.correction(x);
  const Hermitian base_rhs = 0.5 * (k.f(a) + k.f(d));
  const Hermitian rhs =
      base_rhs - 0.5 * (k.f_below(a) + k.f_above(d) + k.ramp_below(a) + k.ramp_above(d));
  return sq_pair(base_lhs, lhs, rhs, base_rhs, "f(X)+h(X)",
                 "(f(A)+f(D))/2-(f(m-A)+f(D-M))/2-((m-A)+(D-M))f(M-m)/(2(M-m))");
}

struct MultiSums {
  std::vector<Hermitian> a, b, c, d;
  Hermitian sa, sb, sc, sd;
};

MultiSums multi_sums(const MultiInstance& inst) {
  std::vector<Hermitian> a, b, c, d;
  for (const auto& q : inst.quads) {
    a.push_back(q.a);
    b.push_back(q.b);
    c.push_back(q.c);
    d.push_back(q.d);
  }
  const auto& fam = inst.family;
  return {a, b, c, d, fam.apply_sum(a), fam.apply_sum(b), fam.apply_sum(c), fam.apply_sum(d)};
}

// (M-X)/(M-m) o (Y-m) + (X-m)/(M-m) o (M-Y), the correction as printed.
Hermitian displayed_correction(const Hermitian& x, const Hermitian& y, double m, double big_m) {
  const double w = big_m - m;
  return (jordan((-x).shifted(big_m), y.shifted(-m)) + jordan(x.shifted(-m), (-y).shifted(big_m))) / w;
}

Terms build_multi(TheoremId id, const MultiInstance& inst, const InterpolationKernel& k,
                  bool displayed_form) {
  const auto& fam = inst.family;
  const MultiSums s = multi_sums(inst);
  const auto F = [&k](const Hermitian& x) { return k.f(x); };
  const auto G = [&k](const Hermitian& x) { return k.g(x); };
  const auto Hc = [&k](const Hermitian& x) { return k.correction(x); };
  const auto Fb = [&k](const Hermitian& x) { return k.f_below(x); };
  const auto Fa = [&k](const Hermitian& x) { return k.f_above(x); };
  switch (id) {
    case TheoremId::LcMulti: {
      std::vector<Hermitian> bc;
      for (std::size_t i = 0; i < s.b.size(); ++i) bc.push_back(s.b[i] + s.c[i]);
      return lc_five({family_sum(fam, s.b, F) + k.f(s.sc), family_sum(fam, s.b, G) + k.g(s.sc),
                      k.linear_sum(fam.apply_sum(bc)), k.g(s.sa) + family_sum(fam, s.d, G),
                      k.f(s.sa) + family_sum(fam, s.d, F)},
                     {"sum Phi_i(f(B_i))+f(sum Phi_i(C_i))", "sum Phi_i(g(B_i))+g(sum Phi_i(C_i))",
                      "L-sum(sum Phi_i(B_i+C_i))", "g(sum Phi_i(A_i))+sum Phi_i(g(D_i))",
                      "f(sum Phi_i(A_i))+sum Phi_i(f(D_i))"});
    }
    case TheoremId::SqMultiA: {
      const Hermitian base_lhs = k.f(s.sb) + k.f(s.sc);
      const Hermitian lhs = base_lhs + k.correction(s.sb) + k.correction(s.sc);
      const Hermitian base_rhs = family_sum(fam, s.a, F) + family_sum(fam, s.d, F);
      const Hermitian rhs = base_rhs - family_sum(fam, s.a, Fb) - k.ramp_below(s.sa) -
                            family_sum(fam, s.d, Fa) - k.ramp_above(s.sd);
      return sq_pair(base_lhs, lhs, rhs, base_rhs,
                     "f(sum Phi_i(B_i))+f(sum Phi_i(C_i))+h(sum Phi_i(B_i))+h(sum Phi_i(C_i))",
                     "sum Phi_i(f(A_i))+sum Phi_i(f(D_i))-sum Phi_i(f(m-A_i))-(m-sum Phi_i(A_i))f(M-m)/(M-m)"
                     "-sum Phi_i(f(D_i-M))-(sum Phi_i(D_i)-M)f(M-m)/(M-m)");
    }
    case TheoremId::SqMultiB: {
      const Hermitian fb = family_sum(fam, s.b, F);
      const Hermitian base_lhs = fb + k.f(s.sc);
      const Hermitian b_part = displayed_form ? displayed_correction(s.sb, fb, k.lower(), k.upper())
                                              : family_sum(fam, s.b, Hc);
      const Hermitian lhs = base_lhs + b_part + k.correction(s.sc);
      const Hermitian base_rhs = k.f(s.sa) + family_sum(fam, s.d, F);
      const Hermitian rhs = base_rhs - k.f_below(s.sa) - k.ramp_below(s.sa) - family_sum(fam, s.d, Fa) -
                            k.ramp_above(s.sd);
      return sq_pair(base_lhs, lhs, rhs, base_rhs,
                     displayed_form ? "sum Phi_i(f(B_i))+f(sum Phi_i(C_i))+[printed B correction]+h(sum Phi_i(C_i))"
                                    : "sum Phi_i(f(B_i))+f(sum Phi_i(C_i))+sum Phi_i(h(B_i))+h(sum Phi_i(C_i))",
                     "f(sum Phi_i(A_i))+sum Phi_i(f(D_i))-f(m-sum Phi_i(A_i))-(m-sum Phi_i(A_i))f(M-m)/(M-m)"
                     "-sum Phi_i(f(D_i-M))-(sum Phi_i(D_i)-M)f(M-m)/(M-m)");
    }
    default:
      throw ShapeMismatch(std::string(to_string(id)) + " does not take a multi instance");
  }
}

Terms build_mercer(TheoremId id, const MercerInstance& inst, const InterpolationKernel& k,
                   const FunctionDescriptor& f, bool displayed_form) {
  const auto& fam = inst.family;
  const Eigen::Index n = fam.output_dim();
  const double m = inst.lower, big_m = inst.upper;
  const Hermitian x = fam.apply_sum(inst.b_list);
  const Hermitian reflected = (-x).shifted(big_m + m);
  const Hermitian fb = family_sum(fam, inst.b_list, [&k](const Hermitian& b) { return k.f(b); });
  switch (id) {
    case TheoremId::JmBase: {
      const Hermitian lhs = k.f(reflected);
      const Hermitian rhs = Hermitian::scalar(n, f(m) + f(big_m)) - fb;
      return {{lhs, rhs}, {"f(M+m-sum Phi_i(B_i))", "f(m)+f(M)-sum Phi_i(f(B_i))"}, {lhs, rhs}};
    }
    case TheoremId::LcMercer: {
      // The reduction through LC-MULTI: the third term is L-sum((M+m) I),
      // which must come out as (f(m)+f(M)) I.
      Terms multi = build_multi(TheoremId::LcMulti, inst.as_multi(), k, false);
      multi.terms.erase(multi.terms.begin() + 3, multi.terms.end());
      multi.labels = {"sum Phi_i(f(B_i))+f(M+m-sum Phi_i(B_i))",
                      "sum Phi_i(g(B_i))+g(M+m-sum Phi_i(B_i))", "L-sum(sum Phi_i(B_i+C_i))"};
      multi.baseline = {multi.terms.front(), multi.terms.back()};
      return multi;
    }
    case TheoremId::SqMercer: {
      const Hermitian base_lhs = k.f(reflected);
      const Hermitian b_part =
          displayed_form ? displayed_correction(x, fb, m, big_m)
                         : family_sum(fam, inst.b_list, [&k](const Hermitian& b) { return k.correction(b); });
      const Hermitian lhs = base_lhs + b_part + k.correction(reflected);
      const Hermitian base_rhs = Hermitian::scalar(n, f(m) + f(big_m)) - fb;
      const Hermitian rhs = base_rhs - Hermitian::scalar(n, 2 * f(0.0));
      return sq_pair(base_lhs, lhs, rhs, base_rhs,
                     displayed_form ? "f(M+m-X)+[printed B correction]+h(M+m-X)"
                                    : "f(M+m-X)+sum Phi_i(h(B_i))+h(M+m-X)",
                     "f(m)+f(M)-2f(0)-sum Phi_i(f(B_i))");
    }
    default:
      throw ShapeMismatch(std::string(to_string(id)) + " does not take a Mercer instance");
  }
}

}  // namespace

ExpressionChain build_chain(TheoremId theorem, const AnyInstance& instance, const FunctionDescriptor& f,
                            const std::optional<PositiveUnitalMap>& map, const BuildOptions& options) {
  const TheoremInfo& info = theorem_info(theorem);
  if (static_cast<std::size_t>(info.shape) != instance.index()) {
    throw ShapeMismatch(std::string(info.name) + " needs a " + std::string(to_string(info.shape)) +
                        " instance, got " + std::string(shape_name(instance)));
  }
  const Relaxed relaxed = parse_relaxations(theorem, options.relaxations);
  check_function(info, f);
  const double tol = options.tol;

  auto kernel_for = [&](double lower, double upper) {
    InterpolationKernel k = theorem == TheoremId::LcPow
                                ? InterpolationKernel::power_closed_form(f, f.params().at("p"), lower, upper)
                                : InterpolationKernel(f, lower, upper);
    k.set_clamp_band(tol * std::max(1.0, std::abs(lower) + std::abs(upper)));
    return k;
  };

  std::optional<PositiveUnitalMap> storage;
  Terms terms = std::visit(
      [&](const auto& inst) -> Terms {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, QuadrupleInstance>) {
          raise_first(validate_spectra(inst, tol));
          check_nonnegative(info, inst.lower, inst.a, tol, "");
          if (info.sums == SumHypothesis::EqualSum && !relaxed.equal_sum) check_equal_sum(inst, tol, "");
          if (info.sums == SumHypothesis::Conditions) check_conditions(inst, f, tol, relaxed);
          const auto& phi = resolve_map(info, map, storage, inst.dim());
          return build_quadruple(theorem, inst, kernel_for(inst.lower, inst.upper), phi);
        } else if constexpr (std::is_same_v<T, MidpointInstance>) {
          resolve_map(info, map, storage, inst.a.dim());
          raise_first(validate_instance(inst, tol));
          check_nonnegative(info, inst.lower, inst.a, tol, "");
          return build_midpoint(theorem, inst, kernel_for(inst.lower, inst.upper));
        } else if constexpr (std::is_same_v<T, MultiInstance>) {
          if (inst.quads.empty()) throw ShapeMismatch("multi instance has no quadruples");
          resolve_map(info, map, storage, inst.quads.front().dim());
          for (std::size_t i = 0; i < inst.quads.size(); ++i) {
            const auto& q = inst.quads[i];
            const std::string suffix = "_" + std::to_string(i + 1);
            if (q.lower != inst.lower || q.upper != inst.upper) {
              throw HypothesisViolation("shared (m, M)", "quadruple " + suffix + " has its own bounds");
            }
            raise_first(validate_spectra(q, tol));
            check_nonnegative(info, inst.lower, q.a, tol, suffix);
            if (!relaxed.equal_sum) check_equal_sum(q, tol, suffix);
          }
          check_family(inst.family, inst.quads.size(), inst.quads.front().dim(), tol);
          return build_multi(theorem, inst, kernel_for(inst.lower, inst.upper), options.displayed_form);
        } else {
          if (inst.b_list.empty()) throw ShapeMismatch("Mercer instance has no operators");
          resolve_map(info, map, storage, inst.b_list.front().dim());
          check_family(inst.family, inst.b_list.size(), inst.b_list.front().dim(), tol);
          raise_first(validate_instance(inst, tol));
          if (info.nonnegative_a && inst.lower < 0) {
            throw HypothesisViolation("0 <= m", "m = " + std::to_string(inst.lower));
          }
          return build_mercer(theorem, inst, kernel_for(inst.lower, inst.upper), f, options.displayed_form);
        }
      },
      instance);

  return {theorem, std::move(terms.terms), std::move(terms.labels), std::move(terms.baseline),
          digest(to_json(instance))};
}

// --- evaluation --------------------------------------------------------------

double ChainReport::min_link_eigenvalue() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& l : links) lo = std::min(lo, l.min_eigenvalue);
  return lo;
}

int ChainReport::first_failing_link() const {
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (links[i].min_eigenvalue < -tolerance_used) return static_cast<int>(i);
  }
  return -1;
}

ChainReport evaluate_chain(const ExpressionChain& chain, double tol) {
  ChainReport report;
  report.theorem = chain.theorem;
  report.labels = chain.labels;
  report.instance_digest = chain.instance_digest;

  double scale = 1.0;
  for (std::size_t i = 0; i + 1 < chain.terms.size(); ++i) {
    scale = std::max(scale, chain.terms[i].frobenius_norm() + chain.terms[i + 1].frobenius_norm());
  }
  report.tolerance_used = tol * scale;

  report.pass = true;
  for (std::size_t i = 0; i + 1 < chain.terms.size(); ++i) {
    const Hermitian& lhs = chain.terms[i];
    const Hermitian& rhs = chain.terms[i + 1];
    const Hermitian diff = rhs - lhs;
    const auto [lo, hi] = spectral_bounds(diff);
    LinkResult link;
    link.min_eigenvalue = lo;
    link.max_eigenvalue = hi;
    link.gap_norm = diff.frobenius_norm();
    const bool le = lo >= -report.tolerance_used;
    const bool ge = hi <= report.tolerance_used;
    link.verdict = le && ge ? LoewnerRelation::Equal
                   : le     ? LoewnerRelation::LessOrEqual
                   : ge     ? LoewnerRelation::GreaterOrEqual
                            : LoewnerRelation::Incomparable;
    link.equality = link.gap_norm <=
                    kEqualityTolerance * std::max({1.0, lhs.frobenius_norm(), rhs.frobenius_norm()});
    report.pass = report.pass && le;
    report.links.push_back(link);
  }
  return report;
}

nlohmann::json to_json(const ChainReport& report) {
  nlohmann::json links = nlohmann::json::array();
  for (std::size_t i = 0; i < report.links.size(); ++i) {
    const auto& l = report.links[i];
    links.push_back({{"link", i + 1},
                     {"lhs", report.labels.at(i)},
                     {"rhs", report.labels.at(i + 1)},
                     {"min_eigenvalue", l.min_eigenvalue},
                     {"max_eigenvalue", l.max_eigenvalue},
                     {"gap_norm", l.gap_norm},
                     {"verdict", to_string(l.verdict)},
                     {"equality", l.equality}});
  }
  nlohmann::json j = {{"theorem", to_string(report.theorem)},
                      {"terms", report.labels},
                      {"links", links},
                      {"pass", report.pass},
                      {"tolerance_used", report.tolerance_used},
                      {"min_link_eigenvalue", report.min_link_eigenvalue()},
                      {"instance_digest", report.instance_digest}};
  if (report.seed) j["seed"] = *report.seed;
  return j;
}

RefinementReport check_refinement(const ExpressionChain& chain, double tol) {
  RefinementReport r;
  r.worst_min_eigenvalue = std::numeric_limits<double>::infinity();
  auto leq = [&](const Hermitian& a, const Hermitian& b) {
    const auto v = loewner_leq(a, b, tol);
    r.worst_min_eigenvalue = std::min(r.worst_min_eigenvalue, v.min_eigenvalue_of_difference);
    return v.leq();
  };
  const Hermitian& lo = chain.baseline.at(0);
  const Hermitian& hi = chain.baseline.at(1);
  r.baseline_pass = leq(lo, hi);
  r.sandwich_pass = true;
  for (const auto& t : chain.terms) {
    const bool inside = leq(lo, t) && leq(t, hi);
    r.sandwich_pass = r.sandwich_pass && inside;
  }
  return r;
}

}  // namespace loewner
