#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loewner/instance.hpp"
#include "loewner/loewner_order.hpp"
#include "loewner/positive_map.hpp"
#include "loewner/scalar_function.hpp"
#include "loewner/theorem.hpp"

namespace loewner {

struct BuildOptions {
  /// Used for the hypothesis checks as well, so boundary instances pass.
  double tol = kDefaultPsdTolerance;
  /// Hypotheses to skip; see kRelaxationNames.
  std::vector<std::string> relaxations;
  /// SQ-MULTI-B and SQ-MERCER only: use the printed correction
  /// (M-X)/(M-m) o (Y-m) + (X-m)/(M-m) o (M-Y) with Y = sum Phi_i(f(B_i)) and
  /// o the Jordan product, instead of sum Phi_i(h(B_i)). The printed form is
  /// not a valid inequality; it is kept to demonstrate that.
  bool displayed_form = false;
};

/// Ascending chain of Hermitian terms: terms[0] <= terms[1] <= ...
struct ExpressionChain {
  TheoremId theorem;
  std::vector<Hermitian> terms;
  std::vector<std::string> labels;
  /// The unrefined inequality this chain sharpens, as (lhs, rhs). For LC
  /// chains these are the first and last terms; for SQ chains they are the
  /// two sides with the superquadratic corrections dropped.
  std::vector<Hermitian> baseline;
  std::string instance_digest;

  Eigen::Index dim() const { return terms.front().dim(); }
};

/// Validates shape, function class and hypotheses, then compiles every term.
/// Each operator-valued sub-expression depends on a single operator and is
/// applied as one scalar function by functional calculus.
///
/// `map` is the Phi of single-map theorems (identity when absent); family
/// theorems take their maps from the instance.
ExpressionChain build_chain(TheoremId theorem, const AnyInstance& instance,
                            const FunctionDescriptor& f,
                            const std::optional<PositiveUnitalMap>& map = std::nullopt,
                            const BuildOptions& options = {});

struct LinkResult {
  double min_eigenvalue = 0;  // lambda_min(next - this)
  double max_eigenvalue = 0;
  double gap_norm = 0;        // ||next - this||_F
  LoewnerRelation verdict = LoewnerRelation::Incomparable;
  bool equality = false;
};

/// Relative Frobenius threshold for flagging a link as an equality.
inline constexpr double kEqualityTolerance = 1e-10;

struct ChainReport {
  TheoremId theorem;
  std::vector<std::string> labels;
  std::vector<LinkResult> links;
  bool pass = false;
  /// Absolute: tol * max(1, max over links of ||lhs||_F + ||rhs||_F).
  double tolerance_used = 0;
  std::string instance_digest;
  std::optional<std::uint64_t> seed;

  double min_link_eigenvalue() const;
  int first_failing_link() const;  // -1 when all pass
};

ChainReport evaluate_chain(const ExpressionChain& chain, double tol = kDefaultPsdTolerance);

nlohmann::json to_json(const ChainReport& report);

struct RefinementReport {
  bool baseline_pass = false;  // baseline lhs <= baseline rhs
  bool sandwich_pass = false;  // every refined term lies between the baseline ends
  double worst_min_eigenvalue = 0;
  bool pass() const { return baseline_pass && sandwich_pass; }
};

RefinementReport check_refinement(const ExpressionChain& chain, double tol = kDefaultPsdTolerance);

// --- term building blocks ----------------------------------------------------

/// Scalar pieces shared by the chains, for fixed f and m < M.
class InterpolationKernel {
 public:
  InterpolationKernel(const FunctionDescriptor& f, double lower, double upper);
  /// Same kernel for f(t) = t^p with K_f taken from its closed form
  /// ((m+M) / (2 sqrt(mM)))^(2p).
  static InterpolationKernel power_closed_form(const FunctionDescriptor& f, double p, double lower,
                                               double upper);

  /// Absolute band inside which eigenvalues just past a closed domain end are
  /// snapped onto it; the relative functional-calculus band always applies.
  void set_clamp_band(double band) { band_ = band; }

  double lower() const { return m_; }
  double upper() const { return big_m_; }

  /// K^t~ f(m)^((M-t)/(M-m)) f(M)^((t-m)/(M-m)); defined for every real t.
  double g(double t) const;
  /// (M-t)/(M-m) f(m) + (t-m)/(M-m) f(M)
  double linear(double t) const;
  /// (M-t)/(M-m) f(t-m) + (t-m)/(M-m) f(M-t) on [m, M]
  double correction(double t) const;

  Hermitian f(const Hermitian& x) const;
  Hermitian g(const Hermitian& x) const;
  Hermitian linear(const Hermitian& x) const;
  /// (2M - S)/(M-m) f(m) + (S - 2m)/(M-m) f(M)
  Hermitian linear_sum(const Hermitian& s) const;
  Hermitian correction(const Hermitian& x) const;
  /// f(m - A) for A <= m
  Hermitian f_below(const Hermitian& a) const;
  /// f(D - M) for D >= M
  Hermitian f_above(const Hermitian& d) const;
  /// (m - A)/(M-m) f(M-m)
  Hermitian ramp_below(const Hermitian& a) const;
  /// (D - M)/(M-m) f(M-m)
  Hermitian ramp_above(const Hermitian& d) const;

 private:
  const FunctionDescriptor* f_;
  double m_, big_m_, width_;
  double fm_, fbig_, fwidth_;
  double log_k_ = 0, log_fm_ = 0, log_fbig_ = 0;
  bool has_logs_ = false;
  double band_ = 0;
};

}  // namespace loewner
