#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "loewner/functional_calculus.hpp"

namespace loewner {

enum class FunctionClass : unsigned {
  LogConvex = 1u << 0,
  Convex = 1u << 1,
  Superquadratic = 1u << 2,
  NonNegative = 1u << 3,
};

using FunctionClasses = unsigned;

constexpr FunctionClasses operator|(FunctionClass a, FunctionClass b) {
  return static_cast<unsigned>(a) | static_cast<unsigned>(b);
}
constexpr FunctionClasses operator|(FunctionClasses a, FunctionClass b) {
  return a | static_cast<unsigned>(b);
}

std::string_view to_string(FunctionClass c);

/// A scalar function together with its domain and declared classes.
///
/// Classes are declarations; the checkers below spot-verify them.
class FunctionDescriptor {
 public:
  FunctionDescriptor(std::string id, Interval domain, FunctionClasses classes,
                     std::function<double(double)> eval, std::map<std::string, double> params = {});

  const std::string& id() const { return id_; }
  const Interval& domain() const { return domain_; }
  FunctionClasses classes() const { return classes_; }
  const std::map<std::string, double>& params() const { return params_; }
  bool has(FunctionClass c) const { return (classes_ & static_cast<unsigned>(c)) != 0; }
  std::vector<std::string> class_names() const;

  /// Evaluates f(t); throws DomainViolation outside the domain.
  double operator()(double t) const;

  /// Evaluates without the domain check (caller guarantees membership).
  double eval_unchecked(double t) const { return eval_(t); }

 private:
  std::string id_;
  Interval domain_;
  FunctionClasses classes_;
  std::function<double(double)> eval_;
  std::map<std::string, double> params_;
};

FunctionDescriptor exp_function(double a = 1.0);
/// t^p: log-convex on (0, inf) for p <= 0, superquadratic on [0, inf) for p >= 2.
FunctionDescriptor power_function(double p);
/// Constant c; superquadratic on [0, inf) when c lies in [-2, -1] or c = 0.
FunctionDescriptor constant_function(double c);

/// Parses "exp", "exp:a=<real>", "pow:p=<real>", "recip", "const:c=<real>".
/// Throws ParseError on anything else.
FunctionDescriptor parse_function_spec(std::string_view spec);

/// Built-in functions used by the test suites and campaigns.
std::vector<FunctionDescriptor> function_registry();

/// f applied to a Hermitian matrix; eigenvalues must lie in f's domain.
Hermitian apply_scalar_function(const Hermitian& a, const FunctionDescriptor& f);

// --- interpolation constants -------------------------------------------------

struct KfResult {
  double value = 0;
  bool class_warning = false;  // f is not declared log-convex
};

/// K_f(x, y) = f((x+y)/2)^2 / (f(x) f(y)).
KfResult kf_constant(const FunctionDescriptor& f, double x, double y);

/// min(alpha, 1 - alpha)
double r_alpha(double alpha);

/// 1/2 - |t - (m+M)/2| / (M - m); throws DegenerateInterval when M <= m.
double tilde_t(double t, double m, double big_m);

/// |lhs - rhs| <= 1e-10 max(1, |lhs|, |rhs|)
bool is_equality(double lhs, double rhs);

// --- scalar checkers ---------------------------------------------------------

/// The three values f(ax+(1-a)y), K^r(a) f(x)^a f(y)^(1-a), a f(x)+(1-a) f(y).
/// For a in [0, 1] they should be ascending, otherwise descending.
struct LogConvexChainCheck {
  std::array<double, 3> values{};
  std::array<double, 2> slack{};  // oriented: >= 0 means the link holds
  std::array<bool, 2> holds{};
  std::array<bool, 2> equality{};
  bool reversed = false;

  bool pass() const { return holds[0] && holds[1]; }
};

LogConvexChainCheck check_logconvex_chain(const FunctionDescriptor& f, double x, double y,
                                          double alpha, double tol);

struct CharacterizationCheck {
  double lhs = 0;
  double rhs = 0;
  double slack = 0;  // rhs - lhs
  bool pass = false;
};

/// Jensen-type characterization of superquadratic functions at (x, y, alpha).
CharacterizationCheck check_superquadratic_characterization(const FunctionDescriptor& f, double x,
                                                            double y, double alpha, double tol);

struct DefinitionCheck {
  double c_s = 0;          // derivative-based candidate
  double worst_slack = 0;  // min over the grid
  double worst_t = 0;
  bool pass = false;  // a failure means "fails with the derivative candidate"
};

/// Checks f(t) - f(s) - f(|t-s|) >= c_s (t - s) over `t_grid`, with c_s the
/// central difference of f(t) - f(|t-s|) at t = s.
DefinitionCheck check_superquadratic_definition(const FunctionDescriptor& f, double s,
                                                const std::vector<double>& t_grid, double tol);

}  // namespace loewner
