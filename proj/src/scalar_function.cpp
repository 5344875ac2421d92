#include "loewner/scalar_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace loewner {
namespace {

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::LogConvex: return "log_convex";
    case FunctionClass::Convex: return "convex";
    case FunctionClass::Superquadratic: return "superquadratic";
    case FunctionClass::NonNegative: return "non_negative";
  }
  return "unknown";
}

FunctionDescriptor::FunctionDescriptor(std::string id, Interval domain, FunctionClasses classes,
                                       std::function<double(double)> eval,
                                       std::map<std::string, double> params)
    : id_(std::move(id)),
      domain_(domain),
      classes_(classes),
      eval_(std::move(eval)),
      params_(std::move(params)) {
  if (has(FunctionClass::Superquadratic) && !domain_.within(Interval::nonnegative())) {
    throw Error("superquadratic function '" + id_ + "' must live on [0, inf)");
  }
}

std::vector<std::string> FunctionDescriptor::class_names() const {
  std::vector<std::string> out;
  for (auto c : {FunctionClass::LogConvex, FunctionClass::Convex, FunctionClass::Superquadratic,
                 FunctionClass::NonNegative}) {
    if (has(c)) out.emplace_back(to_string(c));
  }
  return out;
}

double FunctionDescriptor::operator()(double t) const {
  if (!domain_.contains(t)) {
    throw DomainViolation(id_ + ": argument " + std::to_string(t) + " outside " +
                              domain_.to_string(),
                          t);
  }
  return eval_(t);
}

FunctionDescriptor exp_function(double a) {
  const std::string id = a == 1.0 ? "exp" : "exp:a=" + short_real(a);
  return FunctionDescriptor(
      id, Interval::real_line(),
      FunctionClass::LogConvex | FunctionClass::Convex | FunctionClass::NonNegative,
      [a](double t) { return std::exp(a * t); }, {{"a", a}});
}

FunctionDescriptor power_function(double p) {
  const bool integral = std::trunc(p) == p && std::abs(p) < 64;
  auto eval = [p, integral](double t) {
    if (t == 0.0) {
      if (p > 0) return 0.0;
      throw DomainViolation("t^p with p <= 0 is undefined at 0", t);
    }
    return integral ? std::pow(t, p) : std::exp(p * std::log(t));
  };
  FunctionClasses classes = static_cast<unsigned>(FunctionClass::NonNegative);
  Interval domain = Interval::nonnegative();
  if (p <= 0) {
    domain = Interval::positive();
    classes = classes | FunctionClass::LogConvex | FunctionClass::Convex;
  } else if (p >= 1) {
    classes = classes | FunctionClass::Convex;
    if (p >= 2) classes = classes | FunctionClass::Superquadratic;
  }
  return FunctionDescriptor("pow:p=" + short_real(p), domain, classes, eval, {{"p", p}});
}

FunctionDescriptor constant_function(double c) {
  FunctionClasses classes = static_cast<unsigned>(FunctionClass::Convex);
  Interval domain = Interval::real_line();
  if (c > 0) classes = classes | FunctionClass::LogConvex;
  if (c >= 0) classes = classes | FunctionClass::NonNegative;
  if ((c >= -2 && c <= -1) || c == 0) {
    classes = classes | FunctionClass::Superquadratic;
    domain = Interval::nonnegative();
  }
  return FunctionDescriptor("const:c=" + short_real(c), domain, classes,
                            [c](double) { return c; }, {{"c", c}});
}

namespace {

double parse_real(std::string_view text, std::string_view spec) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("bad real '" + std::string(text) + "' in function spec '" + std::string(spec) +
                     "'");
  }
  return v;
}

// "<head>:<key>=<real>" -> real, or throws.
double parse_param(std::string_view spec, std::string_view head, std::string_view key) {
  const std::string prefix = std::string(head) + ":" + std::string(key) + "=";
  if (spec.substr(0, prefix.size()) != prefix) {
    throw ParseError("unknown function spec '" + std::string(spec) + "'");
  }
  return parse_real(spec.substr(prefix.size()), spec);
}

FunctionDescriptor with_id(FunctionDescriptor f, std::string_view id) {
  return FunctionDescriptor(std::string(id), f.domain(), f.classes(),
                            [f](double t) { return f.eval_unchecked(t); }, f.params());
}

}  // namespace

FunctionDescriptor parse_function_spec(std::string_view spec) {
  if (spec == "exp") return exp_function(1.0);
  if (spec == "recip") return with_id(power_function(-1.0), spec);
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  if (colon != std::string_view::npos) {
    if (head == "exp") return with_id(exp_function(parse_param(spec, "exp", "a")), spec);
    if (head == "pow") return with_id(power_function(parse_param(spec, "pow", "p")), spec);
    if (head == "const") return with_id(constant_function(parse_param(spec, "const", "c")), spec);
  }
  throw ParseError("unknown function spec '" + std::string(spec) + "'");
}

std::vector<FunctionDescriptor> function_registry() {
  std::vector<FunctionDescriptor> out;
  for (const char* s : {"exp", "exp:a=2", "recip", "pow:p=-2", "pow:p=2", "pow:p=3", "pow:p=2.5",
                        "const:c=-1.5"}) {
    out.push_back(parse_function_spec(s));
  }
  return out;
}

Hermitian apply_scalar_function(const Hermitian& a, const FunctionDescriptor& f) {
  return apply_function(a, [&f](double t) { return f.eval_unchecked(t); }, f.domain());
}

KfResult kf_constant(const FunctionDescriptor& f, double x, double y) {
  const double fx = f(x);
  const double fy = f(y);
  const double fmid = f(0.5 * (x + y));
  if (fx * fy == 0.0) throw DivisionByZero(f.id() + ": f(x) f(y) = 0 in K_f");
  return {fmid * fmid / (fx * fy), !f.has(FunctionClass::LogConvex)};
}

double r_alpha(double alpha) { return std::min(alpha, 1.0 - alpha); }

double tilde_t(double t, double m, double big_m) {
  if (!(big_m > m)) throw DegenerateInterval("need m < M");
  return 0.5 - std::abs(t - 0.5 * (m + big_m)) / (big_m - m);
}

bool is_equality(double lhs, double rhs) {
  return std::abs(lhs - rhs) <= 1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

LogConvexChainCheck check_logconvex_chain(const FunctionDescriptor& f, double x, double y,
                                          double alpha, double tol) {
  const double point = alpha * x + (1 - alpha) * y;
  const double fx = f(x);
  const double fy = f(y);
  const double k = kf_constant(f, x, y).value;

  LogConvexChainCheck out;
  out.reversed = alpha < 0 || alpha > 1;
  out.values[0] = f(point);
  out.values[1] = std::pow(k, r_alpha(alpha)) * std::pow(fx, alpha) * std::pow(fy, 1 - alpha);
  out.values[2] = alpha * fx + (1 - alpha) * fy;
  for (int i = 0; i < 2; ++i) {
    const double up = out.values[i + 1] - out.values[i];
    out.slack[i] = out.reversed ? -up : up;
    out.holds[i] = out.slack[i] >= -tol;
    out.equality[i] = is_equality(out.values[i], out.values[i + 1]);
  }
  return out;
}

CharacterizationCheck check_superquadratic_characterization(const FunctionDescriptor& f, double x,
                                                            double y, double alpha, double tol) {
  if (x < 0 || y < 0) throw DomainViolation("characterization needs x, y >= 0", std::min(x, y));
  if (alpha < 0 || alpha > 1) throw DomainViolation("characterization needs alpha in [0, 1]", alpha);
  const double d = std::abs(x - y);
  CharacterizationCheck out;
  out.lhs = f(alpha * x + (1 - alpha) * y);
  out.rhs = alpha * f(x) + (1 - alpha) * f(y) - alpha * f((1 - alpha) * d) -
            (1 - alpha) * f(alpha * d);
  out.slack = out.rhs - out.lhs;
  out.pass = out.slack >= -tol;
  return out;
}

DefinitionCheck check_superquadratic_definition(const FunctionDescriptor& f, double s,
                                                const std::vector<double>& t_grid, double tol) {
  if (s < 0) throw DomainViolation("definition check needs s >= 0", s);
  auto g = [&](double t) { return f(t) - f(std::abs(t - s)); };
  const double h = 1e-6 * std::max(1.0, s);
  DefinitionCheck out;
  // One-sided at the origin, where s - h leaves [0, inf).
  out.c_s = s - h >= 0 ? (g(s + h) - g(s - h)) / (2 * h) : (g(s + h) - g(s)) / h;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    if (t < 0) throw DomainViolation("definition check needs t >= 0", t);
    const double slack = f(t) - f(s) - f(std::abs(t - s)) - out.c_s * (t - s);
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_t = t;
    }
  }
  out.pass = out.worst_slack >= -tol;
  return out;
}

}  // namespace loewner
