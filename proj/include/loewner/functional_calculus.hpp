#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "loewner/eigen_decomposition.hpp"

namespace loewner {

/// Real interval with independently open or closed ends. Infinite ends are
/// always treated as open.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval real_line() { return {}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval nonnegative() { return {0.0, std::numeric_limits<double>::infinity(), true, false}; }
  static Interval positive() { return {0.0, std::numeric_limits<double>::infinity(), false, false}; }

  bool contains(double t) const {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }

  /// Sub-interval test, respecting open/closed ends.
  bool within(const Interval& outer) const {
    const bool lo_ok = lo > outer.lo || (lo == outer.lo && (outer.lo_closed || !lo_closed));
    const bool hi_ok = hi < outer.hi || (hi == outer.hi && (outer.hi_closed || !hi_closed));
    return lo_ok && hi_ok;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
    return os.str();
  }
};

/// Relative width of the band next to a closed domain end inside which
/// eigenvalues are snapped onto the end before evaluation.
inline constexpr double kBoundaryClampTolerance = 1e-12;

/// Snaps `t` onto a closed end of `domain` when it lies within `band` of it.
/// Returns NaN when `t` is outside the domain after snapping.
inline double clamp_into(const Interval& domain, double t, double band) {
  if (domain.lo_closed && t < domain.lo && t >= domain.lo - band) t = domain.lo;
  if (domain.hi_closed && t > domain.hi && t <= domain.hi + band) t = domain.hi;
  return domain.contains(t) ? t : std::numeric_limits<double>::quiet_NaN();
}

/// f(A) = V diag(f(lambda)) V*, for a scalar callable f on `domain`.
/// Throws DomainViolation naming the first eigenvalue outside the domain.
template <typename Real, typename F>
HermitianMatrix<Real> apply_function(const HermitianMatrix<Real>& a, F&& f,
                                     const Interval& domain = Interval::real_line()) {
  auto eig = eigendecompose(a);
  const double band = kBoundaryClampTolerance * a.frobenius_norm();
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = static_cast<double>(eig.eigenvalues(i));
    const double t = clamp_into(domain, lambda, band);
    if (std::isnan(t)) {
      throw DomainViolation("eigenvalue " + std::to_string(lambda) + " outside domain " +
                                domain.to_string(),
                            lambda);
    }
    // Keep full Real precision unless the value was snapped to an end.
    const Real arg = t == lambda ? eig.eigenvalues(i) : Real(t);
    eig.eigenvalues(i) = static_cast<Real>(f(arg));
  }
  return eig.reconstruct();
}

/// Functional calculus of t -> max(t, 0).
template <typename Real>
HermitianMatrix<Real> positive_part(const HermitianMatrix<Real>& a) {
  return apply_function(a, [](Real t) { return t > Real(0) ? t : Real(0); });
}

}  // namespace loewner
