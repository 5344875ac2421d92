#pragma once

#include <algorithm>
#include <string_view>

#include "loewner/eigen_decomposition.hpp"

namespace loewner {

enum class LoewnerRelation { LessOrEqual, GreaterOrEqual, Equal, Incomparable };

constexpr std::string_view to_string(LoewnerRelation r) {
  switch (r) {
    case LoewnerRelation::LessOrEqual: return "less_or_equal";
    case LoewnerRelation::GreaterOrEqual: return "greater_or_equal";
    case LoewnerRelation::Equal: return "equal";
    case LoewnerRelation::Incomparable: return "incomparable";
  }
  return "incomparable";
}

inline constexpr double kDefaultPsdTolerance = 1e-9;

struct LoewnerVerdict {
  LoewnerRelation relation = LoewnerRelation::Incomparable;
  double min_eigenvalue_of_difference = 0;  // lambda_min(B - A)
  double max_eigenvalue_of_difference = 0;  // lambda_max(B - A)
  double tolerance_used = 0;                // absolute, after scaling

  bool leq() const {
    return relation == LoewnerRelation::LessOrEqual || relation == LoewnerRelation::Equal;
  }
  bool geq() const {
    return relation == LoewnerRelation::GreaterOrEqual || relation == LoewnerRelation::Equal;
  }
};

/// Absolute PSD tolerance for comparing `a` and `b`: tol * max(1, ||a||_F + ||b||_F).
template <typename Real>
double effective_tolerance(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b,
                           double tol) {
  return tol * std::max(1.0, static_cast<double>(a.frobenius_norm() + b.frobenius_norm()));
}

/// Compares A and B in the Loewner order through the spectrum of B - A.
template <typename Real>
LoewnerVerdict loewner_leq(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b,
                           double tol = kDefaultPsdTolerance) {
  check_same_dim(a, b);
  const auto [lo, hi] = spectral_bounds(b - a);
  LoewnerVerdict v;
  v.min_eigenvalue_of_difference = static_cast<double>(lo);
  v.max_eigenvalue_of_difference = static_cast<double>(hi);
  v.tolerance_used = effective_tolerance(a, b, tol);
  const bool le = v.min_eigenvalue_of_difference >= -v.tolerance_used;
  const bool ge = v.max_eigenvalue_of_difference <= v.tolerance_used;
  if (le && ge) {
    v.relation = LoewnerRelation::Equal;
  } else if (le) {
    v.relation = LoewnerRelation::LessOrEqual;
  } else if (ge) {
    v.relation = LoewnerRelation::GreaterOrEqual;
  }
  return v;
}

template <typename Real>
bool is_psd(const HermitianMatrix<Real>& a, double tol = kDefaultPsdTolerance) {
  return loewner_leq(HermitianMatrix<Real>::zero(a.dim()), a, tol).leq();
}

}  // namespace loewner
