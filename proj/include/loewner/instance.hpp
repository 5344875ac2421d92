#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "loewner/hermitian.hpp"
#include "loewner/positive_map.hpp"
#include "loewner/random.hpp"

namespace loewner {

/// How A + D compares to B + C in the Loewner order.
enum class SumRelation {
  EqualSum,  // A + D = B + C
  SumLeq,    // B + C <= A + D
  SumGeq,    // A + D <= B + C
};

std::string_view to_string(SumRelation r);
SumRelation parse_sum_relation(std::string_view s);

/// Operators with A <= m <= B, C <= M <= D and a declared sum relation.
struct QuadrupleInstance {
  Hermitian a, b, c, d;
  double lower = 0;  // m
  double upper = 1;  // M
  SumRelation relation = SumRelation::EqualSum;
  bool require_nonnegative_a = false;

  Eigen::Index dim() const { return a.dim(); }
};

/// (A, D) with A <= m <= (A + D) / 2 <= M <= D.
struct MidpointInstance {
  Hermitian a, d;
  double lower = 0;
  double upper = 1;
  bool require_nonnegative_a = false;

  Hermitian midpoint() const { return 0.5 * (a + d); }
  /// The equal-sum quadruple (A, X, X, D) with X = (A + D) / 2.
  QuadrupleInstance as_quadruple() const;
};

/// n equal-sum quadruples sharing (m, M), plus a family {Phi_i}.
struct MultiInstance {
  std::vector<QuadrupleInstance> quads;
  MapFamily family;
  double lower = 0;
  double upper = 1;
};

/// B_1..B_n with spectra in [m, M] and a family {Phi_i}. C_i = (M + m) I - B_i.
struct MercerInstance {
  std::vector<Hermitian> b_list;
  double lower = 0;
  double upper = 1;
  MapFamily family;

  std::vector<Hermitian> reflected() const;
  /// The multi-instance with A_i = m I, C_i = (M + m) I - B_i, D_i = M I.
  MultiInstance as_multi() const;
};

using AnyInstance = std::variant<QuadrupleInstance, MidpointInstance, MultiInstance, MercerInstance>;

// --- sampling ----------------------------------------------------------------

inline constexpr int kMaxSampleAttempts = 1000;
inline constexpr double kNoFloor = -std::numeric_limits<double>::infinity();

/// Eigenvalues uniform in [lo, hi], conjugated by a Haar unitary.
Hermitian sample_sandwiched_matrix(Eigen::Index dim, double lo, double hi, Rng& rng);

struct QuadrupleRequest {
  Eigen::Index dim = 1;
  double lower = 0;
  double upper = 1;
  SumRelation relation = SumRelation::EqualSum;
  bool nonneg_a = false;
  /// Lower bound on lambda_min(A), e.g. to stay inside an open domain.
  double a_floor = kNoFloor;
  /// Spread of the PSD slack subtracted from A; default 0.25 (M - m).
  std::optional<double> q_scale;
};

/// Equal sums are built exactly: S = B + C, P0 = (M+m - S)_+, A = mI - P0 - Q,
/// D = S - A. Inequality relations sample A and D independently and retry.
/// Throws ExhaustedRetries after kMaxSampleAttempts.
QuadrupleInstance sample_quadruple(const QuadrupleRequest& request, Rng& rng);

MidpointInstance sample_midpoint(Eigen::Index dim, double lower, double upper, bool nonneg_a,
                                 double a_floor, Rng& rng);

MultiInstance sample_multi_instance(std::size_t n, Eigen::Index dim, double lower, double upper,
                                    bool nonneg_a, double a_floor, Rng& rng);

MercerInstance sample_mercer_family(std::size_t n, Eigen::Index dim, double lower, double upper,
                                    Rng& rng);

// --- validation --------------------------------------------------------------

struct Violation {
  std::string constraint;  // e.g. "lambda_max(A) > m"
  double eigenvalue = 0;   // offending eigenvalue (or deviation)
};

inline constexpr double kInstanceTolerance = 1e-10;

std::vector<Violation> validate_instance(const QuadrupleInstance& inst, double tol = kInstanceTolerance);
std::vector<Violation> validate_instance(const MidpointInstance& inst, double tol = kInstanceTolerance);
std::vector<Violation> validate_instance(const MultiInstance& inst, double tol = kInstanceTolerance);
std::vector<Violation> validate_instance(const MercerInstance& inst, double tol = kInstanceTolerance);
std::vector<Violation> validate_instance(const AnyInstance& inst, double tol = kInstanceTolerance);

/// Spectral constraints only; the declared sum relation is not checked.
std::vector<Violation> validate_spectra(const QuadrupleInstance& inst, double tol = kInstanceTolerance);

// --- files -------------------------------------------------------------------

nlohmann::json to_json(const QuadrupleInstance& inst);
nlohmann::json to_json(const MidpointInstance& inst);
nlohmann::json to_json(const MultiInstance& inst);
nlohmann::json to_json(const MercerInstance& inst);
nlohmann::json to_json(const AnyInstance& inst);

/// Detects the instance shape from its keys: "B_list" (Mercer), "quads"
/// (multi), "B" (quadruple), otherwise "A"/"D" (midpoint).
AnyInstance instance_from_json(const nlohmann::json& j);

std::string_view shape_name(const AnyInstance& inst);

}  // namespace loewner
