#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "loewner/hermitian.hpp"
#include "loewner/random.hpp"

namespace loewner {

struct IdentityMap {
  Eigen::Index dim = 1;
};

/// Zeroes every entry (i, j) whose indices fall in different blocks.
struct PinchingMap {
  Eigen::Index dim = 1;
  std::vector<std::vector<Eigen::Index>> blocks;
};

/// A -> V* A V for an n x k matrix V (unital iff V* V = I).
struct CompressionMap {
  DenseMatrix isometry;
};

/// A -> sum_j w_j U_j A U_j*.
struct MixedUnitaryMap {
  std::vector<double> weights;
  std::vector<DenseMatrix> unitaries;
};

/// One of the four concrete positive linear maps.
class PositiveUnitalMap {
 public:
  using Kind = std::variant<IdentityMap, PinchingMap, CompressionMap, MixedUnitaryMap>;

  /// Validates structure (partition, shapes, weights). Isometry of a
  /// compression is not enforced here; verify_unital() reports it.
  explicit PositiveUnitalMap(Kind kind);

  static PositiveUnitalMap identity(Eigen::Index dim) { return PositiveUnitalMap(IdentityMap{dim}); }

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;
  Eigen::Index input_dim() const;
  Eigen::Index output_dim() const;

  Hermitian operator()(const Hermitian& a) const;

 private:
  Kind kind_;
};

Hermitian apply_map(const PositiveUnitalMap& phi, const Hermitian& a);

/// Sub-unital member of a family: A -> weight * map(A).
struct FamilyMember {
  double weight = 1.0;
  PositiveUnitalMap map;
};

/// {Phi_i} with sum_i Phi_i(I) = I.
class MapFamily {
 public:
  explicit MapFamily(std::vector<FamilyMember> members);

  std::size_t size() const { return members_.size(); }
  const std::vector<FamilyMember>& members() const { return members_; }
  Eigen::Index input_dim() const { return members_.front().map.input_dim(); }
  Eigen::Index output_dim() const { return members_.front().map.output_dim(); }

  /// Phi_i(a)
  Hermitian apply(std::size_t i, const Hermitian& a) const;
  /// sum_i Phi_i(a_i)
  Hermitian apply_sum(const std::vector<Hermitian>& a) const;

 private:
  std::vector<FamilyMember> members_;
};

struct UnitalReport {
  double unital_deviation = 0;      // ||Phi(I) - I||_F
  double linearity_deviation = 0;   // worst relative ||Phi(A+cB) - Phi(A) - c Phi(B)||_F
  double positivity_min_eigenvalue = 0;  // worst relative lambda_min(Phi(P)), P >= 0
  int samples = 0;
  bool unital = false;
  bool linear = false;
  bool positive = false;
  bool pass() const { return unital && linear && positive; }
};

inline constexpr double kMapTolerance = 1e-12;

UnitalReport verify_unital(const PositiveUnitalMap& phi, int samples, std::uint64_t seed,
                           double tol = kMapTolerance);

/// ||sum_i Phi_i(I) - I||_F
double family_unital_deviation(const MapFamily& family);

// --- sampling and specs ------------------------------------------------------

/// Parsed form of "identity", "pinching[:blocks=0,1|2,3]", "compression[:k=<int>]",
/// "mixed[:count=<int>]", or "family:n=<int>".
struct MapSpec {
  std::string kind;  // identity | pinching | compression | mixed | family
  std::optional<std::vector<std::vector<Eigen::Index>>> blocks;
  std::optional<Eigen::Index> k;
  std::optional<int> count;
  std::optional<int> family_size;

  bool is_family() const { return kind == "family"; }
  std::string to_string() const;
};

MapSpec parse_map_spec(std::string_view spec);

PositiveUnitalMap sample_map(const MapSpec& spec, Eigen::Index dim, Rng& rng);
PositiveUnitalMap sample_map(std::string_view spec, Eigen::Index dim, std::uint64_t seed);

/// n maps A -> w_i Psi_i(A), Psi_i unital with a common output dimension and
/// w on the flat simplex.
MapFamily sample_map_family(std::size_t n, Eigen::Index dim, Rng& rng);
MapFamily sample_map_family(std::size_t n, Eigen::Index dim, std::uint64_t seed);

nlohmann::json to_json(const PositiveUnitalMap& phi);
/// Accepts a full map object, or a spec string that needs no randomness
/// ("identity", "pinching:blocks=..."); `input_dim` resolves "identity".
PositiveUnitalMap map_from_json(const nlohmann::json& j, std::optional<Eigen::Index> input_dim = {});
nlohmann::json to_json(const MapFamily& family);
MapFamily family_from_json(const nlohmann::json& j, std::optional<Eigen::Index> input_dim = {});

}  // namespace loewner
