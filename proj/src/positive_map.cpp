#include "loewner/positive_map.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "loewner/eigen_decomposition.hpp"
#include "loewner/loewner_order.hpp"
#include "loewner/matrix_io.hpp"

namespace loewner {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate(const IdentityMap& m) {
  if (m.dim < 1) throw DimensionMismatch("identity map needs dim >= 1");
}

void validate(const PinchingMap& m) {
  if (m.dim < 1) throw DimensionMismatch("pinching needs dim >= 1");
  std::vector<int> seen(m.dim, 0);
  for (const auto& block : m.blocks) {
    if (block.empty()) throw Error("pinching block is empty");
    for (auto i : block) {
      if (i < 0 || i >= m.dim) throw DimensionMismatch("pinching index out of range");
      ++seen[i];
    }
  }
  for (int c : seen) {
    if (c != 1) throw Error("pinching blocks must partition {0..dim-1}");
  }
}

void validate(const CompressionMap& m) {
  if (m.isometry.rows() < 1 || m.isometry.cols() < 1 || m.isometry.cols() > m.isometry.rows()) {
    throw DimensionMismatch("compression needs an n x k matrix with 1 <= k <= n");
  }
}

void validate(const MixedUnitaryMap& m) {
  if (m.weights.empty() || m.weights.size() != m.unitaries.size()) {
    throw Error("mixed-unitary map needs one weight per unitary");
  }
  double total = 0;
  for (double w : m.weights) {
    if (!(w > 0)) throw Error("mixed-unitary weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > kMapTolerance) throw Error("mixed-unitary weights must sum to 1");
  const auto n = m.unitaries.front().rows();
  for (const auto& u : m.unitaries) {
    if (u.rows() != n || u.cols() != n) throw DimensionMismatch("unitaries must share one size");
  }
}

}  // namespace

PositiveUnitalMap::PositiveUnitalMap(Kind kind) : kind_(std::move(kind)) {
  std::visit([](const auto& k) { validate(k); }, kind_);
}

std::string PositiveUnitalMap::kind_name() const {
  return std::visit(overloaded{[](const IdentityMap&) { return "identity"; },
                               [](const PinchingMap&) { return "pinching"; },
                               [](const CompressionMap&) { return "compression"; },
                               [](const MixedUnitaryMap&) { return "mixed"; }},
                    kind_);
}

Eigen::Index PositiveUnitalMap::input_dim() const {
  return std::visit(overloaded{[](const IdentityMap& m) { return m.dim; },
                               [](const PinchingMap& m) { return m.dim; },
                               [](const CompressionMap& m) { return m.isometry.rows(); },
                               [](const MixedUnitaryMap& m) { return m.unitaries.front().rows(); }},
                    kind_);
}

Eigen::Index PositiveUnitalMap::output_dim() const {
  if (const auto* c = std::get_if<CompressionMap>(&kind_)) return c->isometry.cols();
  return input_dim();
}

Hermitian PositiveUnitalMap::operator()(const Hermitian& a) const {
  if (a.dim() != input_dim()) {
    throw DimensionMismatch("map expects dim " + std::to_string(input_dim()) + ", got " +
                            std::to_string(a.dim()));
  }
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return a; },
          [&](const PinchingMap& m) {
            DenseMatrix out = DenseMatrix::Zero(a.dim(), a.dim());
            for (const auto& block : m.blocks)
              for (auto i : block)
                for (auto j : block) out(i, j) = a(i, j);
            return Hermitian::project(out);
          },
          [&](const CompressionMap& m) {
            return Hermitian::project(m.isometry.adjoint() * a.dense() * m.isometry);
          },
          [&](const MixedUnitaryMap& m) {
            DenseMatrix out = DenseMatrix::Zero(a.dim(), a.dim());
            for (std::size_t j = 0; j < m.weights.size(); ++j) {
              out += m.weights[j] * (m.unitaries[j] * a.dense() * m.unitaries[j].adjoint());
            }
            return Hermitian::project(out);
          }},
      kind_);
}

Hermitian apply_map(const PositiveUnitalMap& phi, const Hermitian& a) { return phi(a); }

MapFamily::MapFamily(std::vector<FamilyMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error("map family needs at least one member");
  for (const auto& m : members_) {
    if (!(m.weight > 0)) throw Error("family weights must be positive");
    if (m.map.input_dim() != input_dim() || m.map.output_dim() != output_dim()) {
      throw DimensionMismatch("family members must share input and output dimensions");
    }
  }
}

Hermitian MapFamily::apply(std::size_t i, const Hermitian& a) const {
  return members_.at(i).weight * members_[i].map(a);
}

Hermitian MapFamily::apply_sum(const std::vector<Hermitian>& a) const {
  if (a.size() != members_.size()) {
    throw DimensionMismatch("family of size " + std::to_string(members_.size()) + " applied to " +
                            std::to_string(a.size()) + " operators");
  }
  Hermitian total = apply(0, a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) total += apply(i, a[i]);
  return total;
}

double family_unital_deviation(const MapFamily& family) {
  std::vector<Hermitian> ids(family.size(), Hermitian::identity(family.input_dim()));
  return frobenius_distance(family.apply_sum(ids), Hermitian::identity(family.output_dim()));
}

UnitalReport verify_unital(const PositiveUnitalMap& phi, int samples, std::uint64_t seed,
                           double tol) {
  Rng rng(seed);
  const auto n = phi.input_dim();
  UnitalReport r;
  r.samples = samples;
  r.unital_deviation =
      frobenius_distance(phi(Hermitian::identity(n)), Hermitian::identity(phi.output_dim()));
  for (int s = 0; s < samples; ++s) {
    const Hermitian a = random_hermitian(n, rng);
    const Hermitian b = random_hermitian(n, rng);
    const double c = rng.normal();
    const double scale = std::max(1.0, a.frobenius_norm() + std::abs(c) * b.frobenius_norm());
    const double lin = frobenius_distance(phi(a + c * b), phi(a) + c * phi(b)) / scale;
    r.linearity_deviation = std::max(r.linearity_deviation, lin);

    const Hermitian p = random_psd(n, 1.0 + rng.uniform(), rng);
    const double lo = spectral_bounds(phi(p)).first / std::max(1.0, p.frobenius_norm());
    r.positivity_min_eigenvalue = std::min(r.positivity_min_eigenvalue, lo);
  }
  r.unital = r.unital_deviation <= tol;
  r.linear = r.linearity_deviation <= tol;
  r.positive = r.positivity_min_eigenvalue >= -tol;
  return r;
}

// --- specs -------------------------------------------------------------------

namespace {

std::int64_t parse_int(std::string_view text, std::string_view spec) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad integer '" + std::string(text) + "' in map spec '" + std::string(spec) +
                     "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Random set partition of {0..n-1}: each index joins an existing block or
// opens a new one with equal odds.
std::vector<std::vector<Eigen::Index>> random_partition(Eigen::Index n, Rng& rng) {
  std::vector<std::vector<Eigen::Index>> blocks;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto choice = rng.uniform_int(0, static_cast<std::int64_t>(blocks.size()));
    if (choice == static_cast<std::int64_t>(blocks.size())) {
      blocks.push_back({i});
    } else {
      blocks[choice].push_back(i);
    }
  }
  return blocks;
}

}  // namespace

std::string MapSpec::to_string() const {
  std::ostringstream os;
  os << kind;
  if (blocks) {
    os << ":blocks=";
    for (std::size_t b = 0; b < blocks->size(); ++b) {
      if (b) os << '|';
      for (std::size_t i = 0; i < (*blocks)[b].size(); ++i) os << (i ? "," : "") << (*blocks)[b][i];
    }
  }
  if (k) os << ":k=" << *k;
  if (count) os << ":count=" << *count;
  if (family_size) os << ":n=" << *family_size;
  return os.str();
}

MapSpec parse_map_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  MapSpec out;
  out.kind = std::string(spec.substr(0, colon));
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto value_of = [&](std::string_view key) -> std::string_view {
    const std::string prefix = std::string(key) + "=";
    if (rest.substr(0, prefix.size()) != prefix) {
      throw ParseError("map spec '" + std::string(spec) + "' expects '" + prefix + "'");
    }
    return rest.substr(prefix.size());
  };
  const bool bare = colon == std::string_view::npos;

  if (out.kind == "identity") {
    if (!bare) throw ParseError("identity takes no parameters");
  } else if (out.kind == "pinching") {
    if (!bare) {
      std::vector<std::vector<Eigen::Index>> blocks;
      for (auto b : split(value_of("blocks"), '|')) {
        std::vector<Eigen::Index> block;
        for (auto i : split(b, ',')) block.push_back(parse_int(i, spec));
        blocks.push_back(std::move(block));
      }
      out.blocks = std::move(blocks);
    }
  } else if (out.kind == "compression") {
    if (!bare) out.k = parse_int(value_of("k"), spec);
  } else if (out.kind == "mixed") {
    if (!bare) out.count = static_cast<int>(parse_int(value_of("count"), spec));
  } else if (out.kind == "family") {
    out.family_size = static_cast<int>(parse_int(value_of("n"), spec));
    if (*out.family_size < 1) throw ParseError("family needs n >= 1");
  } else {
    throw UnknownKind("unknown map kind '" + out.kind + "'");
  }
  return out;
}

PositiveUnitalMap sample_map(const MapSpec& spec, Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw DimensionMismatch("sample_map needs dim >= 1");
  if (spec.kind == "identity") return PositiveUnitalMap::identity(dim);
  if (spec.kind == "pinching") {
    return PositiveUnitalMap(PinchingMap{dim, spec.blocks ? *spec.blocks : random_partition(dim, rng)});
  }
  if (spec.kind == "compression") {
    const Eigen::Index k = spec.k ? *spec.k : rng.uniform_int(1, dim);
    if (k < 1 || k > dim) throw DimensionMismatch("compression needs 1 <= k <= dim");
    return PositiveUnitalMap(CompressionMap{random_isometry(dim, k, rng)});
  }
  if (spec.kind == "mixed") {
    const int count = spec.count ? *spec.count : 3;
    if (count < 1) throw Error("mixed needs count >= 1");
    MixedUnitaryMap m;
    m.weights = simplex_weights(count, rng);
    for (int j = 0; j < count; ++j) m.unitaries.push_back(eigendecompose(random_hermitian(dim, rng)).vectors);
    return PositiveUnitalMap(std::move(m));
  }
  throw UnknownKind("cannot sample a single map of kind '" + spec.kind + "'");
}

PositiveUnitalMap sample_map(std::string_view spec, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return sample_map(parse_map_spec(spec), dim, rng);
}

MapFamily sample_map_family(std::size_t n, Eigen::Index dim, Rng& rng) {
  if (n < 1) throw Error("family needs n >= 1");
  const auto weights = simplex_weights(n, rng);
  // Common output dimension; below dim every member has to be a compression.
  const Eigen::Index k = rng.uniform_int(1, dim);
  static const char* kKinds[] = {"identity", "pinching", "compression", "mixed"};
  std::vector<FamilyMember> members;
  for (std::size_t i = 0; i < n; ++i) {
    MapSpec spec;
    if (k < dim) {
      spec.kind = "compression";
    } else {
      spec.kind = kKinds[rng.uniform_int(0, 3)];
    }
    if (spec.kind == "compression") spec.k = k;
    members.push_back({weights[i], sample_map(spec, dim, rng)});
  }
  return MapFamily(std::move(members));
}

MapFamily sample_map_family(std::size_t n, Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  return sample_map_family(n, dim, rng);
}

// --- JSON --------------------------------------------------------------------

nlohmann::json to_json(const PositiveUnitalMap& phi) {
  nlohmann::json j;
  j["kind"] = phi.kind_name();
  std::visit(overloaded{[&](const IdentityMap& m) { j["dim"] = m.dim; },
                        [&](const PinchingMap& m) {
                          j["dim"] = m.dim;
                          j["blocks"] = m.blocks;
                        },
                        [&](const CompressionMap& m) { j["isometry"] = dense_to_json(m.isometry); },
                        [&](const MixedUnitaryMap& m) {
                          j["weights"] = m.weights;
                          j["unitaries"] = nlohmann::json::array();
                          for (const auto& u : m.unitaries) j["unitaries"].push_back(dense_to_json(u));
                        }},
             phi.kind());
  return j;
}

PositiveUnitalMap map_from_json(const nlohmann::json& j, std::optional<Eigen::Index> input_dim) {
  if (j.is_string()) {
    const auto spec = parse_map_spec(j.get<std::string>());
    if (spec.kind == "identity") {
      if (!input_dim) throw ParseError("'identity' map string needs a known input dimension");
      return PositiveUnitalMap::identity(*input_dim);
    }
    if (spec.kind == "pinching" && spec.blocks) {
      Eigen::Index n = 0;
      for (const auto& b : *spec.blocks) n += static_cast<Eigen::Index>(b.size());
      return PositiveUnitalMap(PinchingMap{n, *spec.blocks});
    }
    throw ParseError("map string '" + j.get<std::string>() +
                     "' is random; store the sampled map object instead");
  }
  if (!j.is_object() || !j.contains("kind")) throw ParseError("map object needs 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "identity") return PositiveUnitalMap::identity(j.at("dim").get<Eigen::Index>());
  if (kind == "pinching") {
    return PositiveUnitalMap(PinchingMap{
        j.at("dim").get<Eigen::Index>(), j.at("blocks").get<std::vector<std::vector<Eigen::Index>>>()});
  }
  if (kind == "compression") return PositiveUnitalMap(CompressionMap{dense_from_json(j.at("isometry"))});
  if (kind == "mixed") {
    MixedUnitaryMap m;
    m.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& u : j.at("unitaries")) m.unitaries.push_back(dense_from_json(u));
    return PositiveUnitalMap(std::move(m));
  }
  throw UnknownKind("unknown map kind '" + kind + "'");
}

nlohmann::json to_json(const MapFamily& family) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& m : family.members()) j.push_back({{"weight", m.weight}, {"map", to_json(m.map)}});
  return j;
}

MapFamily family_from_json(const nlohmann::json& j, std::optional<Eigen::Index> input_dim) {
  if (!j.is_array()) throw ParseError("family must be an array of {weight, map}");
  std::vector<FamilyMember> members;
  for (const auto& m : j) members.push_back({m.at("weight").get<double>(), map_from_json(m.at("map"), input_dim)});
  return MapFamily(std::move(members));
}

}  // namespace loewner
