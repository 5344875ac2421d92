#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "loewner/hermitian.hpp"

namespace loewner {

/// Counter-based generator: the n-th draw is splitmix64(key + n * gamma).
///
/// split(stream) derives an independent child key, so a campaign can hand
/// each (cell, instance) its own stream and reproduce serial output under
/// any parallel schedule. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  Rng split(std::uint64_t stream) const {
    Rng child(0);
    child.key_ = mix(key_ ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    return child;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal (Box-Muller, one value per call).
  double normal();

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// n x k matrix with i.i.d. standard complex Gaussian entries.
DenseMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian with phases fixed.
DenseMatrix random_unitary(Eigen::Index n, Rng& rng);

/// n x k matrix with orthonormal columns (orthonormalized Gaussian columns).
DenseMatrix random_isometry(Eigen::Index n, Eigen::Index k, Rng& rng);

/// (G + G*) / 2 for a complex Gaussian G.
Hermitian random_hermitian(Eigen::Index n, Rng& rng);

/// U diag(values) U* for a Haar unitary U.
Hermitian random_with_spectrum(const std::vector<double>& values, Rng& rng);

/// PSD matrix with eigenvalues uniform in [0, scale].
Hermitian random_psd(Eigen::Index n, double scale, Rng& rng);

/// Flat Dirichlet sample: n positive weights summing to one.
std::vector<double> simplex_weights(std::size_t n, Rng& rng);

}  // namespace loewner
