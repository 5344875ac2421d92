#include "loewner/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace loewner {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(static_cast<std::uint64_t>(uniform() * span) % span);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

DenseMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  DenseMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
    }
  return g;
}

DenseMatrix random_isometry(Eigen::Index n, Eigen::Index k, Rng& rng) {
  const DenseMatrix g = complex_gaussian(n, k, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(n, k);
  const DenseMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

DenseMatrix random_unitary(Eigen::Index n, Rng& rng) { return random_isometry(n, n, rng); }

Hermitian random_hermitian(Eigen::Index n, Rng& rng) {
  return Hermitian::project(complex_gaussian(n, n, rng));
}

Hermitian random_with_spectrum(const std::vector<double>& values, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(values.size());
  const DenseMatrix u = random_unitary(n, rng);
  return Hermitian::from_spectrum(u, Eigen::Map<const Eigen::VectorXd>(values.data(), n));
}

Hermitian random_psd(Eigen::Index n, double scale, Rng& rng) {
  std::vector<double> values(n);
  for (auto& v : values) v = rng.uniform(0.0, scale);
  return random_with_spectrum(values, rng);
}

std::vector<double> simplex_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  double total = 0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace loewner
