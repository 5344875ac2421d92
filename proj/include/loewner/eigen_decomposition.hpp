#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Jacobi>

#include "loewner/hermitian.hpp"

namespace loewner {

template <typename Real>
struct EigenDecomposition {
  typename HermitianMatrix<Real>::RealVector eigenvalues;  // ascending
  typename HermitianMatrix<Real>::Dense vectors;           // orthonormal columns
  int sweeps = 0;

  HermitianMatrix<Real> reconstruct() const {
    return HermitianMatrix<Real>::from_spectrum(vectors, eigenvalues);
  }
};

struct JacobiSettings {
  double relative_tolerance = 1e-13;  // off(A)_F <= tol * ||A||_F
  int max_sweeps = 64;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation is the complex 2x2 Jacobi rotation J with J* B J diagonal
/// for the (p, q) principal block B. Sweeps visit every pair in row order.
/// Throws NonConvergence once the sweep budget is spent.
template <typename Real>
EigenDecomposition<Real> eigendecompose(const HermitianMatrix<Real>& a,
                                        const JacobiSettings& settings = {}) {
  using Dense = typename HermitianMatrix<Real>::Dense;
  using Index = Eigen::Index;
  const Index n = a.dim();

  Dense work = a.dense();
  Dense v = Dense::Identity(n, n);
  const Real target = Real(settings.relative_tolerance) * a.frobenius_norm();

  auto off_norm = [&] {
    Real s = 0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(work(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  while (off_norm() > target) {
    if (sweep == settings.max_sweeps) {
      throw NonConvergence("Jacobi eigensolver did not converge in " +
                           std::to_string(settings.max_sweeps) + " sweeps");
    }
    ++sweep;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        if (work(p, q) == typename HermitianMatrix<Real>::Scalar(0)) continue;
        Eigen::JacobiRotation<typename HermitianMatrix<Real>::Scalar> rot;
        rot.makeJacobi(work, p, q);
        work.applyOnTheLeft(p, q, rot.adjoint());
        work.applyOnTheRight(p, q, rot);
        v.applyOnTheRight(p, q, rot);
        work(p, q) = work(q, p) = 0;
      }
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    return work(i, i).real() < work(j, j).real();
  });

  EigenDecomposition<Real> out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = work(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

template <typename Real>
typename HermitianMatrix<Real>::RealVector eigenvalues(const HermitianMatrix<Real>& a) {
  return eigendecompose(a).eigenvalues;
}

/// (lambda_min, lambda_max)
template <typename Real>
std::pair<Real, Real> spectral_bounds(const HermitianMatrix<Real>& a) {
  const auto ev = eigenvalues(a);
  return {ev(0), ev(ev.size() - 1)};
}

}  // namespace loewner
