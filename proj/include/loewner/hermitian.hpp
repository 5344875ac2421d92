#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loewner/errors.hpp"

namespace loewner {

/// Dense complex Hermitian matrix over the real scalar type `Real`.
///
/// The stored matrix is exactly Hermitian: every constructor path ends with
/// the projection (X + X*) / 2 and a real diagonal. Inputs that are too far
/// from Hermitian are rejected by from_dense(); computed results go through
/// project() unconditionally.
template <typename Real>
class HermitianMatrix {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  using Index = Eigen::Index;

  /// Relative asymmetry accepted by from_dense().
  static constexpr Real kAsymmetryTolerance = Real(1e-12);

  /// Validates and symmetrizes. Throws NotHermitian when
  /// ||X - X*||_F > kAsymmetryTolerance * ||X||_F.
  static HermitianMatrix from_dense(const Dense& x) {
    check_square(x);
    const Real asym = (x - x.adjoint()).norm();
    if (asym > kAsymmetryTolerance * x.norm()) {
      throw NotHermitian("matrix is not Hermitian: ||X - X*||_F = " +
                         std::to_string(static_cast<double>(asym)));
    }
    return project(x);
  }

  /// Hermitian part (X + X*) / 2 with no tolerance check.
  static HermitianMatrix project(const Dense& x) {
    check_square(x);
    HermitianMatrix h;
    h.m_ = (x + x.adjoint()) * Real(0.5);
    for (Index i = 0; i < h.m_.rows(); ++i) h.m_(i, i) = Scalar(h.m_(i, i).real(), 0);
    return h;
  }

  static HermitianMatrix from_real(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& x) {
    return from_dense(x.template cast<Scalar>());
  }

  static HermitianMatrix identity(Index n) { return scalar(n, Real(1)); }
  static HermitianMatrix zero(Index n) { return scalar(n, Real(0)); }

  static HermitianMatrix scalar(Index n, Real c) {
    check_dim(n);
    HermitianMatrix h;
    h.m_ = Dense::Identity(n, n) * Scalar(c, 0);
    return h;
  }

  static HermitianMatrix diagonal(const std::vector<Real>& d) {
    check_dim(static_cast<Index>(d.size()));
    HermitianMatrix h;
    h.m_ = Dense::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) h.m_(i, i) = Scalar(d[i], 0);
    return h;
  }

  /// V diag(values) V*, projected onto the Hermitian matrices.
  static HermitianMatrix from_spectrum(const Dense& vectors, const RealVector& values) {
    return project(vectors * values.template cast<Scalar>().asDiagonal() * vectors.adjoint());
  }

  Index dim() const { return m_.rows(); }
  const Dense& dense() const { return m_; }
  Scalar operator()(Index i, Index j) const { return m_(i, j); }
  Real frobenius_norm() const { return m_.norm(); }
  Real trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    check_same_dim(*this, o);
    m_ += o.m_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    check_same_dim(*this, o);
    m_ -= o.m_;
    return *this;
  }
  HermitianMatrix& operator*=(Real c) {
    m_ *= c;
    return *this;
  }

  /// this + c I
  HermitianMatrix shifted(Real c) const {
    HermitianMatrix h = *this;
    h.m_.diagonal().array() += Scalar(c, 0);
    return h;
  }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator-(HermitianMatrix a) {
    a.m_ = -a.m_;
    return a;
  }
  friend HermitianMatrix operator*(Real c, HermitianMatrix a) { return a *= c; }
  friend HermitianMatrix operator*(HermitianMatrix a, Real c) { return a *= c; }
  friend HermitianMatrix operator/(HermitianMatrix a, Real c) { return a *= Real(1) / c; }

  /// Bitwise equality of the stored entries.
  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

  template <typename Other>
  HermitianMatrix<Other> cast() const {
    return HermitianMatrix<Other>::project(m_.template cast<std::complex<Other>>());
  }

 private:
  HermitianMatrix() = default;

  static void check_dim(Index n) {
    if (n < 1) throw DimensionMismatch("Hermitian matrix needs dim >= 1");
  }
  static void check_square(const Dense& x) {
    if (x.rows() != x.cols()) throw DimensionMismatch("matrix is not square");
    check_dim(x.rows());
  }

  Dense m_;
};

template <typename Real>
void check_same_dim(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
}

template <typename Real>
Real frobenius_distance(const HermitianMatrix<Real>& a, const HermitianMatrix<Real>& b) {
  check_same_dim(a, b);
  return (a.dense() - b.dense()).norm();
}

using Hermitian = HermitianMatrix<double>;
using DenseMatrix = Hermitian::Dense;

}  // namespace loewner
