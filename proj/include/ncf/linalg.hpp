#pragma once

// Dense complex matrix kernel. Everything operator-level in the library is
// certified through the routines here: Hermitian eigendecomposition,
// positivity checks in relative-tolerance form, and positive square roots.
// Hermitian eigenproblems go to LAPACK zheevd; Eigen's self-adjoint solver
// fails to converge on some highly degenerate regular-representation matrices.

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include <string>

#include "ncf/error.hpp"

namespace ncf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSqrtTol = 1e-9;

/// Largest entry modulus, 0 for empty matrices.
inline double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Entrywise Hermitian defect max|M - M*|.
inline double hermitian_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_residual: matrix is not square");
  return m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix& m) {
  return m.rows() == m.cols() && hermitian_residual(m) <= kHermitianTol * (1.0 + max_abs(m));
}

/// Spectral (largest singular value) norm.
inline double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

struct EigenDecomposition {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors;  // unitary, columns match eigenvalues
};

namespace detail {

/// Eigenvalues (ascending) and optionally eigenvectors of a Hermitian matrix;
/// only the lower triangle is read.
inline EigenDecomposition heev(CMatrix a, bool vectors) {
  const auto n = static_cast<lapack_int>(a.rows());
  RVector w(a.rows());
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'L', n, a.data(), n, w.data());
  if (info != 0) throw Error("hermitian eigensolver failed (zheevd info " + std::to_string(info) + ")");
  return {std::move(w), vectors ? std::move(a) : CMatrix(0, 0)};
}

}  // namespace detail

/// Spectrum of the Hermitian part (M + M*)/2, ascending. No Hermitian check.
inline RVector hermitian_part_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_part_eigenvalues: matrix is not square");
  if (m.size() == 0) return RVector(0);
  return detail::heev(0.5 * (m + m.adjoint()), false).eigenvalues;
}

/// M = U diag(lambda) U*. Rounding-level non-Hermitian noise is symmetrized
/// away; anything above 1e-12 relative is rejected.
inline EigenDecomposition hermitian_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eig: matrix is not square");
  if (m.size() == 0) return {RVector(0), CMatrix(0, 0)};
  const double residual = hermitian_residual(m);
  if (residual > kHermitianTol * (1.0 + max_abs(m))) throw NotHermitianError(residual);
  return detail::heev(0.5 * (m + m.adjoint()), true);
}

struct PsdReport {
  bool is_psd = true;
  double min_eig = 0.0;
  double op_norm = 0.0;
};

/// Positivity certificate on the Hermitian part (M + M*)/2:
/// is_psd iff min_eig >= -tol * (1 + op_norm).
inline PsdReport psd_check(const CMatrix& m, double tol = kPsdTol) {
  if (m.rows() != m.cols()) throw ShapeError("psd_check: matrix is not square");
  if (m.size() == 0) return {};
  const RVector ev = hermitian_part_eigenvalues(m);
  PsdReport r;
  r.min_eig = ev(0);
  r.op_norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  r.is_psd = r.min_eig >= -tol * (1.0 + r.op_norm);
  return r;
}

/// Positive square root. Eigenvalues in [-tol, 0) are clamped to zero.
inline CMatrix psd_sqrt(const CMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("psd_sqrt: matrix is not square");
  if (m.size() == 0) return m;
  const auto eig = hermitian_eig(m);
  const double norm = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  if (eig.eigenvalues(0) < -kSqrtTol * (1.0 + norm)) {
    throw NotPositiveError("psd_sqrt: matrix is not positive semidefinite", eig.eigenvalues(0));
  }
  const RVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  CMatrix r = eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

/// Kronecker product a (x) b.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Nearest unitary (polar factor) W V* of m = W Sigma V*.
inline CMatrix polar_unitary(const CMatrix& m) {
  if (m.size() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace ncf
