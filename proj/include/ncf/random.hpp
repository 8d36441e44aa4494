#pragma once

// Seeded generators for test elements. All randomness in the library and
// CLI flows through an Rng passed by reference.

#include <cstddef>
#include <cstdint>
#include <random>

#include "ncf/conv_algebra.hpp"
#include "ncf/linalg.hpp"

namespace ncf {

using Rng = std::mt19937_64;

/// Entries with real and imaginary parts uniform in [-1, 1].
inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

inline CMatrix random_hermitian(Rng& rng, Eigen::Index n) {
  const CMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.adjoint());
}

/// Haar-ish unitary from the QR factorization of a Gaussian matrix.
inline CMatrix random_unitary(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

inline OpValFn random_fn(const GroupPtr& g, std::size_t k, Rng& rng) {
  OpValFn f(g, k);
  const auto kk = static_cast<Eigen::Index>(k);
  for (std::size_t t = 0; t < f.size(); ++t) f[t] = random_matrix(rng, kk, kk);
  return f;
}

/// f(t^-1)^* = f(t): the Hermitian elements of the convolution algebra.
inline OpValFn random_hermitian_fn(const GroupPtr& g, std::size_t k, Rng& rng) {
  const OpValFn f = random_fn(g, k, rng);
  const OpValFn fs = involute(f);
  OpValFn out(g, k);
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = 0.5 * (f[t] + fs[t]);
  return out;
}

/// Random PSD density for a positive functional.
inline CMatrix random_density(Rng& rng, Eigen::Index k) {
  const CMatrix w = random_matrix(rng, k, k);
  return w.adjoint() * w;
}

/// u_t = Q (Pi_t (x) I_copies) Q* for the left regular permutation Pi_t and a
/// random unitary Q.
inline std::vector<CMatrix> random_unitary_rep(const GroupPtr& g, std::size_t copies, Rng& rng) {
  const std::size_t n = g->order();
  const auto dim = static_cast<Eigen::Index>(n * copies);
  const CMatrix q = random_unitary(rng, dim);
  std::vector<CMatrix> u;
  u.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    CMatrix perm = CMatrix::Zero(dim, dim);
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t c = 0; c < copies; ++c)
        perm(static_cast<Eigen::Index>(g->mul(t, s) * copies + c), static_cast<Eigen::Index>(s * copies + c)) = 1.0;
    u.push_back(q * perm * q.adjoint());
  }
  return u;
}

/// f(t) = S0* u_t S0 for a random unitary representation u and random S0 of
/// rank at most `rank`.
inline OpValFn random_dilation_fn(const GroupPtr& g, std::size_t k, Rng& rng, std::size_t copies = 1,
                                  std::size_t rank = 0) {
  const auto u = random_unitary_rep(g, copies, rng);
  const auto dim = u.front().rows();
  const auto kk = static_cast<Eigen::Index>(k);
  CMatrix s0 = random_matrix(rng, dim, kk);
  if (rank > 0 && static_cast<Eigen::Index>(rank) < kk) {
    s0 = random_matrix(rng, dim, static_cast<Eigen::Index>(rank)) *
         random_matrix(rng, static_cast<Eigen::Index>(rank), kk);
  }
  OpValFn f(g, k);
  for (std::size_t t = 0; t < f.size(); ++t) f[t] = s0.adjoint() * u[t] * s0;
  return f;
}

/// g^* * g for random g.
inline OpValFn random_gram_fn(const GroupPtr& g, std::size_t k, Rng& rng) {
  const OpValFn h = random_fn(g, k, rng);
  return convolve(involute(h), h);
}

}  // namespace ncf
