#pragma once

// The convolution *-algebra of M_k-valued functions on a finite group and
// its regular representations on C^k (x) l^2(G).
//
// Haar measure is counting measure (total mass |G|). Block operators use a
// group-major layout: row/column index = element * k + i.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ncf/error.hpp"
#include "ncf/group.hpp"
#include "ncf/linalg.hpp"
#include "ncf/modular.hpp"

namespace ncf {

/// A function G -> M_k(C), one k x k block per group element. Models
/// a = sum_t a_t (x) lambda_t and, for k = 1, vectors of l^2(G).
class OpValFn {
 public:
  OpValFn(GroupPtr group, std::size_t k) : group_(std::move(group)), k_(k) {
    if (!group_) throw ShapeError("OpValFn: null group");
    if (k_ == 0) throw ShapeError("OpValFn: k must be positive");
    coeffs_.assign(group_->order(), CMatrix::Zero(static_cast<Eigen::Index>(k_), static_cast<Eigen::Index>(k_)));
  }

  static OpValFn zero(GroupPtr g, std::size_t k) { return OpValFn(std::move(g), k); }

  /// I_k at t, zero elsewhere.
  static OpValFn delta(GroupPtr g, std::size_t t, std::size_t k = 1) {
    OpValFn f(std::move(g), k);
    f[t].setIdentity();
    return f;
  }

  static OpValFn from_scalars(GroupPtr g, const std::vector<Complex>& values) {
    OpValFn f(std::move(g), 1);
    if (values.size() != f.group().order()) throw ShapeError("from_scalars: wrong number of values");
    for (std::size_t t = 0; t < values.size(); ++t) f[t](0, 0) = values[t];
    return f;
  }

  const GroupPtr& group_ptr() const noexcept { return group_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  CMatrix& operator[](std::size_t t) { return coeffs_[t]; }
  const CMatrix& operator[](std::size_t t) const { return coeffs_[t]; }
  const std::vector<CMatrix>& coeffs() const noexcept { return coeffs_; }

  /// Scalar value, k = 1 only.
  Complex scalar(std::size_t t) const { return coeffs_[t](0, 0); }

  OpValFn& operator+=(const OpValFn& o) {
    check_compatible(o, "operator+=");
    for (std::size_t t = 0; t < size(); ++t) coeffs_[t] += o.coeffs_[t];
    return *this;
  }
  OpValFn& operator-=(const OpValFn& o) {
    check_compatible(o, "operator-=");
    for (std::size_t t = 0; t < size(); ++t) coeffs_[t] -= o.coeffs_[t];
    return *this;
  }
  OpValFn& operator*=(Complex c) {
    for (auto& m : coeffs_) m *= c;
    return *this;
  }
  friend OpValFn operator+(OpValFn a, const OpValFn& b) { return a += b; }
  friend OpValFn operator-(OpValFn a, const OpValFn& b) { return a -= b; }
  friend OpValFn operator*(Complex c, OpValFn a) { return a *= c; }

  void check_compatible(const OpValFn& o, const char* where) const {
    if (!same_group(group_, o.group_)) throw ShapeError(std::string(where) + ": functions live on different groups");
    if (k_ != o.k_) throw ShapeError(std::string(where) + ": coefficient dimensions differ");
  }

 private:
  GroupPtr group_;
  std::size_t k_;
  std::vector<CMatrix> coeffs_;
};

/// sqrt(sum_t ||f(t)||_F^2).
inline double norm(const OpValFn& f) {
  double s = 0.0;
  for (const auto& m : f.coeffs()) s += m.squaredNorm();
  return std::sqrt(s);
}

/// max_t ||f(t) - g(t)||_F.
inline double max_diff(const OpValFn& f, const OpValFn& g) {
  f.check_compatible(g, "max_diff");
  double d = 0.0;
  for (std::size_t t = 0; t < f.size(); ++t) d = std::max(d, (f[t] - g[t]).norm());
  return d;
}

/// Operator on C^k (x) l^2(G); block (s,t) is the k x k block at rows s*k, columns t*k.
class BlockOperator {
 public:
  BlockOperator(GroupPtr group, std::size_t k, CMatrix matrix)
      : group_(std::move(group)), k_(k), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(k_ * group_->order());
    if (matrix_.rows() != dim || matrix_.cols() != dim) throw ShapeError("BlockOperator: matrix must be k|G| square");
  }

  static BlockOperator zero(GroupPtr g, std::size_t k) {
    const auto dim = static_cast<Eigen::Index>(k * g->order());
    return BlockOperator(g, k, CMatrix::Zero(dim, dim));
  }
  static BlockOperator identity(GroupPtr g, std::size_t k) {
    const auto dim = static_cast<Eigen::Index>(k * g->order());
    return BlockOperator(g, k, CMatrix::Identity(dim, dim));
  }

  const GroupPtr& group_ptr() const noexcept { return group_; }
  const FiniteGroup& group() const noexcept { return *group_; }
  std::size_t k() const noexcept { return k_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  CMatrix& matrix() noexcept { return matrix_; }

  auto block(std::size_t s, std::size_t t) {
    const auto k = static_cast<Eigen::Index>(k_);
    return matrix_.block(static_cast<Eigen::Index>(s) * k, static_cast<Eigen::Index>(t) * k, k, k);
  }
  auto block(std::size_t s, std::size_t t) const {
    const auto k = static_cast<Eigen::Index>(k_);
    return matrix_.block(static_cast<Eigen::Index>(s) * k, static_cast<Eigen::Index>(t) * k, k, k);
  }

  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    a.check_compatible(b, "operator*");
    return BlockOperator(a.group_, a.k_, a.matrix_ * b.matrix_);
  }

  BlockOperator adjoint() const { return BlockOperator(group_, k_, matrix_.adjoint()); }

  void check_compatible(const BlockOperator& o, const char* where) const {
    if (!same_group(group_, o.group_)) throw ShapeError(std::string(where) + ": operators live on different groups");
    if (k_ != o.k_) throw ShapeError(std::string(where) + ": coefficient dimensions differ");
  }

 private:
  GroupPtr group_;
  std::size_t k_;
  CMatrix matrix_;
};

// ---------------------------------------------------------------------------
// Vectors of C^k (x) l^2(G)

/// Stacks the first column of each block; for k = 1 this is the l^2(G) vector.
inline CVector to_vector(const OpValFn& xi) {
  const auto k = static_cast<Eigen::Index>(xi.k());
  CVector v(k * static_cast<Eigen::Index>(xi.size()));
  for (std::size_t t = 0; t < xi.size(); ++t) v.segment(static_cast<Eigen::Index>(t) * k, k) = xi[t].col(0);
  return v;
}

inline OpValFn from_vector(GroupPtr g, const CVector& v) {
  if (static_cast<std::size_t>(v.size()) != g->order()) throw ShapeError("from_vector: length must equal |G|");
  OpValFn f(std::move(g), 1);
  for (std::size_t t = 0; t < f.size(); ++t) f[t](0, 0) = v(static_cast<Eigen::Index>(t));
  return f;
}

/// <xi, eta> = sum_t conj(xi(t)) eta(t); linear in the second argument.
inline Complex inner(const OpValFn& xi, const OpValFn& eta) {
  xi.check_compatible(eta, "inner");
  if (xi.k() != 1) throw UnsupportedError("inner: scalar functions only");
  Complex s = 0.0;
  for (std::size_t t = 0; t < xi.size(); ++t) s += std::conj(xi.scalar(t)) * eta.scalar(t);
  return s;
}

// ---------------------------------------------------------------------------
// Algebra operations

/// (f * g)(t) = sum_s f(s) g(s^-1 t).
inline OpValFn convolve(const OpValFn& f, const OpValFn& g) {
  f.check_compatible(g, "convolve");
  const FiniteGroup& G = f.group();
  const std::size_t n = G.order();
  std::vector<char> g_nonzero(n);
  for (std::size_t u = 0; u < n; ++u) g_nonzero[u] = !g[u].isZero(0.0);

  OpValFn out(f.group_ptr(), f.k());
  for (std::size_t s = 0; s < n; ++s) {
    if (f[s].isZero(0.0)) continue;
    for (std::size_t u = 0; u < n; ++u) {
      if (!g_nonzero[u]) continue;
      out[G.mul(s, u)].noalias() += f[s] * g[u];
    }
  }
  return out;
}

/// f*(t) = Delta(t^-1) f(t^-1)^*.
inline OpValFn involute(const OpValFn& f) {
  const FiniteGroup& G = f.group();
  OpValFn out(f.group_ptr(), f.k());
  for (std::size_t t = 0; t < G.order(); ++t) {
    const std::size_t ti = G.inv(t);
    out[t] = modular::involution_factor(G.modular(ti)) * f[ti].adjoint();
  }
  return out;
}

/// lambda_A(f): block (t,s) = f(t s^-1), so that lambda_A(f) xi = f * xi.
inline BlockOperator left_regular(const OpValFn& f) {
  const FiniteGroup& G = f.group();
  auto op = BlockOperator::zero(f.group_ptr(), f.k());
  for (std::size_t t = 0; t < G.order(); ++t)
    for (std::size_t s = 0; s < G.order(); ++s) op.block(t, s) = f[G.mul(t, G.inv(s))];
  return op;
}

/// rho(f) xi = xi * f for scalar f: block (t,s) = f(s^-1 t).
inline BlockOperator right_regular(const OpValFn& f) {
  if (f.k() != 1) throw UnsupportedError("right_regular: only scalar functions (k = 1) are supported");
  const FiniteGroup& G = f.group();
  auto op = BlockOperator::zero(f.group_ptr(), 1);
  for (std::size_t t = 0; t < G.order(); ++t)
    for (std::size_t s = 0; s < G.order(); ++s) op.block(t, s) = f[G.mul(G.inv(s), t)];
  return op;
}

/// (J xi)(t) = Delta(t)^{-1/2} conj(xi(t^-1)).
inline OpValFn modular_conjugation(const OpValFn& xi) {
  if (xi.k() != 1) throw UnsupportedError("modular_conjugation: only scalar functions (k = 1) are supported");
  const FiniteGroup& G = xi.group();
  OpValFn out(xi.group_ptr(), 1);
  for (std::size_t t = 0; t < G.order(); ++t)
    out[t](0, 0) = modular::conjugation_factor(G.modular(t)) * std::conj(xi.scalar(G.inv(t)));
  return out;
}

/// Matrix of the linear operator J X J for the anti-linear J above:
/// entry (t,s) = Delta(t)^{-1/2} conj(X(t^-1, s^-1)) Delta(s^-1)^{-1/2}.
inline BlockOperator conjugate_by_J(const BlockOperator& x) {
  if (x.k() != 1) throw UnsupportedError("conjugate_by_J: only k = 1 is supported");
  const FiniteGroup& G = x.group();
  auto out = BlockOperator::zero(x.group_ptr(), 1);
  for (std::size_t t = 0; t < G.order(); ++t)
    for (std::size_t s = 0; s < G.order(); ++s)
      out.block(t, s)(0, 0) = modular::conjugation_factor(G.modular(t)) *
                              std::conj(x.block(G.inv(t), G.inv(s))(0, 0)) *
                              modular::conjugation_factor(G.modular(G.inv(s)));
  return out;
}

/// (V_t xi)(s) = xi(st) on C^k (x) l^2(G). V_s V_t = V_{st}.
inline BlockOperator translate_V(const GroupPtr& g, std::size_t t, std::size_t k) {
  auto op = BlockOperator::zero(g, k);
  for (std::size_t s = 0; s < g->order(); ++s) op.block(s, g->mul(s, t)).setIdentity();
  return op;
}

/// 1 (x) lambda_t: (lambda_t xi)(s) = xi(t^-1 s).
inline BlockOperator left_translation(const GroupPtr& g, std::size_t t, std::size_t k) {
  auto op = BlockOperator::zero(g, k);
  for (std::size_t s = 0; s < g->order(); ++s) op.block(g->mul(t, s), s).setIdentity();
  return op;
}

/// 1 (x) rho(delta_t): (xi * delta_t)(u) = xi(u t^-1).
inline BlockOperator right_translation(const GroupPtr& g, std::size_t t, std::size_t k) {
  auto op = BlockOperator::zero(g, k);
  for (std::size_t u = 0; u < g->order(); ++u) op.block(u, g->mul(u, g->inv(t))).setIdentity();
  return op;
}

/// Scalar function tensored with I_k.
inline OpValFn amplify(const OpValFn& scalar_fn, std::size_t k) {
  if (scalar_fn.k() != 1) throw ShapeError("amplify: expects a scalar function");
  OpValFn out(scalar_fn.group_ptr(), k);
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = scalar_fn.scalar(t) * CMatrix::Identity(out[t].rows(), out[t].cols());
  return out;
}

}  // namespace ncf
