#pragma once

// Plancherel weight, GNS map, slice maps, the operator-valued Fourier
// transform and its inversion on a finite group.
//
// On a finite group every element is integrable and every integral is a
// finite sum, so none of these operations take integrability certificates.

#include <cstddef>
#include <vector>

#include "ncf/conv_algebra.hpp"
#include "ncf/error.hpp"
#include "ncf/linalg.hpp"

namespace ncf {

/// theta(b) = trace(density * b) with a positive semidefinite density.
class PositiveFunctional {
 public:
  explicit PositiveFunctional(CMatrix density) : density_(std::move(density)) {
    if (density_.rows() != density_.cols() || density_.rows() == 0)
      throw ShapeError("PositiveFunctional: density must be square and non-empty");
    const auto rep = psd_check(density_, kPsdTol);
    if (!rep.is_psd) throw NotPositiveError("PositiveFunctional: density is not positive", rep.min_eig);
  }

  static PositiveFunctional normalized_trace(std::size_t k) {
    const auto kk = static_cast<Eigen::Index>(k);
    return PositiveFunctional(CMatrix::Identity(kk, kk) / static_cast<double>(k));
  }

  std::size_t k() const noexcept { return static_cast<std::size_t>(density_.rows()); }
  const CMatrix& density() const noexcept { return density_; }
  Complex operator()(const CMatrix& b) const { return (density_ * b).trace(); }

 private:
  CMatrix density_;
};

/// (id (x) Lambda)(a) as a k|G| x k matrix: block row t is a(t). For k = 1
/// this is the l^2(G) vector Lambda(lambda(f)) = f.
struct GnsVector {
  GroupPtr group;
  std::size_t k = 1;
  CMatrix vec;
};

/// (id (x) phi)(a) = a(e): the Plancherel weight is evaluation at the identity.
inline CMatrix plancherel_value(const OpValFn& a) { return a[FiniteGroup::identity()]; }

/// (1 (x) lambda_{t^-1}) a, computed as the algebra product with delta(t^-1) (x) I.
/// Its coefficient at s is a(ts).
inline OpValFn left_translate(const OpValFn& a, std::size_t t) {
  return convolve(OpValFn::delta(a.group_ptr(), a.group().inv(t), a.k()), a);
}

/// a^(t) = (id (x) phi)((1 (x) lambda_t^-1) a), evaluated through the product
/// and the weight rather than read off the coefficients.
inline OpValFn fourier_transform(const OpValFn& a) {
  OpValFn out(a.group_ptr(), a.k());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = plancherel_value(left_translate(a, t));
  return out;
}

/// Direct coefficient read a^(t) = a_t; cross-checked against fourier_transform.
inline OpValFn fourier_transform_direct(const OpValFn& a) { return a; }

struct MembershipReport {
  bool ok = true;
  double violation = 0.0;
};

/// Certifies X in M_k (x) L(G) by commutation with every 1 (x) rho(delta_t).
/// violation = max_t ||[X, 1 (x) rho_t]||_F, ok iff violation <= 1e-10 (1 + ||X||_F).
inline MembershipReport membership_check(const BlockOperator& x) {
  const FiniteGroup& G = x.group();
  const std::size_t n = G.order();
  double violation = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    // R has block (w, w t^-1) = I, so (X R)(u,v) = X(u, v t) and (R X)(u,v) = X(u t^-1, v).
    double sq = 0.0;
    const std::size_t ti = G.inv(t);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) sq += (x.block(u, G.mul(v, t)) - x.block(G.mul(u, ti), v)).squaredNorm();
    violation = std::max(violation, std::sqrt(sq));
  }
  return {violation <= 1e-10 * (1.0 + x.matrix().norm()), violation};
}

/// Fourier coefficients of an operator in the image of lambda_A: a^(t) is
/// the block at block-row t, block-column e.
inline OpValFn fourier_from_operator(const BlockOperator& x) {
  const auto m = membership_check(x);
  if (!m.ok) throw NotInGroupAlgebraError(m.violation);
  OpValFn out(x.group_ptr(), x.k());
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = x.block(t, FiniteGroup::identity());
  return out;
}

/// (theta (x) id)(a): t -> theta(a(t)).
inline OpValFn slice_functional(const OpValFn& a, const PositiveFunctional& theta) {
  if (theta.k() != a.k()) throw ShapeError("slice_functional: functional and function dimensions differ");
  OpValFn out(a.group_ptr(), 1);
  for (std::size_t t = 0; t < a.size(); ++t) out[t](0, 0) = theta(a[t]);
  return out;
}

struct Inversion {
  OpValFn a;
  BlockOperator x;
};

/// X = sum_t a^(t) (x) lambda_t, assembled term by term; a is read back from X.
inline Inversion invert(const OpValFn& ahat) {
  const FiniteGroup& G = ahat.group();
  auto x = BlockOperator::zero(ahat.group_ptr(), ahat.k());
  for (std::size_t t = 0; t < G.order(); ++t) {
    if (ahat[t].isZero(0.0)) continue;
    // a^(t) (x) lambda_t contributes a^(t) at block (ts, s).
    for (std::size_t s = 0; s < G.order(); ++s) x.block(G.mul(t, s), s) += ahat[t];
  }
  OpValFn a(ahat.group_ptr(), ahat.k());
  for (std::size_t t = 0; t < G.order(); ++t) a[t] = x.block(t, FiniteGroup::identity());
  return {std::move(a), std::move(x)};
}

/// Layout is fixed by (id (x) Lambda)(a)^* (id (x) Lambda)(b) = (a^* * b)(e).
inline GnsVector gns_map(const OpValFn& a) {
  const auto k = static_cast<Eigen::Index>(a.k());
  CMatrix v(k * static_cast<Eigen::Index>(a.size()), k);
  for (std::size_t t = 0; t < a.size(); ++t) v.block(static_cast<Eigen::Index>(t) * k, 0, k, k) = a[t];
  return {a.group_ptr(), a.k(), std::move(v)};
}

/// <Lambda(a), Lambda(b)> as a k x k matrix.
inline CMatrix gns_inner(const GnsVector& a, const GnsVector& b) { return a.vec.adjoint() * b.vec; }

/// V_t applied to a GNS vector: block row s of the result is block row st.
inline CMatrix apply_V(const FiniteGroup& g, std::size_t t, const CMatrix& vec, std::size_t k) {
  const auto kk = static_cast<Eigen::Index>(k);
  CMatrix out(vec.rows(), vec.cols());
  for (std::size_t s = 0; s < g.order(); ++s)
    out.middleRows(static_cast<Eigen::Index>(s) * kk, kk) = vec.middleRows(static_cast<Eigen::Index>(g.mul(s, t)) * kk, kk);
  return out;
}

/// t -> sum_i (id (x) Lambda)(b_i)^* V_t (id (x) Lambda)(c_i), the Fourier
/// transform of sum_i b_i^* c_i.
inline OpValFn fourier_factorization(const std::vector<std::pair<OpValFn, OpValFn>>& pairs) {
  if (pairs.empty()) throw ShapeError("fourier_factorization: no pairs given");
  const auto& ref = pairs.front().first;
  for (const auto& [b, c] : pairs) {
    ref.check_compatible(b, "fourier_factorization");
    ref.check_compatible(c, "fourier_factorization");
  }
  OpValFn out(ref.group_ptr(), ref.k());
  for (const auto& [b, c] : pairs) {
    const auto lb = gns_map(b);
    const auto lc = gns_map(c);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += lb.vec.adjoint() * apply_V(ref.group(), t, lc.vec, ref.k());
  }
  return out;
}

}  // namespace ncf
