#pragma once

// Positive definite M_k-valued functions on a finite group: the block Gram
// criterion, the structure facts they satisfy, the equivalence with
// positivity of lambda_A(f), and an explicit dilation f(t) = S* u_t S built
// from the Kolmogorov decomposition of the kernel K(s,t) = f(s^-1 t).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "ncf/conv_algebra.hpp"
#include "ncf/error.hpp"
#include "ncf/linalg.hpp"
#include "ncf/modular.hpp"

namespace ncf {

/// Block Gram matrix with block (s,t) = f(s^-1 t) over all group elements.
inline CMatrix block_gram(const OpValFn& f) {
  const FiniteGroup& G = f.group();
  const auto k = static_cast<Eigen::Index>(f.k());
  const auto n = static_cast<Eigen::Index>(G.order());
  CMatrix p(k * n, k * n);
  for (std::size_t s = 0; s < G.order(); ++s)
    for (std::size_t t = 0; t < G.order(); ++t)
      p.block(static_cast<Eigen::Index>(s) * k, static_cast<Eigen::Index>(t) * k, k, k) = f[G.mul(G.inv(s), t)];
  return p;
}

struct PdResult {
  bool pd = false;
  double min_eig = 0.0;
};

inline PdResult is_positive_definite(const OpValFn& f, double tol = kPsdTol) {
  const auto rep = psd_check(block_gram(f), tol);
  return {rep.is_psd, rep.min_eig};
}

struct PdStructureReport {
  bool identity_positive = true;
  double identity_min_eig = 0.0;
  std::vector<std::size_t> hermitian_violations;  // t with f(t^-1)^* != f(t)
  std::vector<std::size_t> norm_violations;       // t with ||f(t)|| > ||f(e)||
  double max_hermitian_residual = 0.0;
  double max_norm_excess = 0.0;

  bool passed() const { return identity_positive && hermitian_violations.empty() && norm_violations.empty(); }
};

/// f(e) >= 0, f(t^-1)^* = f(t) to 1e-12, ||f(t)|| <= ||f(e)|| + 1e-10.
inline PdStructureReport pd_structure_report(const OpValFn& f) {
  const auto pd = is_positive_definite(f);
  if (!pd.pd) throw NotPositiveDefiniteError(pd.min_eig);
  const FiniteGroup& G = f.group();
  PdStructureReport r;
  const auto id_rep = psd_check(f[0], kPsdTol);
  r.identity_positive = id_rep.is_psd;
  r.identity_min_eig = id_rep.min_eig;
  const double norm_e = op_norm(f[0]);
  const double scale = 1.0 + max_abs(f[0]);
  for (std::size_t t = 0; t < G.order(); ++t) {
    const double herm = max_abs(f[G.inv(t)].adjoint() - f[t]);
    r.max_hermitian_residual = std::max(r.max_hermitian_residual, herm);
    if (herm > 1e-12 * scale) r.hermitian_violations.push_back(t);
    const double excess = op_norm(f[t]) - norm_e;
    r.max_norm_excess = std::max(r.max_norm_excess, excess);
    if (excess > 1e-10) r.norm_violations.push_back(t);
  }
  return r;
}

struct DilationResiduals {
  double reconstruction = 0.0;  // max_t ||S* u_t S - f(t)||_F
  double unitarity = 0.0;       // max_t ||u_t* u_t - I||_F
  double homomorphism = 0.0;    // max over checked pairs of ||u_s u_t - u_st||_F
  double invariance = 0.0;      // max_t ||(I - UU*) Pi_t U||_F, bounds the homomorphism defect
  bool polar_corrected = false;
};

/// f(t) = S* u_t S with u a unitary representation on C^dim.
struct Dilation {
  GroupPtr group;
  std::size_t k = 1;
  std::size_t dim = 0;
  std::vector<CMatrix> u;
  CMatrix S;
  double rank_tol = 1e-10;
  DilationResiduals residuals;
};

/// max ||u_s u_t - u_st||_F over all pairs when |G|^2 dim^3 is small, otherwise
/// over all s and the first eight elements t.
inline double representation_defect(const FiniteGroup& g, const std::vector<CMatrix>& u) {
  const std::size_t n = g.order();
  const double dim = u.empty() ? 0.0 : static_cast<double>(u.front().rows());
  const bool exhaustive = static_cast<double>(n * n) * dim * dim * dim <= 2e7;
  const std::size_t t_count = exhaustive ? n : std::min<std::size_t>(n, 8);
  double d = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < t_count; ++t) d = std::max(d, (u[s] * u[t] - u[g.mul(s, t)]).norm());
  return d;
}

/// Kolmogorov/Naimark dilation of a positive definite f.
///
/// P = block_gram(f) = U diag(mu) U*, truncated to mu > rank_tol * ||P||.
/// Left translation Pi_t (block s -> block ts) commutes with P, so
/// u_t = U* Pi_t U is a unitary representation on the retained space and
/// S = diag(mu)^{1/2} U* restricted to the identity block column.
inline Dilation naimark_dilate(const OpValFn& f, double rank_tol = 1e-10) {
  const FiniteGroup& G = f.group();
  const std::size_t n = G.order();
  const auto k = static_cast<Eigen::Index>(f.k());
  const CMatrix p = block_gram(f);
  const auto rep = psd_check(p, kPsdTol);
  if (!rep.is_psd) throw NotPositiveDefiniteError(rep.min_eig);

  const auto eig = detail::heev(0.5 * (p + p.adjoint()), true);
  const RVector& mu = eig.eigenvalues;
  const double pnorm = mu.size() ? std::max(std::abs(mu(0)), std::abs(mu(mu.size() - 1))) : 0.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu(i) > rank_tol * pnorm && mu(i) > 0.0) keep.push_back(i);
  const auto r = static_cast<Eigen::Index>(keep.size());

  CMatrix U(p.rows(), r);
  RVector roots(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    U.col(j) = eig.eigenvectors.col(keep[static_cast<std::size_t>(j)]);
    roots(j) = std::sqrt(mu(keep[static_cast<std::size_t>(j)]));
  }

  Dilation d;
  d.group = f.group_ptr();
  d.k = f.k();
  d.dim = static_cast<std::size_t>(r);
  d.rank_tol = rank_tol;
  d.S = roots.cast<Complex>().asDiagonal() * U.topRows(k).adjoint();

  const CMatrix proj_complement = CMatrix::Identity(p.rows(), p.rows()) - U * U.adjoint();
  d.u.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    // Pi_t U: block row ts of the result is block row s of U.
    CMatrix pu(p.rows(), r);
    for (std::size_t s = 0; s < n; ++s)
      pu.middleRows(static_cast<Eigen::Index>(G.mul(t, s)) * k, k) = U.middleRows(static_cast<Eigen::Index>(s) * k, k);
    d.residuals.invariance = std::max(d.residuals.invariance, (proj_complement * pu).norm());
    d.u.push_back(U.adjoint() * pu);
  }

  auto unitarity = [&] {
    double defect = 0.0;
    const CMatrix id = CMatrix::Identity(r, r);
    for (const auto& ut : d.u) defect = std::max(defect, (ut.adjoint() * ut - id).norm());
    return defect;
  };
  d.residuals.unitarity = unitarity();
  if (d.residuals.unitarity > 1e-8)
    throw DilationError("naimark_dilate: induced translation is not unitary (defect " +
                        std::to_string(d.residuals.unitarity) + "); retry with a smaller rank_tol");
  if (d.residuals.unitarity > 1e-10) {
    for (auto& ut : d.u) ut = polar_unitary(ut);
    d.residuals.polar_corrected = true;
    d.residuals.unitarity = unitarity();
  }

  const double scale = 1.0 + op_norm(f[0]);
  for (std::size_t t = 0; t < n; ++t)
    d.residuals.reconstruction = std::max(d.residuals.reconstruction, (d.S.adjoint() * d.u[t] * d.S - f[t]).norm());
  if (d.residuals.reconstruction > 1e-8 * scale)
    throw DilationError("naimark_dilate: reconstruction residual " + std::to_string(d.residuals.reconstruction) +
                        " exceeds tolerance; f may not be Hermitian or rank_tol is too large");
  d.residuals.homomorphism = representation_defect(G, d.u);
  return d;
}

/// S* u_t S for every t.
inline OpValFn dilation_values(const Dilation& d) {
  OpValFn f(d.group, d.k);
  for (std::size_t t = 0; t < f.size(); ++t) f[t] = d.S.adjoint() * d.u[t] * d.S;
  return f;
}

struct PositivityEquivalence {
  bool pd = false;
  bool op_pos = false;
  bool agree = false;
  double pd_min_eig = 0.0;
  double op_min_eig = 0.0;
  // Scalar route, k = 1 only: psd(lambda(Jf)) and psd(rho(f)).
  std::optional<bool> lambda_jf_pos;
  std::optional<bool> rho_pos;
};

/// lambda_A(Delta^{1/2} f) >= 0 iff f positive definite; Delta = 1 here, so the
/// two certificates are compared directly.
inline PositivityEquivalence positivity_equivalence(const OpValFn& f, double tol = kPsdTol) {
  PositivityEquivalence r;
  const auto pd = is_positive_definite(f, tol);
  r.pd = pd.pd;
  r.pd_min_eig = pd.min_eig;
  OpValFn weighted = f;
  for (std::size_t t = 0; t < f.size(); ++t) weighted[t] *= modular::half_density(f.group().modular(t));
  const auto op = psd_check(left_regular(weighted).matrix(), tol);
  r.op_pos = op.is_psd;
  r.op_min_eig = op.min_eig;
  r.agree = r.pd == r.op_pos;
  if (f.k() == 1) {
    r.lambda_jf_pos = psd_check(left_regular(modular_conjugation(f)).matrix(), tol).is_psd;
    r.rho_pos = psd_check(right_regular(f).matrix(), tol).is_psd;
    r.agree = r.agree && *r.lambda_jf_pos == r.pd && *r.rho_pos == r.pd;
  }
  return r;
}

/// F(x) = S* (sum_t x(t) u_t) S, the integrated form compressed by S.
inline CMatrix integrated_form(const Dilation& d, const OpValFn& x) {
  if (x.k() != 1) throw ShapeError("integrated_form: x must be scalar valued");
  if (!same_group(d.group, x.group_ptr())) throw ShapeError("integrated_form: group mismatch");
  const auto r = static_cast<Eigen::Index>(d.dim);
  CMatrix ux = CMatrix::Zero(r, r);
  for (std::size_t t = 0; t < x.size(); ++t) ux += x.scalar(t) * d.u[t];
  return d.S.adjoint() * ux * d.S;
}

/// For scalar positive definite f, xi with xi^* * xi = f: the identity row of
/// the translation-invariant square root of block_gram(f).
inline OpValFn positive_definite_factor(const OpValFn& f) {
  if (f.k() != 1) throw UnsupportedError("positive_definite_factor: scalar functions only");
  const auto pd = is_positive_definite(f);
  if (!pd.pd) throw NotPositiveDefiniteError(pd.min_eig);
  const CMatrix root = psd_sqrt(block_gram(f));
  OpValFn xi(f.group_ptr(), 1);
  for (std::size_t t = 0; t < xi.size(); ++t) xi[t](0, 0) = root(0, static_cast<Eigen::Index>(t));
  return xi;
}

}  // namespace ncf
