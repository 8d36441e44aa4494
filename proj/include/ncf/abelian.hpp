#pragma once

// Dual group, Gelfand transform and the classical inversion formulas for
// finite Abelian groups.
//
// Conventions: the Gelfand transform sends lambda_t to chi -> conj(chi(t)),
// so Gelfand(a)(chi) = sum_t a_t conj(chi(t)). Haar measure on G is counting
// measure; the dual measure is counting measure divided by |G|.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <vector>

#include "ncf/conv_algebra.hpp"
#include "ncf/error.hpp"
#include "ncf/plancherel.hpp"

namespace ncf {

class DualGroup {
 public:
  DualGroup(GroupPtr base, std::size_t exponent, std::vector<std::vector<std::size_t>> phases)
      : base_(std::move(base)), exponent_(exponent), phases_(std::move(phases)) {
    roots_.resize(exponent_);
    for (std::size_t j = 0; j < exponent_; ++j)
      roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(exponent_));
  }

  const GroupPtr& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return phases_.size(); }
  /// Characters take values in the exponent-th roots of unity.
  std::size_t exponent() const noexcept { return exponent_; }
  /// chi(t) = exp(2 pi i phase(chi, t) / exponent), exact integer phases.
  std::size_t phase(std::size_t chi, std::size_t t) const { return phases_[chi][t]; }
  Complex operator()(std::size_t chi, std::size_t t) const { return roots_[phases_[chi][t]]; }

  /// |G| x |G| character table, row chi.
  CMatrix table() const {
    const auto n = static_cast<Eigen::Index>(size());
    CMatrix m(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index t = 0; t < n; ++t) m(c, t) = (*this)(static_cast<std::size_t>(c), static_cast<std::size_t>(t));
    return m;
  }

 private:
  GroupPtr base_;
  std::size_t exponent_;
  std::vector<std::vector<std::size_t>> phases_;
  std::vector<Complex> roots_;
};

inline void require_abelian(const FiniteGroup& g) {
  for (std::size_t s = 0; s < g.order(); ++s)
    for (std::size_t t = s + 1; t < g.order(); ++t)
      if (!g.commutes(s, t)) throw NotAbelianError(s, t);
}

/// Characters by extension along a chain {e} = H_0 < H_1 < ... < G, each
/// step adjoining the smallest-index element g outside H. If m is the least
/// positive power with g^m in H, every character chi of H extends in exactly
/// m ways: chi'(h g^j) = chi(h) w^j with w^m = chi(g^m). Phases stay integers
/// modulo the group exponent, so the table consists of exact roots of unity.
inline DualGroup dual_group(const GroupPtr& g) {
  const FiniteGroup& G = *g;
  require_abelian(G);
  const std::size_t n = G.order();
  std::size_t exponent = 1;
  for (std::size_t t = 0; t < n; ++t) exponent = std::lcm(exponent, G.element_order(t));

  std::vector<char> in_h(n, 0);
  in_h[0] = 1;
  std::vector<std::size_t> h_elems{0};
  // Each character stored as phases over all of G; only entries on H are meaningful.
  std::vector<std::vector<std::size_t>> chars{std::vector<std::size_t>(n, 0)};

  for (std::size_t gen = 1; gen < n; ++gen) {
    if (in_h[gen]) continue;
    std::size_t m = 1;
    std::size_t power = gen;  // gen^m
    while (!in_h[power]) {
      power = G.mul(power, gen);
      ++m;
    }
    // New subgroup elements h * gen^j, j = 0..m-1, recorded with their decomposition.
    std::vector<std::size_t> new_elems;
    std::vector<std::pair<std::size_t, std::size_t>> decomposition;  // (h, j)
    std::size_t gj = 0;
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t h : h_elems) {
        new_elems.push_back(G.mul(h, gj));
        decomposition.emplace_back(h, j);
      }
      gj = G.mul(gj, gen);
    }

    std::vector<std::vector<std::size_t>> extended;
    extended.reserve(chars.size() * m);
    for (const auto& chi : chars) {
      const std::size_t p = chi[power];  // phase of chi(gen^m), divisible by m
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t q = (p / m + j * (exponent / m)) % exponent;  // phase of w
        std::vector<std::size_t> ext(n, 0);
        for (std::size_t i = 0; i < new_elems.size(); ++i) {
          const auto [h, pw] = decomposition[i];
          ext[new_elems[i]] = (chi[h] + pw * q) % exponent;
        }
        extended.push_back(std::move(ext));
      }
    }
    chars = std::move(extended);
    h_elems = std::move(new_elems);
    for (std::size_t e : h_elems) in_h[e] = 1;
  }
  return DualGroup(g, exponent, std::move(chars));
}

/// Functions on the dual group, one k x k block per character.
using DualFn = std::vector<CMatrix>;

/// Gelfand(a)(chi) = sum_t a_t conj(chi(t)).
inline DualFn gelfand_transform(const DualGroup& dual, const OpValFn& a) {
  if (!same_group(dual.base(), a.group_ptr())) throw ShapeError("gelfand_transform: group mismatch");
  DualFn out(dual.size(), CMatrix::Zero(static_cast<Eigen::Index>(a.k()), static_cast<Eigen::Index>(a.k())));
  for (std::size_t c = 0; c < dual.size(); ++c)
    for (std::size_t t = 0; t < a.size(); ++t) out[c] += std::conj(dual(c, t)) * a[t];
  return out;
}

inline DualFn gelfand_transform(const OpValFn& a) { return gelfand_transform(dual_group(a.group_ptr()), a); }

struct InversionCrosscheck {
  double forward_residual = 0.0;  // max_t ||a^(t) - (1/|G|) sum_chi chi(t) A(chi)||_F
  double inverse_residual = 0.0;  // max_chi ||sum_t conj(chi(t)) a^(t) - A(chi)||_F
  bool passed(double tol = 1e-10) const { return forward_residual <= tol && inverse_residual <= tol; }
};

/// Compares the Fourier transform a^ with the dual-group integrals of the
/// Gelfand transform A, in both directions.
inline InversionCrosscheck crosscheck_inversion(const OpValFn& a) {
  const auto dual = dual_group(a.group_ptr());
  const DualFn big_a = gelfand_transform(dual, a);
  const OpValFn ahat = fourier_transform(a);
  const double n = static_cast<double>(a.size());
  InversionCrosscheck r;
  for (std::size_t t = 0; t < a.size(); ++t) {
    CMatrix s = CMatrix::Zero(ahat[t].rows(), ahat[t].cols());
    for (std::size_t c = 0; c < dual.size(); ++c) s += dual(c, t) * big_a[c];
    r.forward_residual = std::max(r.forward_residual, (ahat[t] - s / n).norm());
  }
  for (std::size_t c = 0; c < dual.size(); ++c) {
    CMatrix s = CMatrix::Zero(ahat[0].rows(), ahat[0].cols());
    for (std::size_t t = 0; t < a.size(); ++t) s += std::conj(dual(c, t)) * ahat[t];
    r.inverse_residual = std::max(r.inverse_residual, (s - big_a[c]).norm());
  }
  return r;
}

}  // namespace ncf
