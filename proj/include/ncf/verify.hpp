#pragma once

// Property suites behind `ncf verify` and the acceptance binary. Every
// section draws from one caller-owned Rng, so a suite is reproducible from
// its seed alone.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ncf/abelian.hpp"
#include "ncf/axb.hpp"
#include "ncf/conv_algebra.hpp"
#include "ncf/group.hpp"
#include "ncf/json_io.hpp"
#include "ncf/plancherel.hpp"
#include "ncf/posdef.hpp"
#include "ncf/random.hpp"

namespace ncf::verify {

struct Check {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  double tolerance = 0.0;
  bool gating = true;  // report-only checks never affect the exit status
  bool at_least = false;  // pass iff residual >= tolerance (a required improvement)
  std::size_t instances = 1;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::string inputs_digest;
  std::vector<Check> checks;
  double wall_time_s = 0.0;
  json details = json::object();

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.gating; });
  }

  /// Records residual <= tolerance. Non-finite residuals fail and are stored
  /// as the largest double so the report stays valid JSON.
  void record(std::string name, double residual, double tolerance, bool gating = true, std::size_t instances = 1) {
    Check c;
    c.name = std::move(name);
    c.passed = std::isfinite(residual) && residual <= tolerance;
    c.residual = std::isfinite(residual) ? residual : std::numeric_limits<double>::max();
    c.tolerance = tolerance;
    c.gating = gating;
    c.instances = instances;
    checks.push_back(std::move(c));
  }

  /// Records value >= bound.
  void record_at_least(std::string name, double value, double bound, bool gating = true, std::size_t instances = 1) {
    Check c;
    c.name = std::move(name);
    c.passed = std::isfinite(value) && value >= bound;
    c.residual = std::isfinite(value) ? value : std::numeric_limits<double>::max();
    c.tolerance = bound;
    c.gating = gating;
    c.at_least = true;
    c.instances = instances;
    checks.push_back(std::move(c));
  }

  void record_bool(std::string name, bool passed, bool gating = true, std::size_t instances = 1) {
    record(std::move(name), passed ? 0.0 : 1.0, 0.0, gating, instances);
  }

  /// Checks whose name starts with `prefix`.
  std::vector<const Check*> matching(std::string_view prefix) const {
    std::vector<const Check*> out;
    for (const auto& c : checks)
      if (std::string_view(c.name).substr(0, prefix.size()) == prefix) out.push_back(&c);
    return out;
  }
};

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

inline json to_json(const RunReport& r) {
  json checks = json::array();
  std::size_t failed = 0, soft_failed = 0;
  for (const auto& c : r.checks) {
    if (!c.passed) ++(c.gating ? failed : soft_failed);
    checks.push_back({{"name", c.name},
                      {"status", c.passed ? "pass" : "fail"},
                      {"gating", c.gating},
                      {"residual", c.residual},
                      {"comparison", c.at_least ? ">=" : "<="},
                      {"tolerance", c.tolerance},
                      {"instances", c.instances}});
  }
  return {{"command", r.command},
          {"seed", r.seed},
          {"inputs_digest", r.inputs_digest},
          {"ok", r.ok()},
          {"summary",
           {{"checks", r.checks.size()}, {"failed", failed}, {"report_only_failed", soft_failed}}},
          {"checks", std::move(checks)},
          {"details", r.details},
          {"wall_time_s", r.wall_time_s}};
}

// ---------------------------------------------------------------------------
// Helpers

namespace detail {

inline double rel(double residual, double scale) { return residual / (1.0 + scale); }

inline std::string group_name(const FiniteGroup& g) {
  const auto& d = g.descriptor();
  switch (d.kind) {
    case GroupKind::cyclic: return "C" + std::to_string(d.n);
    case GroupKind::dihedral: return "D" + std::to_string(d.n);
    case GroupKind::symmetric: return "S" + std::to_string(d.n);
    case GroupKind::quaternion8: return "Q8";
    case GroupKind::heisenberg: return "H" + std::to_string(d.p);
    case GroupKind::product: {
      std::string s;
      for (const auto& f : d.factors) {
        if (!s.empty()) s += "x";
        s += group_name(*build_group(f));
      }
      return s;
    }
    case GroupKind::table: return "T" + std::to_string(g.order());
  }
  return "G";
}

/// Largest entrywise difference.
inline double max_abs_diff(const OpValFn& a, const OpValFn& b) {
  a.check_compatible(b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) m = std::max(m, max_abs(a[t] - b[t]));
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// core

inline void check_group_axioms(RunReport& r) {
  for (const auto& g : standard_test_groups()) {
    const auto rep = validate_group(*g);
    for (const auto& ax : rep.axioms) r.record_bool("core/axioms/" + detail::group_name(*g) + "/" + ax.axiom, ax.passed);
  }
  // A corrupted table must be rejected.
  Table bad = cyclic(4)->table();
  std::swap(bad[1][1], bad[1][2]);
  r.record_bool("core/axioms/rejects_corrupted_table", !validate_group(bad).ok());
}

/// Associativity, *-anti-multiplicativity, lambda and rho as *-homomorphisms,
/// rho(f) = J lambda(Jf) J, V_s V_t = V_st and the factorization
/// (b^* * c)(t) = Lambda(b)^* V_t Lambda(c).
inline void check_algebra_laws(RunReport& r, Rng& rng, std::size_t samples = 20) {
  for (const auto& g : standard_test_groups()) {
    const std::string gn = detail::group_name(*g);
    double assoc = 0, star = 0, lam = 0, lam_adj = 0, rho = 0, jconj = 0, commute = 0, fact = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t k = 1 + i % 2;
      const auto x = random_fn(g, k, rng), y = random_fn(g, k, rng), z = random_fn(g, k, rng);
      const double sc = norm(x) * norm(y) * (1.0 + norm(z));
      assoc = std::max(assoc, detail::rel(max_diff(convolve(convolve(x, y), z), convolve(x, convolve(y, z))), sc));
      star = std::max(star, detail::rel(max_diff(involute(convolve(x, y)), convolve(involute(y), involute(x))), sc));
      const auto lx = left_regular(x), ly = left_regular(y);
      lam = std::max(lam, detail::rel(((lx * ly).matrix() - left_regular(convolve(x, y)).matrix()).norm(), sc));
      lam_adj = std::max(lam_adj, detail::rel((lx.adjoint().matrix() - left_regular(involute(x)).matrix()).norm(), norm(x)));
      fact = std::max(fact, detail::rel(max_diff(fourier_factorization({{y, z}}), convolve(involute(y), z)), sc));
      if (k == 1) {
        const auto rx = right_regular(x), ry = right_regular(y);
        // rho is a *-anti-homomorphism into the commutant: rho(x*y) = rho(y) rho(x).
        rho = std::max(rho, detail::rel(((ry * rx).matrix() - right_regular(convolve(x, y)).matrix()).norm(), sc));
        jconj = std::max(jconj, detail::rel((rx.matrix() - conjugate_by_J(left_regular(modular_conjugation(x))).matrix()).norm(),
                                            norm(x)));
        commute = std::max(commute, detail::rel(((lx * ry).matrix() - (ry * lx).matrix()).norm(), sc));
      }
    }
    const std::string p = "core/algebra/" + gn + "/";
    r.record(p + "associativity", assoc, 1e-12, true, samples);
    r.record(p + "involution_reverses_products", star, 1e-12, true, samples);
    r.record(p + "lambda_multiplicative", lam, 1e-12, true, samples);
    r.record(p + "lambda_preserves_adjoint", lam_adj, 1e-12, true, samples);
    r.record(p + "rho_antimultiplicative", rho, 1e-12, true, samples);
    r.record(p + "rho_equals_J_lambda_J", jconj, 1e-12, true, samples);
    r.record(p + "lambda_rho_commute", commute, 1e-12, true, samples);
    r.record(p + "gns_factorization", fact, 1e-12, true, samples);

    double vlaw = 0;
    for (std::size_t s = 0; s < g->order(); ++s)
      for (std::size_t t = 0; t < g->order(); ++t)
        vlaw = std::max(vlaw, ((translate_V(g, s, 1) * translate_V(g, t, 1)).matrix() - translate_V(g, g->mul(s, t), 1).matrix())
                                  .norm());
    r.record(p + "V_s_V_t_equals_V_st", vlaw, 0.0, true, g->order() * g->order());
  }
}

/// The transform is a *-isomorphism: coefficients of lambda_A(f) give back f,
/// products go to convolutions and adjoints to involutions.
inline void check_transform_isomorphism(RunReport& r, Rng& rng, std::size_t pairs = 100) {
  for (const auto& g : standard_test_groups()) {
    const std::string p = "core/transform/" + detail::group_name(*g) + "/";
    double coeff = 0, route = 0, prod = 0, adj = 0;
    for (std::size_t i = 0; i < pairs; ++i) {
      const auto x = random_fn(g, 1, rng), y = random_fn(g, 1, rng);
      const auto xh = fourier_transform(x), yh = fourier_transform(y);
      coeff = std::max(coeff, detail::max_abs_diff(fourier_from_operator(left_regular(x)), x));
      route = std::max(route, detail::max_abs_diff(xh, fourier_transform_direct(x)));
      const auto lxy = left_regular(x) * left_regular(y);
      prod = std::max(prod, detail::rel(max_diff(fourier_from_operator(lxy), convolve(xh, yh)), norm(x) * norm(y)));
      adj = std::max(adj, detail::rel(max_diff(fourier_from_operator(left_regular(x).adjoint()), involute(xh)), norm(x)));
    }
    r.record(p + "coefficients_of_lambda", coeff, 1e-14, true, pairs);
    r.record(p + "weight_route_matches_direct", route, 1e-14, true, pairs);
    r.record(p + "product_to_convolution", prod, 1e-12, true, pairs);
    r.record(p + "adjoint_to_involution", adj, 1e-12, true, pairs);
  }
}

// ---------------------------------------------------------------------------
// inversion

/// ||sum_t a^(t) (x) lambda_t - lambda_A(a)|| <= 1e-10 (1 + ||a||), one check
/// per random element.
inline void check_inversion_theorem(RunReport& r, Rng& rng, std::size_t per_case = 200) {
  for (const auto& g : standard_test_groups()) {
    const std::string gn = detail::group_name(*g);
    for (std::size_t k = 1; k <= 3; ++k) {
      for (std::size_t i = 0; i < per_case; ++i) {
        const auto a = random_fn(g, k, rng);
        const auto inv = invert(fourier_transform(a));
        const double res = (inv.x.matrix() - left_regular(a).matrix()).norm();
        r.record("inversion/roundtrip/" + gn + "/k" + std::to_string(k) + "/" + std::to_string(i),
                 detail::rel(res, norm(a)), 1e-10);
      }
    }
  }
}

/// phi(lambda(xi)^* lambda(eta)) = <xi, eta> and
/// (id (x) Lambda)(a)^* (id (x) Lambda)(b) = (id (x) phi)(a^* b).
inline void check_plancherel_gns(RunReport& r, Rng& rng, std::size_t per_group = 100) {
  for (const auto& g : standard_test_groups()) {
    const std::string p = "inversion/plancherel/" + detail::group_name(*g) + "/";
    double scalar = 0, gns = 0;
    for (std::size_t i = 0; i < per_group; ++i) {
      const auto xi = random_fn(g, 1, rng), eta = random_fn(g, 1, rng);
      const Complex lhs = plancherel_value(convolve(involute(xi), eta))(0, 0);
      scalar = std::max(scalar, detail::rel(std::abs(lhs - inner(xi, eta)), norm(xi) * norm(eta)));
      const std::size_t k = 1 + i % 3;
      const auto a = random_fn(g, k, rng), b = random_fn(g, k, rng);
      const CMatrix l = gns_inner(gns_map(a), gns_map(b));
      gns = std::max(gns, detail::rel((l - plancherel_value(convolve(involute(a), b))).norm(), norm(a) * norm(b)));
    }
    r.record(p + "weight_is_inner_product", scalar, 1e-12, true, per_group);
    r.record(p + "gns_identity", gns, 1e-12, true, per_group);
  }
}

/// Operators outside M_k (x) L(G) are rejected; images of lambda_A are accepted.
inline void check_membership(RunReport& r, Rng& rng, std::size_t per_group = 10) {
  for (const auto& g : standard_test_groups()) {
    const std::string p = "inversion/membership/" + detail::group_name(*g) + "/";
    std::size_t accepted = 0, rejected = 0;
    for (std::size_t i = 0; i < per_group; ++i) {
      const auto a = random_fn(g, 2, rng);
      if (membership_check(left_regular(a)).ok) ++accepted;
      const auto kk = static_cast<Eigen::Index>(2 * g->order());
      const BlockOperator noise(g, 2, random_matrix(rng, kk, kk));
      if (!membership_check(noise).ok) ++rejected;
    }
    r.record_bool(p + "accepts_lambda_images", accepted == per_group, true, per_group);
    r.record_bool(p + "rejects_generic_operators", rejected == per_group, true, per_group);
  }
}

// ---------------------------------------------------------------------------
// posdef

/// pd(f) agrees with psd(lambda_A(f)) on random Hermitian f of three kinds:
/// generic (mostly indefinite), Gram-built (positive), and generic shifted by
/// a multiple of delta_e chosen to straddle the boundary.
inline void check_positivity_equivalence(RunReport& r, Rng& rng, std::size_t per_group = 500) {
  for (const auto& g : standard_test_groups()) {
    const std::string p = "posdef/equivalence/" + detail::group_name(*g) + "/";
    std::size_t disagreements = 0, scalar_disagreements = 0, pd_count = 0, scalar_cases = 0;
    for (std::size_t i = 0; i < per_group; ++i) {
      const std::size_t k = 1 + (i / 3) % 3;
      OpValFn f(g, k);
      switch (i % 3) {
        case 0: f = random_hermitian_fn(g, k, rng); break;
        case 1: f = random_gram_fn(g, k, rng); break;
        default: {
          f = random_hermitian_fn(g, k, rng);
          const double lo = psd_check(block_gram(f)).min_eig;
          std::uniform_real_distribution<double> u(0.9, 1.1);
          f[0] -= (lo * u(rng)) * CMatrix::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        }
      }
      const auto eq = positivity_equivalence(f);
      if (eq.pd) ++pd_count;
      if (eq.pd != eq.op_pos) ++disagreements;
      if (k == 1) {
        ++scalar_cases;
        if (!eq.agree) ++scalar_disagreements;
      }
    }
    r.record(p + "pd_iff_lambda_positive", static_cast<double>(disagreements), 0.0, true, per_group);
    r.record(p + "scalar_pd_iff_lambda_Jf_iff_rho", static_cast<double>(scalar_disagreements), 0.0, true, scalar_cases);
    // Both classes must actually occur for the comparison to mean anything.
    r.record_bool(p + "both_classes_sampled", pd_count > 0 && pd_count < per_group, true, per_group);
  }
}

/// Dilations of random positive definite functions: half S0^* u0 S0 from
/// random unitary representations, half Gram-built.
inline void check_naimark(RunReport& r, Rng& rng, std::size_t per_group = 100) {
  for (const auto& g : standard_test_groups()) {
    const std::string p = "posdef/naimark/" + detail::group_name(*g) + "/";
    double recon = 0, unit = 0, hom = 0;
    std::size_t structure_failures = 0;
    for (std::size_t i = 0; i < per_group; ++i) {
      const std::size_t k = 1 + i % 3;
      const OpValFn f = (i % 2 == 0) ? random_dilation_fn(g, k, rng, 1 + (i / 2) % 2, (i % 4 == 0) ? 1 : 0)
                                     : random_gram_fn(g, k, rng);
      const auto d = naimark_dilate(f);
      recon = std::max(recon, d.residuals.reconstruction / (1.0 + op_norm(f[0])));
      unit = std::max(unit, d.residuals.unitarity);
      hom = std::max(hom, d.residuals.homomorphism);
      if (!pd_structure_report(f).passed()) ++structure_failures;
    }
    r.record(p + "reconstruction", recon, 1e-8, true, per_group);
    r.record(p + "unitarity", unit, 1e-10, true, per_group);
    r.record(p + "homomorphism", hom, 1e-10, true, per_group);
    r.record(p + "structure_report", static_cast<double>(structure_failures), 0.0, true, per_group);
  }
}

/// xi^* * xi = f for the canonical square-root factor of scalar pd f.
inline void check_pd_factor(RunReport& r, Rng& rng, std::size_t per_group = 10) {
  for (const auto& g : standard_test_groups()) {
    double res = 0;
    for (std::size_t i = 0; i < per_group; ++i) {
      const auto f = random_gram_fn(g, 1, rng);
      const auto xi = positive_definite_factor(f);
      res = std::max(res, detail::rel(max_diff(convolve(involute(xi), xi), f), norm(f)));
    }
    r.record("posdef/factor/" + detail::group_name(*g), res, 1e-9, true, per_group);
  }
}

// ---------------------------------------------------------------------------
// abelian

/// Cyclic groups of order 1..64 and the non-cyclic Abelian groups of order <= 64
/// listed below.
inline std::vector<GroupPtr> abelian_catalog() {
  std::vector<GroupPtr> out;
  for (int n = 1; n <= 64; ++n) out.push_back(cyclic(n));
  const std::vector<std::vector<int>> products = {
      {2, 2},    {2, 4},    {2, 2, 2}, {3, 3},    {2, 6},       {4, 4},       {2, 8},          {2, 2, 4},
      {2, 2, 2, 2}, {3, 6}, {2, 10},   {2, 12},   {2, 2, 6},    {5, 5},       {2, 14},         {4, 8},
      {2, 16},   {2, 2, 8}, {2, 4, 4}, {3, 9},    {6, 6},       {2, 2, 2, 4}, {2, 2, 2, 2, 2}, {4, 12},
      {2, 2, 2, 6}, {7, 7}, {8, 8},    {4, 4, 4}, {2, 4, 8},    {2, 2, 2, 2, 2, 2}};
  for (const auto& factors : products) {
    std::vector<GroupDescriptor> ds;
    for (int n : factors) ds.push_back(GroupDescriptor::cyclic(n));
    out.push_back(build_group(GroupDescriptor::product(std::move(ds))));
  }
  return out;
}

/// Textbook DFT: X_j = sum_m x_m exp(-2 pi i j m / n), written without any
/// group machinery. Element m of cyclic(n) is the residue m.
inline std::vector<Complex> classical_dft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex s = 0.0;
    for (std::size_t m = 0; m < n; ++m)
      s += x[m] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * m) % n) / static_cast<double>(n));
    out[j] = s;
  }
  return out;
}

inline std::vector<Complex> classical_idft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += x[j] * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * m) % n) / static_cast<double>(n));
    out[m] = s / static_cast<double>(n);
  }
  return out;
}

struct DftComparison {
  double forward = 0.0;  // max_j |Gelfand(a)(chi_j) - X_j|
  double inverse = 0.0;  // max_m |a^(m) - idft(X)_m|
};

/// Compares the Gelfand transform on cyclic(n) with the classical DFT; chi_j
/// is identified as the character with chi(1) = exp(2 pi i j / n).
inline DftComparison dft_compare(const OpValFn& a) {
  if (a.k() != 1) throw ShapeError("dft_compare: scalar functions only");
  const auto& d = a.group().descriptor();
  if (d.kind != GroupKind::cyclic) throw UnsupportedError("dft_compare: cyclic groups only");
  const std::size_t n = a.size();
  const auto dual = dual_group(a.group_ptr());
  const auto big_a = gelfand_transform(dual, a);
  std::vector<Complex> x(n);
  for (std::size_t m = 0; m < n; ++m) x[m] = a.scalar(m);
  const auto X = classical_dft(x);
  DftComparison c;
  for (std::size_t chi = 0; chi < dual.size(); ++chi) {
    const std::size_t j = n > 1 ? dual.phase(chi, 1) * n / dual.exponent() : 0;
    c.forward = std::max(c.forward, std::abs(big_a[chi](0, 0) - X[j]));
  }
  const auto back = classical_idft(X);
  const auto ahat = fourier_transform(a);
  for (std::size_t m = 0; m < n; ++m) c.inverse = std::max(c.inverse, std::abs(ahat.scalar(m) - back[m]));
  return c;
}

inline void check_abelian_bridge(RunReport& r, Rng& rng) {
  double worst = 0;
  std::size_t count = 0;
  for (const auto& g : abelian_catalog()) {
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto a = random_fn(g, k, rng);
      const auto c = crosscheck_inversion(a);
      worst = std::max(worst, std::max(c.forward_residual, c.inverse_residual));
      r.record("abelian/crosscheck/" + detail::group_name(*g) + "/k" + std::to_string(k),
               std::max(c.forward_residual, c.inverse_residual), 1e-10);
      ++count;
    }
  }
  for (int n : {2, 3, 4, 6, 8, 12}) {
    const auto a = random_fn(cyclic(n), 1, rng);
    const auto c = dft_compare(a);
    r.record("abelian/dft_oracle/C" + std::to_string(n), std::max(c.forward, c.inverse), 1e-10);
  }
  // Orthogonality of the computed character tables.
  double ortho = 0;
  for (const auto& g : abelian_catalog()) {
    const CMatrix t = dual_group(g).table();
    ortho = std::max(ortho, (t * t.adjoint() / static_cast<double>(g->order()) -
                             CMatrix::Identity(t.rows(), t.rows()))
                                .norm());
  }
  r.record("abelian/character_orthogonality", ortho, 1e-10, true, abelian_catalog().size());
  r.details["abelian_groups"] = count / 2;
}

// ---------------------------------------------------------------------------
// axb

/// Exact scalar laws gate; quadrature-level identities are report-only.
inline void check_axb(RunReport& r) {
  using namespace ncf::axb;
  const auto grid = build_grid();
  const auto fine = build_grid(grid->params().refined());

  // Delta(pq) = Delta(p) Delta(q) over interior grid points.
  std::vector<Element> pts;
  for (std::size_t i : interior_sample(*grid, 60)) pts.push_back(grid->point(i));
  r.record("axb/exact/modular_homomorphism", modular_homomorphism_residual(pts), 1e-14, true, pts.size() * pts.size());

  // Delta^{iz} Delta^{iw} = Delta^{i(z+w)} and Delta^{i(i/2)} = Delta^{-1/2}.
  double law = 0, half = 0;
  const std::vector<std::complex<double>> zs = {{0.0, 0.0}, {0.7, 0.0}, {-1.3, 0.0}, {0.0, 0.5}, {0.25, -0.5}, {2.0, 0.3}};
  for (const auto& p : pts) {
    const double delta = axb::modular(p);
    half = std::max(half, std::abs(modular::flow_factor(delta, {0.0, 0.5}) - std::pow(delta, -0.5)) / std::pow(delta, -0.5));
    for (const auto& z : zs)
      for (const auto& w : zs) {
        const Complex lhs = modular::flow_factor(delta, z) * modular::flow_factor(delta, w);
        const Complex rhs = modular::flow_factor(delta, z + w);
        law = std::max(law, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
  }
  r.record("axb/exact/flow_exponent_law", law, 1e-14, true, pts.size() * zs.size() * zs.size());
  r.record("axb/exact/flow_at_half_i", half, 1e-14, true, pts.size());

  // J sigma_{i/2}(lambda_t) J = V_t on smooth vectors, default grid and 2x refinement.
  const auto coarse_vecs = smooth_test_vectors(grid);
  const auto fine_vecs = smooth_test_vectors(fine);
  json flow = json::array();
  double worst = 0, worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& t : flow_test_elements()) {
    const auto c = modular_flow_check(grid, t, {0.0, 0.5}, coarse_vecs);
    const auto f = modular_flow_check(fine, t, {0.0, 0.5}, fine_vecs);
    const double ratio = c.conjugation_deviation / f.conjugation_deviation;
    worst = std::max(worst, c.conjugation_deviation);
    worst_ratio = std::min(worst_ratio, ratio);
    flow.push_back({{"t", {t.a, t.b}},
                    {"deviation_default", c.conjugation_deviation},
                    {"deviation_refined", f.conjugation_deviation},
                    {"refinement_ratio", ratio}});
  }
  r.record("axb/report/J_flow_J_equals_V_deviation", worst, 0.15, false, flow.size());
  r.record_at_least("axb/report/refinement_ratio", worst_ratio, 1.5, false, flow.size());
  r.details["axb_flow"] = flow;

  // A translation far from the identity: V_t pushes mass towards the window
  // edge and truncation, not resolution, dominates the deviation.
  {
    const Element far{2.0, 0.0};
    const double c = modular_flow_check(grid, far, {0.0, 0.5}, coarse_vecs).conjugation_deviation;
    const double f = modular_flow_check(fine, far, {0.0, 0.5}, fine_vecs).conjugation_deviation;
    r.record("axb/report/far_translation_deviation", c, 0.15, false);
    r.details["axb_far_translation"] = {{"t", {far.a, far.b}}, {"deviation_default", c}, {"deviation_refined", f}};
  }
  double support = 0;
  for (const auto& v : coarse_vecs) support = std::max(support, support_report(v).outside_fraction);
  r.details["axb_test_vector_outside_fraction"] = support;

  // Associativity defect of the quadrature convolution, default vs refined.
  {
    const auto fns = admissible_test_functions();
    const double c = associativity_defect(sample(grid, fns[0]), sample(grid, fns[1]), sample(grid, fns[2]));
    const double f = associativity_defect(sample(fine, fns[0]), sample(fine, fns[1]), sample(fine, fns[2]));
    r.record_at_least("axb/report/associativity_refinement_ratio", c / f, 1.5, false);
    r.details["axb_associativity"] = {{"defect_default", c}, {"defect_refined", f}};
  }

  // Windowed nets for nonnegative integrands.
  std::vector<Window> windows;
  const double lr = std::log(grid->params().a_max), br = grid->params().B;
  for (int w = 1; w <= 8; ++w) windows.push_back({lr * w / 8.0, br * w / 8.0});
  bool monotone = true;
  json nets = json::array();
  for (const auto& v : coarse_vecs) {
    GridFn sq(grid);
    for (std::size_t i = 0; i < grid->size(); ++i) sq.values[i] = std::norm(v.values[i]);
    const auto net = windowed_integral_net(sq, windows, 1e-3);
    monotone = monotone && net.monotone;
    nets.push_back({{"partial_sums", net.partial_sums}, {"integrable", net.integrable}});
  }
  r.record_bool("axb/report/net_monotone", monotone, false, coarse_vecs.size());
  r.details["axb_nets"] = nets;

  // pd / positivity certificates on the documented examples.
  json pd = json::object();
  for (const auto& ex : documented_pd_examples(grid)) {
    const auto rep = pd_positivity_check(ex.f);
    r.record_bool("axb/report/pd_certificates/" + ex.name, rep.agree && rep.op_positive == ex.expected_positive, false);
    pd[ex.name] = {{"expected_positive", ex.expected_positive},
                   {"op_min_eig", rep.op_min_eig},
                   {"op_scale", rep.op_scale},
                   {"gram_min_eig", rep.gram_min_eig},
                   {"gram_scale", rep.gram_scale}};
  }
  r.details["axb_pd"] = pd;
  r.details["axb_grid"] = {{"a_min", grid->params().a_min}, {"a_max", grid->params().a_max},
                           {"B", grid->params().B},         {"m_a", grid->params().m_a},
                           {"m_b", grid->params().m_b},     {"refined_points", fine->size()}};
}

// ---------------------------------------------------------------------------
// Suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"core", "inversion", "posdef", "abelian", "axb", "all"};
  return names;
}

inline bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

/// Runs a named suite into `r`; throws ParameterError on an unknown name.
inline void run_suite(const std::string& suite, Rng& rng, RunReport& r) {
  if (!is_suite(suite)) throw ParameterError("unknown suite '" + suite + "'");
  const bool all = suite == "all";
  if (all || suite == "core") {
    check_group_axioms(r);
    check_algebra_laws(r, rng);
    check_transform_isomorphism(r, rng);
  }
  if (all || suite == "inversion") {
    check_inversion_theorem(r, rng);
    check_plancherel_gns(r, rng);
    check_membership(r, rng);
  }
  if (all || suite == "posdef") {
    check_positivity_equivalence(r, rng);
    check_naimark(r, rng);
    check_pd_factor(r, rng);
  }
  if (all || suite == "abelian") check_abelian_bridge(r, rng);
  if (all || suite == "axb") check_axb(r);
}

}  // namespace ncf::verify
