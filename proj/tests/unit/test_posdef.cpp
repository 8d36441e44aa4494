#include "catch_amalgamated.hpp"

#include "ncf/posdef.hpp"
#include "ncf/random.hpp"

using namespace ncf;

TEST_CASE("block Gram matrix", "[posdef]") {
  Rng rng(1);
  const auto g = dihedral(3);
  const auto f = random_fn(g, 2, rng);
  const CMatrix p = block_gram(f);
  REQUIRE(p.rows() == 12);
  for (std::size_t s = 0; s < 6; ++s)
    for (std::size_t t = 0; t < 6; ++t) {
      std::size_t u = 0;  // the u with s u = t
      while (g->mul(s, u) != t) ++u;
      CHECK((p.block(static_cast<Eigen::Index>(2 * s), static_cast<Eigen::Index>(2 * t), 2, 2) - f[u]).norm() == 0.0);
    }
}

TEST_CASE("positive definiteness on small examples", "[posdef]") {
  const auto d4 = dihedral(4);
  SECTION("delta(e) is positive definite") { CHECK(is_positive_definite(OpValFn::delta(d4, 0, 2)).pd); }
  SECTION("delta(t0) is not for t0 != e") {
    for (std::size_t t0 = 1; t0 < 8; ++t0) {
      const auto r = is_positive_definite(OpValFn::delta(d4, t0));
      CHECK_FALSE(r.pd);
      CHECK(r.min_eig < -0.5);
    }
  }
  SECTION("constant I_k") {
    const auto f = amplify(OpValFn::from_scalars(d4, std::vector<Complex>(8, 1.0)), 3);
    CHECK(is_positive_definite(f).pd);
  }
  SECTION("characters of cyclic(6)") {
    const auto g = cyclic(6);
    std::vector<Complex> chi(6);
    for (int t = 0; t < 6; ++t) chi[static_cast<std::size_t>(t)] = std::polar(1.0, 2.0 * M_PI * t / 6.0);
    CHECK(is_positive_definite(OpValFn::from_scalars(g, chi)).pd);
    // Negating a positive definite function with f(e) > 0 breaks it.
    CHECK_FALSE(is_positive_definite(Complex(-1.0) * OpValFn::from_scalars(g, chi)).pd);
  }
}

TEST_CASE("positive definite iff lambda_A(f) is positive", "[posdef][property]") {
  Rng rng(2);
  int pd_seen = 0, non_pd_seen = 0;
  for (const auto& g : standard_test_groups())
    for (std::size_t k : {1u, 2u}) {
      for (const auto& f : {random_gram_fn(g, k, rng), random_dilation_fn(g, k, rng), random_hermitian_fn(g, k, rng)}) {
        const auto r = positivity_equivalence(f);
        CHECK(r.agree);
        (r.pd ? pd_seen : non_pd_seen) += 1;
        if (k == 1) {
          REQUIRE(r.lambda_jf_pos.has_value());
          CHECK(*r.lambda_jf_pos == r.pd);
          CHECK(*r.rho_pos == r.pd);
        }
      }
    }
  CHECK(pd_seen > 0);
  CHECK(non_pd_seen > 0);
}

TEST_CASE("operator positivity on Heisenberg(3) with k = 3", "[posdef]") {
  // 81 x 81 Hermitian matrices of this shape once defeated an iterative solver.
  Rng rng(20);
  const auto g = heisenberg(3);
  for (int i = 0; i < 4; ++i) {
    const auto f = random_hermitian_fn(g, 3, rng);
    const auto r = positivity_equivalence(f);
    CHECK(r.agree);
    // The two matrices are permutation similar, so their spectra coincide.
    CHECK(std::abs(r.op_min_eig - r.pd_min_eig) <= 1e-10 * (1.0 + norm(f)));
  }
}

TEST_CASE("structure of positive definite functions", "[posdef]") {
  Rng rng(3);
  for (const auto& g : standard_test_groups()) {
    const auto f = random_dilation_fn(g, 2, rng);
    const auto rep = pd_structure_report(f);
    CHECK(rep.passed());
    CHECK(rep.max_hermitian_residual <= 1e-12 * (1.0 + norm(f)));
    CHECK(rep.max_norm_excess <= 1e-10);
  }
  CHECK_THROWS_AS(pd_structure_report(OpValFn::delta(cyclic(4), 1)), NotPositiveDefiniteError);
}

TEST_CASE("Naimark dilation", "[posdef]") {
  Rng rng(4);
  SECTION("delta(e) dilates to the regular representation") {
    const auto g = symmetric(3);
    const auto d = naimark_dilate(OpValFn::delta(g, 0));
    CHECK(d.dim == 6);
  }
  SECTION("constant I_k dilates to the trivial representation") {
    const auto g = dihedral(4);
    const auto d = naimark_dilate(amplify(OpValFn::from_scalars(g, std::vector<Complex>(8, 1.0)), 2));
    CHECK(d.dim == 2);
    for (const auto& u : d.u) CHECK((u - CMatrix::Identity(2, 2)).norm() <= 1e-12);
  }
  SECTION("non positive definite input") {
    CHECK_THROWS_AS(naimark_dilate(OpValFn::delta(dihedral(4), 3)), NotPositiveDefiniteError);
  }
  SECTION("random positive definite functions") {
    for (const auto& g : standard_test_groups()) {
      const auto f = random_dilation_fn(g, 2, rng);
      const auto d = naimark_dilate(f);
      CHECK(d.dim <= 2 * g->order());
      CHECK(max_diff(dilation_values(d), f) <= 1e-10 * (1.0 + norm(f)));
      // Independent checks of the representation property.
      const auto r = static_cast<Eigen::Index>(d.dim);
      for (std::size_t s = 0; s < g->order(); ++s) {
        CHECK((d.u[s].adjoint() * d.u[s] - CMatrix::Identity(r, r)).norm() <= 1e-10);
        for (std::size_t t = 0; t < g->order(); ++t) CHECK((d.u[s] * d.u[t] - d.u[g->mul(s, t)]).norm() <= 1e-10);
      }
      CHECK(d.residuals.invariance <= 1e-9);
    }
  }
  SECTION("low rank functions give low dimensional dilations") {
    const auto g = quaternion8();
    const auto f = random_dilation_fn(g, 3, rng, 1, 1);
    const auto d = naimark_dilate(f);
    CHECK(d.dim <= 8);
    CHECK(max_diff(dilation_values(d), f) <= 1e-10 * (1.0 + norm(f)));
  }
}

TEST_CASE("integrated form", "[posdef]") {
  Rng rng(5);
  const auto g = dihedral(3);
  const auto f = random_dilation_fn(g, 2, rng);
  const auto d = naimark_dilate(f);
  for (std::size_t t = 0; t < 6; ++t) CHECK((integrated_form(d, OpValFn::delta(g, t)) - f[t]).norm() <= 1e-10);
  const auto x = random_fn(g, 1, rng);
  CMatrix oracle = CMatrix::Zero(2, 2);
  for (std::size_t t = 0; t < 6; ++t) oracle += x.scalar(t) * f[t];
  CHECK((integrated_form(d, x) - oracle).norm() <= 1e-10 * (1.0 + norm(x) * norm(f)));
  CHECK_THROWS_AS(integrated_form(d, random_fn(g, 2, rng)), ShapeError);
  CHECK_THROWS_AS(integrated_form(d, random_fn(cyclic(6), 1, rng)), ShapeError);
}

TEST_CASE("square root factor of a positive definite function", "[posdef]") {
  Rng rng(6);
  for (const auto& g : standard_test_groups()) {
    const auto f = random_gram_fn(g, 1, rng);
    const auto xi = positive_definite_factor(f);
    CHECK(max_diff(convolve(involute(xi), xi), f) <= 1e-9 * (1.0 + norm(f)));
  }
  CHECK_THROWS_AS(positive_definite_factor(OpValFn::delta(cyclic(3), 1)), NotPositiveDefiniteError);
  CHECK_THROWS_AS(positive_definite_factor(OpValFn::delta(cyclic(3), 0, 2)), UnsupportedError);
}
