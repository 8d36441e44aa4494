#include "catch_amalgamated.hpp"

#include "ncf/plancherel.hpp"
#include "ncf/random.hpp"

using namespace ncf;

namespace {

CMatrix translation_matrix(const FiniteGroup& g, std::size_t t) {
  const auto n = static_cast<Eigen::Index>(g.order());
  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t s = 0; s < g.order(); ++s) p(static_cast<Eigen::Index>(g.mul(t, s)), static_cast<Eigen::Index>(s)) = 1.0;
  return p;
}

/// sum_t P_t (x) ahat(t) in the group-major layout.
CMatrix inversion_oracle(const OpValFn& ahat) {
  const auto dim = static_cast<Eigen::Index>(ahat.k() * ahat.size());
  CMatrix x = CMatrix::Zero(dim, dim);
  for (std::size_t t = 0; t < ahat.size(); ++t) x += kron(translation_matrix(ahat.group(), t), ahat[t]);
  return x;
}

}  // namespace

TEST_CASE("Fourier transform", "[plancherel]") {
  Rng rng(1);
  SECTION("delta(e) (x) I_k transforms to I_k at e") {
    const auto g = symmetric(3);
    const auto h = fourier_transform(OpValFn::delta(g, 0, 2));
    CHECK(h[0] == CMatrix::Identity(2, 2));
    for (std::size_t t = 1; t < 6; ++t) CHECK(h[t].isZero(0.0));
  }
  SECTION("delta(t0) transforms to I_k at t0") {
    const auto g = dihedral(4);
    for (std::size_t t0 = 0; t0 < 8; ++t0) {
      const auto h = fourier_transform(OpValFn::delta(g, t0, 3));
      for (std::size_t t = 0; t < 8; ++t) CHECK(h[t] == (t == t0 ? CMatrix(CMatrix::Identity(3, 3)) : CMatrix(CMatrix::Zero(3, 3))));
    }
  }
  SECTION("weight route agrees with the coefficients") {
    for (const auto& g : standard_test_groups()) {
      const auto a = random_fn(g, 2, rng);
      CHECK(max_diff(fourier_transform(a), fourier_transform_direct(a)) <= 1e-13);
      CHECK(max_diff(fourier_transform(a), a) <= 1e-13);
    }
  }
  SECTION("weight is evaluation at e") {
    const auto a = random_fn(quaternion8(), 2, rng);
    CHECK(plancherel_value(a) == a[0]);
    // (1 (x) lambda_{t^-1}) a has coefficient a(ts) at s.
    const auto& G = a.group();
    for (std::size_t t = 0; t < 8; ++t) {
      const auto shifted = left_translate(a, t);
      for (std::size_t s = 0; s < 8; ++s) CHECK((shifted[s] - a[G.mul(t, s)]).norm() == 0.0);
    }
  }
}

TEST_CASE("inversion", "[plancherel]") {
  Rng rng(2);
  for (const auto& g : standard_test_groups())
    for (std::size_t k : {1u, 2u}) {
      const auto a = random_fn(g, k, rng);
      const auto inv = invert(fourier_transform(a));
      CHECK(max_diff(inv.a, a) <= 1e-12 * (1.0 + norm(a)));
      CHECK((inv.x.matrix() - inversion_oracle(a)).norm() <= 1e-13);
      CHECK((inv.x.matrix() - left_regular(a).matrix()).norm() <= 1e-13);
    }

  SECTION("sum_t ahat(t) (x) lambda_t on cyclic(3)") {
    const auto g = cyclic(3);
    const auto a = OpValFn::from_scalars(g, {Complex(1, 0), Complex(0, 2), Complex(-3, 0)});
    const auto x = invert(a).x.matrix();
    CMatrix want(3, 3);
    want << Complex(1, 0), Complex(-3, 0), Complex(0, 2),  //
        Complex(0, 2), Complex(1, 0), Complex(-3, 0),      //
        Complex(-3, 0), Complex(0, 2), Complex(1, 0);
    CHECK((x - want).norm() == 0.0);
  }
}

TEST_CASE("GNS map and Plancherel identity", "[plancherel]") {
  Rng rng(3);
  for (const auto& g : standard_test_groups()) {
    const auto a = random_fn(g, 2, rng), b = random_fn(g, 2, rng);
    const CMatrix lhs = gns_inner(gns_map(a), gns_map(b));
    const CMatrix via_product = plancherel_value(convolve(involute(a), b));
    CMatrix oracle = CMatrix::Zero(2, 2);
    for (std::size_t t = 0; t < g->order(); ++t) oracle += a[t].adjoint() * b[t];
    CHECK((lhs - via_product).norm() <= 1e-12 * (1.0 + norm(a) * norm(b)));
    CHECK((lhs - oracle).norm() <= 1e-12 * (1.0 + norm(a) * norm(b)));
  }
  SECTION("scalar case: Lambda(lambda(f)) = f") {
    const auto f = random_fn(symmetric(3), 1, rng);
    CHECK((gns_map(f).vec - to_vector(f)).norm() == 0.0);
  }
  SECTION("V_t moves block rows") {
    const auto g = dihedral(3);
    const auto c = random_fn(g, 2, rng);
    const auto lc = gns_map(c);
    for (std::size_t t = 0; t < g->order(); ++t) {
      const CMatrix moved = apply_V(*g, t, lc.vec, 2);
      const CMatrix by_matrix = translate_V(g, t, 2).matrix() * lc.vec;
      CHECK((moved - by_matrix).norm() == 0.0);
    }
  }
}

TEST_CASE("membership in the group algebra", "[plancherel]") {
  Rng rng(4);
  const auto s3 = symmetric(3);
  const auto a = random_fn(s3, 2, rng);
  CHECK(membership_check(left_regular(a)).ok);
  CHECK(max_diff(fourier_from_operator(left_regular(a)), a) <= 1e-14);

  for (std::size_t t = 0; t < 6; ++t) CHECK(membership_check(left_translation(s3, t, 2)).ok);

  const BlockOperator noise(s3, 2, random_matrix(rng, 12, 12));
  CHECK_FALSE(membership_check(noise).ok);
  CHECK_THROWS_AS(fourier_from_operator(noise), NotInGroupAlgebraError);

  // A right translation by a non-central element is not in L(G).
  const auto v = translate_V(s3, *s3->find_label("213"), 1);
  const auto m = membership_check(v);
  CHECK_FALSE(m.ok);
  CHECK(m.violation > 1.0);

  SECTION("Abelian groups: right translations are left translations") {
    const auto c5 = cyclic(5);
    for (std::size_t t = 0; t < 5; ++t) CHECK(membership_check(translate_V(c5, t, 1)).ok);
  }
}

TEST_CASE("slice maps", "[plancherel]") {
  Rng rng(5);
  const auto g = dihedral(4);
  const auto a = random_fn(g, 3, rng);
  const PositiveFunctional theta(random_density(rng, 3));
  const auto sliced = slice_functional(a, theta);
  for (std::size_t t = 0; t < 8; ++t)
    CHECK(std::abs(sliced.scalar(t) - (theta.density() * a[t]).trace()) <= 1e-13);

  // Slicing commutes with the transform and with lambda_A.
  CHECK(max_diff(fourier_transform(sliced), slice_functional(fourier_transform(a), theta)) <= 1e-12);
  const auto la = left_regular(a);
  const CMatrix lsliced = left_regular(sliced).matrix();
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      CHECK(std::abs(lsliced(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) - theta(la.block(r, c))) <= 1e-12);

  SECTION("normalized trace and density checks") {
    const auto tr = PositiveFunctional::normalized_trace(3);
    CHECK(std::abs(tr(CMatrix::Identity(3, 3)) - 1.0) <= 1e-15);
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(PositiveFunctional(bad), NotPositiveError);
    CHECK_THROWS_AS(slice_functional(a, PositiveFunctional::normalized_trace(2)), ShapeError);
  }
}

TEST_CASE("Fourier factorization of b^* c", "[plancherel]") {
  Rng rng(6);
  for (const auto& g : standard_test_groups()) {
    std::vector<std::pair<OpValFn, OpValFn>> pairs;
    OpValFn sum(g, 2);
    for (int i = 0; i < 3; ++i) {
      pairs.emplace_back(random_fn(g, 2, rng), random_fn(g, 2, rng));
      sum += convolve(involute(pairs.back().first), pairs.back().second);
    }
    CHECK(max_diff(fourier_factorization(pairs), fourier_transform(sum)) <= 1e-12 * (1.0 + norm(sum)));
  }

  SECTION("positive a through its square root in M_k (x) L(G)") {
    const auto g = quaternion8();
    const auto b = random_fn(g, 2, rng);
    const auto a = convolve(involute(b), b);
    const CMatrix root = psd_sqrt(left_regular(a).matrix());
    const auto c = fourier_from_operator(BlockOperator(g, 2, root));
    CHECK(max_diff(convolve(involute(c), c), a) <= 1e-9 * (1.0 + norm(a)));
    CHECK(max_diff(fourier_factorization({{c, c}}), fourier_transform(a)) <= 1e-9 * (1.0 + norm(a)));
  }
  CHECK_THROWS_AS(fourier_factorization({}), ShapeError);
}
