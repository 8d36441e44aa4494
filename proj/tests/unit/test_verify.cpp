#include "catch_amalgamated.hpp"

#include "ncf/verify.hpp"

using namespace ncf;
using namespace ncf::verify;

TEST_CASE("FNV-1a digests", "[verify]") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("classical DFT helpers", "[verify]") {
  const auto x = classical_dft({1.0, 2.0, 3.0, 4.0});
  const std::vector<Complex> want{10.0, Complex(-2, 2), -2.0, Complex(-2, -2)};
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(x[j] - want[j]) <= 1e-14);
  const auto back = classical_idft(x);
  for (std::size_t m = 0; m < 4; ++m) CHECK(std::abs(back[m] - Complex(static_cast<double>(m + 1))) <= 1e-14);

  Rng rng(3);
  for (int n : {1, 6, 15}) {
    const auto c = dft_compare(random_fn(cyclic(n), 1, rng));
    CHECK(c.forward <= 1e-12);
    CHECK(c.inverse <= 1e-12);
  }
  CHECK_THROWS_AS(dft_compare(random_fn(direct_product(*cyclic(2), *cyclic(2)), 1, rng)), UnsupportedError);
}

TEST_CASE("report semantics", "[verify]") {
  RunReport r;
  r.record("a", 1e-14, 1e-12);
  CHECK(r.ok());
  r.record("soft", 1.0, 0.1, false);
  CHECK(r.ok());
  r.record_at_least("ratio", 2.0, 1.5);
  CHECK(r.ok());
  r.record("nan", std::nan(""), 1.0);
  CHECK_FALSE(r.ok());
  CHECK(r.checks.back().residual == std::numeric_limits<double>::max());

  const json j = to_json(r);
  CHECK(j["ok"] == false);
  CHECK(j["summary"]["checks"] == 4);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(j["summary"]["report_only_failed"] == 1);
  CHECK(j["checks"][2]["comparison"] == ">=");
  CHECK(r.matching("ra").size() == 1);
  // Dumps without throwing on non-finite input.
  CHECK_NOTHROW(j.dump());
}

TEST_CASE("suites are deterministic for a seed", "[verify]") {
  auto run = [](std::uint64_t seed) {
    Rng rng(seed);
    RunReport r;
    r.seed = seed;
    run_suite("core", rng, r);
    run_suite("abelian", rng, r);
    return r;
  };
  const auto a = run(5), b = run(5);
  CHECK(a.ok());
  CHECK(to_json(a).dump() == to_json(b).dump());
  REQUIRE(a.checks.size() == b.checks.size());

  Rng rng(1);
  RunReport r;
  CHECK_THROWS_AS(run_suite("bogus", rng, r), ParameterError);
  CHECK(is_suite("all"));
  CHECK_FALSE(is_suite(""));
}

TEST_CASE("inversion suite covers every standard group element", "[verify]") {
  Rng rng(7);
  RunReport r;
  run_suite("inversion", rng, r);
  CHECK(r.ok());
  CHECK(r.matching("inversion/roundtrip/").size() >= 200);
  for (const auto* c : r.matching("inversion/roundtrip/")) CHECK(c->residual <= 1e-10);
}
