#include "catch_amalgamated.hpp"

#include "ncf/json_io.hpp"
#include "ncf/random.hpp"

using namespace ncf;

namespace {

std::string parse_error_key(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.key();
  }
  return "<no ParseError>";
}

}  // namespace

TEST_CASE("group descriptors round trip", "[json]") {
  const std::vector<GroupPtr> groups{cyclic(5), dihedral(4), symmetric(3), quaternion8(), heisenberg(3),
                                     direct_product(*cyclic(2), *symmetric(3)),
                                     from_table(cyclic(3)->table(), {"e", "x", "x^2"})};
  for (const auto& g : groups) {
    const json j = descriptor_to_json(g->descriptor());
    const auto back = group_from_json(json::parse(j.dump()));
    CHECK(*back == *g);
    CHECK(back->labels() == g->labels());
  }
  const json full = group_to_json(*dihedral(3));
  CHECK(full["order"] == 6);
  CHECK(full["table"].size() == 6);
  CHECK(full["kind"] == "dihedral");
}

TEST_CASE("functions and operators round trip", "[json]") {
  Rng rng(1);
  const auto g = dihedral(3);
  const auto f = random_fn(g, 2, rng);
  const auto back = fn_from_json(json::parse(fn_to_json(f).dump()));
  // Full double precision survives the text form.
  CHECK(max_diff(back, f) == 0.0);

  const auto x = left_regular(f);
  const auto xb = block_operator_from_json(json::parse(block_operator_to_json(x).dump()));
  CHECK(xb.k() == 2);
  CHECK((xb.matrix() - x.matrix()).norm() == 0.0);

  SECTION("missing labels mean zero blocks; real entries are accepted") {
    const json j = {{"group", {{"kind", "cyclic"}, {"n", 3}}}, {"k", 1}, {"coeffs", {{"1", {{2.5}}}}}};
    const auto h = fn_from_json(j);
    CHECK(h.scalar(0) == Complex(0.0));
    CHECK(h.scalar(1) == Complex(2.5));
    CHECK(h.scalar(2) == Complex(0.0));
  }
}

TEST_CASE("malformed input names the offending key", "[json]") {
  const json base = {{"group", {{"kind", "cyclic"}, {"n", 2}}}, {"k", 1}, {"coeffs", {{"0", {{{1, 0}}}}}}};
  CHECK(parse_error_key([&] { fn_from_json(json::array()); }) == "$");
  {
    json j = base;
    j.erase("k");
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "k");
  }
  {
    json j = base;
    j["k"] = 0;
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "k");
  }
  {
    json j = base;
    j.erase("coeffs");
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "coeffs");
  }
  {
    json j = base;
    j["coeffs"] = {{"7", {{{1, 0}}}}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "coeffs.7");
  }
  {
    json j = base;
    j["coeffs"]["0"] = {{{1, 0, 3}}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "coeffs.0[0][0]");
  }
  {
    json j = base;
    j["coeffs"]["0"] = {{{1, 0}}, {{1, 0}, {0, 0}}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "coeffs.0[1]");
  }
  {
    json j = base;
    j["group"] = {{"kind", "klein"}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "group.kind");
  }
  {
    json j = base;
    j["group"] = {{"kind", "cyclic"}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "group.n");
  }
  {
    json j = base;
    j["group"] = {{"kind", "product"}, {"factors", {{{"kind", "cyclic"}, {"n", 2}}, {{"kind", "dihedral"}}}}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "group.factors[1].n");
  }
  {
    json j = base;
    j["group"] = {{"kind", "heisenberg"}, {"p", 4}};
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "group");
  }
  {
    json j = base;
    j.erase("group");
    CHECK(parse_error_key([&] { fn_from_json(j); }) == "group");
  }
}

TEST_CASE("shape and group mismatches", "[json]") {
  json j = {{"group", {{"kind", "cyclic"}, {"n", 2}}}, {"k", 2}, {"coeffs", {{"0", {{{1, 0}}}}}}};
  CHECK_THROWS_AS(fn_from_json(j), ShapeError);
  j["k"] = 1;
  CHECK_THROWS_AS(fn_from_json(j, cyclic(3)), ShapeError);
  CHECK_NOTHROW(fn_from_json(j, cyclic(2)));

  // Invalid tables surface as validation errors; oversize groups as size errors.
  const json bad_table = {{"kind", "table"}, {"table", {{0, 1}, {1, 1}}}};
  CHECK_THROWS_AS(group_from_json(bad_table), ValidationError);
  CHECK_THROWS_AS(group_from_json({{"kind", "cyclic"}, {"n", 100}}, 50), SizeError);
}
