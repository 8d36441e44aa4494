#pragma once

// JSON serialization. Complex matrices are nested rows of [re, im] pairs.
//
//   group descriptor  {"kind": "cyclic"|"dihedral"|"symmetric"|"quaternion8"|
//                      "heisenberg"|"product"|"table", "n"?, "p"?,
//                      "factors"?, "table"?, "labels"?}
//   OpValFn           {"group": descriptor, "k": int, "coeffs": {label: matrix}}
//                     (missing labels are zero blocks)
//   BlockOperator     {"group": descriptor, "k": int, "matrix": matrix}

#include <string>

#include "json.hpp"

#include "ncf/abelian.hpp"
#include "ncf/conv_algebra.hpp"
#include "ncf/error.hpp"
#include "ncf/group.hpp"
#include "ncf/posdef.hpp"

namespace ncf {

using json = nlohmann::json;

/// Malformed input; key() names the offending JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what) : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

inline json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j, const std::string& key) {
  if (!j.is_array()) throw ParseError(key, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j.front().is_array() ? j.front().size() : 0) : 0;
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(key + "[" + std::to_string(i) + "]", "rows must be arrays of equal length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      const std::string ek = key + "[" + std::to_string(i) + "][" + std::to_string(c) + "]";
      if (e.is_number()) {
        m(i, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError(ek, "entry must be [re, im]");
      }
    }
  }
  return m;
}

inline json descriptor_to_json(const GroupDescriptor& d) {
  json j;
  j["kind"] = to_string(d.kind);
  switch (d.kind) {
    case GroupKind::cyclic:
    case GroupKind::dihedral:
    case GroupKind::symmetric: j["n"] = d.n; break;
    case GroupKind::heisenberg: j["p"] = d.p; break;
    case GroupKind::quaternion8: break;
    case GroupKind::product: {
      j["factors"] = json::array();
      for (const auto& f : d.factors) j["factors"].push_back(descriptor_to_json(f));
      break;
    }
    case GroupKind::table:
      j["table"] = d.table;
      if (!d.labels.empty()) j["labels"] = d.labels;
      break;
  }
  return j;
}

namespace detail {

inline int require_int(const json& j, const std::string& field, const std::string& key) {
  if (!j.contains(field)) throw ParseError(key + "." + field, "missing required field");
  if (!j[field].is_number_integer()) throw ParseError(key + "." + field, "must be an integer");
  return j[field].get<int>();
}

}  // namespace detail

inline GroupDescriptor descriptor_from_json(const json& j, const std::string& key = "group") {
  if (!j.is_object()) throw ParseError(key, "group descriptor must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError(key + ".kind", "missing or not a string");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "cyclic") return GroupDescriptor::cyclic(detail::require_int(j, "n", key));
  if (kind == "dihedral") return GroupDescriptor::dihedral(detail::require_int(j, "n", key));
  if (kind == "symmetric") return GroupDescriptor::symmetric(detail::require_int(j, "n", key));
  if (kind == "quaternion8") return GroupDescriptor::quaternion8();
  if (kind == "heisenberg") return GroupDescriptor::heisenberg(detail::require_int(j, "p", key));
  if (kind == "product") {
    if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
      throw ParseError(key + ".factors", "product needs a non-empty factor array");
    std::vector<GroupDescriptor> factors;
    for (std::size_t i = 0; i < j["factors"].size(); ++i)
      factors.push_back(descriptor_from_json(j["factors"][i], key + ".factors[" + std::to_string(i) + "]"));
    return GroupDescriptor::product(std::move(factors));
  }
  if (kind == "table") {
    if (!j.contains("table") || !j["table"].is_array()) throw ParseError(key + ".table", "missing or not an array");
    Table t;
    try {
      t = j["table"].get<Table>();
    } catch (const json::exception&) {
      throw ParseError(key + ".table", "entries must be non-negative integers");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      try {
        labels = j["labels"].get<std::vector<std::string>>();
      } catch (const json::exception&) {
        throw ParseError(key + ".labels", "must be an array of strings");
      }
    }
    return GroupDescriptor::from_table(std::move(t), std::move(labels));
  }
  throw ParseError(key + ".kind", "unknown group kind '" + kind + "'");
}

/// Builds the group, mapping construction failures to ParseError on `key`.
inline GroupPtr group_from_json(const json& j, std::size_t max_order = kDefaultMaxOrder,
                                const std::string& key = "group") {
  const auto d = descriptor_from_json(j, key);
  try {
    return build_group(d, max_order);
  } catch (const ValidationError&) {
    throw;
  } catch (const SizeError&) {
    throw;
  } catch (const ParameterError& e) {
    throw ParseError(key, e.what());
  }
}

/// Canonical form: the descriptor plus order, labels and the full table.
inline json group_to_json(const FiniteGroup& g) {
  json j = descriptor_to_json(g.descriptor());
  j["order"] = g.order();
  j["labels"] = g.labels();
  j["table"] = g.table();
  return j;
}

inline json fn_to_json(const OpValFn& f) {
  json j;
  j["group"] = descriptor_to_json(f.group().descriptor());
  j["k"] = f.k();
  json coeffs = json::object();
  for (std::size_t t = 0; t < f.size(); ++t) coeffs[f.group().label(t)] = matrix_to_json(f[t]);
  j["coeffs"] = std::move(coeffs);
  return j;
}

/// Parses an OpValFn; if `group` is given the function's own "group" field
/// is optional but must describe the same table when present.
inline OpValFn fn_from_json(const json& j, GroupPtr group = nullptr, std::size_t max_order = kDefaultMaxOrder) {
  if (!j.is_object()) throw ParseError("$", "function must be a JSON object");
  if (j.contains("group")) {
    GroupPtr own = group_from_json(j["group"], max_order, "group");
    if (group && !same_group(group, own)) throw ShapeError("group: function group differs from the supplied group");
    if (!group) group = own;
  }
  if (!group) throw ParseError("group", "missing required field");
  if (!j.contains("k")) throw ParseError("k", "missing required field");
  if (!j["k"].is_number_integer() || j["k"].get<long long>() < 1) throw ParseError("k", "must be a positive integer");
  const auto k = j["k"].get<std::size_t>();
  OpValFn f(group, k);
  if (!j.contains("coeffs")) throw ParseError("coeffs", "missing required field");
  if (!j["coeffs"].is_object()) throw ParseError("coeffs", "must be an object keyed by element label");
  for (const auto& [label, value] : j["coeffs"].items()) {
    const auto t = group->find_label(label);
    const std::string key = "coeffs." + label;
    if (!t) throw ParseError(key, "unknown element label");
    CMatrix m = matrix_from_json(value, key);
    if (m.rows() != static_cast<Eigen::Index>(k) || m.cols() != static_cast<Eigen::Index>(k))
      throw ShapeError(key + ": block is not k x k");
    f[*t] = std::move(m);
  }
  return f;
}

inline json block_operator_to_json(const BlockOperator& x) {
  return {{"group", descriptor_to_json(x.group().descriptor())}, {"k", x.k()}, {"matrix", matrix_to_json(x.matrix())}};
}

inline BlockOperator block_operator_from_json(const json& j, std::size_t max_order = kDefaultMaxOrder) {
  if (!j.is_object()) throw ParseError("$", "operator must be a JSON object");
  if (!j.contains("group")) throw ParseError("group", "missing required field");
  GroupPtr g = group_from_json(j["group"], max_order);
  if (!j.contains("k") || !j["k"].is_number_integer()) throw ParseError("k", "missing or not an integer");
  if (!j.contains("matrix")) throw ParseError("matrix", "missing required field");
  return BlockOperator(g, j["k"].get<std::size_t>(), matrix_from_json(j["matrix"], "matrix"));
}

inline json dilation_to_json(const Dilation& d) {
  json u = json::object();
  for (std::size_t t = 0; t < d.u.size(); ++t) u[d.group->label(t)] = matrix_to_json(d.u[t]);
  return {{"group", descriptor_to_json(d.group->descriptor())},
          {"k", d.k},
          {"dim", d.dim},
          {"rank_tol", d.rank_tol},
          {"u", std::move(u)},
          {"S", matrix_to_json(d.S)},
          {"residuals",
           {{"reconstruction", d.residuals.reconstruction},
            {"unitarity", d.residuals.unitarity},
            {"homomorphism", d.residuals.homomorphism},
            {"invariance", d.residuals.invariance},
            {"polar_corrected", d.residuals.polar_corrected}}}};
}

inline json dual_group_to_json(const DualGroup& d) {
  return {{"group", descriptor_to_json(d.base()->descriptor())},
          {"exponent", d.exponent()},
          {"characters", matrix_to_json(d.table())}};
}

}  // namespace ncf
