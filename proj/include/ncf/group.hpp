#pragma once

// Finite groups as validated Cayley tables.
//
// The identity is always element 0. Element orderings per constructor:
//   cyclic(n)      residues 0..n-1
//   dihedral(n)    r^0..r^{n-1}, then r^0 s..r^{n-1} s
//   symmetric(n)   permutations in lexicographic one-line notation,
//                  composed right to left: (st)(i) = s(t(i))
//   quaternion8    1, -1, i, -i, j, -j, k, -k
//   heisenberg(p)  triples (a,b,c) in lexicographic order, with
//                  (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab') mod p
//   product        (g,h) at index g*|H| + h

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ncf/error.hpp"

namespace ncf {

inline constexpr std::size_t kDefaultMaxOrder = 5000;

using Table = std::vector<std::vector<std::size_t>>;

enum class GroupKind { cyclic, dihedral, symmetric, quaternion8, heisenberg, product, table };

inline const char* to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::dihedral: return "dihedral";
    case GroupKind::symmetric: return "symmetric";
    case GroupKind::quaternion8: return "quaternion8";
    case GroupKind::heisenberg: return "heisenberg";
    case GroupKind::product: return "product";
    case GroupKind::table: return "table";
  }
  return "?";
}

/// Recipe a FiniteGroup is built from; serializes to the JSON descriptor.
struct GroupDescriptor {
  GroupKind kind = GroupKind::cyclic;
  int n = 1;
  int p = 0;
  std::vector<GroupDescriptor> factors;
  Table table;
  std::vector<std::string> labels;  // optional, table kind only

  static GroupDescriptor cyclic(int n) { return {GroupKind::cyclic, n, 0, {}, {}, {}}; }
  static GroupDescriptor dihedral(int n) { return {GroupKind::dihedral, n, 0, {}, {}, {}}; }
  static GroupDescriptor symmetric(int n) { return {GroupKind::symmetric, n, 0, {}, {}, {}}; }
  static GroupDescriptor quaternion8() { return {GroupKind::quaternion8, 8, 0, {}, {}, {}}; }
  static GroupDescriptor heisenberg(int p) { return {GroupKind::heisenberg, 0, p, {}, {}, {}}; }
  static GroupDescriptor product(std::vector<GroupDescriptor> f) { return {GroupKind::product, 0, 0, std::move(f), {}, {}}; }
  static GroupDescriptor from_table(Table t, std::vector<std::string> labels = {}) {
    return {GroupKind::table, 0, 0, {}, std::move(t), std::move(labels)};
  }
};

/// Immutable Cayley-table group. Share it through GroupPtr.
class FiniteGroup {
 public:
  FiniteGroup(Table table, std::vector<std::string> labels, GroupDescriptor descriptor)
      : table_(std::move(table)), labels_(std::move(labels)), descriptor_(std::move(descriptor)) {
    const std::size_t n = table_.size();
    inverse_.assign(n, 0);
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u)
        if (table_[t][u] == 0) inverse_[t] = u;
    modular_.assign(n, 1.0);
  }

  std::size_t order() const noexcept { return table_.size(); }
  static constexpr std::size_t identity() noexcept { return 0; }
  std::size_t mul(std::size_t s, std::size_t t) const { return table_[s][t]; }
  std::size_t inv(std::size_t t) const { return inverse_[t]; }
  /// Modular function; identically 1 since finite groups are unimodular.
  double modular(std::size_t t) const { return modular_[t]; }

  const Table& table() const noexcept { return table_; }
  const std::vector<std::size_t>& inverses() const noexcept { return inverse_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t t) const { return labels_[t]; }
  const GroupDescriptor& descriptor() const noexcept { return descriptor_; }

  std::optional<std::size_t> find_label(const std::string& label) const {
    for (std::size_t t = 0; t < labels_.size(); ++t)
      if (labels_[t] == label) return t;
    return std::nullopt;
  }

  bool commutes(std::size_t s, std::size_t t) const { return mul(s, t) == mul(t, s); }

  bool is_abelian() const {
    for (std::size_t s = 0; s < order(); ++s)
      for (std::size_t t = s + 1; t < order(); ++t)
        if (!commutes(s, t)) return false;
    return true;
  }

  std::size_t element_order(std::size_t t) const {
    std::size_t k = 1;
    for (std::size_t x = t; x != identity(); x = mul(x, t)) ++k;
    return k;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  Table table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::string> labels_;
  std::vector<double> modular_;
  GroupDescriptor descriptor_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Validation

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::vector<std::size_t> witness;  // first counterexample
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomCheck> axioms;

  bool ok() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCheck& a) { return a.passed; });
  }
  const AxiomCheck* first_failure() const {
    for (const auto& a : axioms)
      if (!a.passed) return &a;
    return nullptr;
  }
};

/// Checks closure, Latin square, identity at 0, inverses and associativity,
/// recording the first counterexample for each failing axiom.
inline ValidationReport validate_group(const Table& table) {
  ValidationReport rep;
  const std::size_t n = table.size();

  AxiomCheck closure{"closure", true, {}, ""};
  if (n == 0) {
    closure.passed = false;
    closure.detail = "empty table";
  }
  for (std::size_t s = 0; s < n && closure.passed; ++s) {
    if (table[s].size() != n) {
      closure = {"closure", false, {s}, "row " + std::to_string(s) + " has wrong length"};
      break;
    }
    for (std::size_t t = 0; t < n; ++t)
      if (table[s][t] >= n) {
        closure = {"closure", false, {s, t}, "entry out of range"};
        break;
      }
  }
  rep.axioms.push_back(closure);
  if (!closure.passed) {
    for (const char* name : {"latin-square", "identity", "inverses", "associativity"})
      rep.axioms.push_back({name, false, {}, "not evaluated: closure failed"});
    return rep;
  }

  AxiomCheck latin{"latin-square", true, {}, ""};
  for (std::size_t s = 0; s < n && latin.passed; ++s) {
    std::vector<char> row(n, 0), col(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
      if (row[table[s][t]]++) {
        latin = {"latin-square", false, {s, t}, "row " + std::to_string(s) + " repeats an element"};
        break;
      }
      if (col[table[t][s]]++) {
        latin = {"latin-square", false, {t, s}, "column " + std::to_string(s) + " repeats an element"};
        break;
      }
    }
  }
  rep.axioms.push_back(latin);

  AxiomCheck ident{"identity", true, {}, ""};
  for (std::size_t t = 0; t < n; ++t)
    if (table[0][t] != t || table[t][0] != t) {
      ident = {"identity", false, {t}, "element 0 is not a two-sided identity at " + std::to_string(t)};
      break;
    }
  rep.axioms.push_back(ident);

  AxiomCheck inverses{"inverses", true, {}, ""};
  for (std::size_t t = 0; t < n && inverses.passed; ++t) {
    bool found = false;
    for (std::size_t u = 0; u < n && !found; ++u) found = table[t][u] == 0 && table[u][t] == 0;
    if (!found) inverses = {"inverses", false, {t}, "element " + std::to_string(t) + " has no two-sided inverse"};
  }
  rep.axioms.push_back(inverses);

  AxiomCheck assoc{"associativity", true, {}, ""};
  for (std::size_t a = 0; a < n && assoc.passed; ++a)
    for (std::size_t b = 0; b < n && assoc.passed; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          assoc = {"associativity", false, {a, b, c}, "(ab)c != a(bc)"};
          break;
        }
  rep.axioms.push_back(assoc);
  return rep;
}

inline ValidationReport validate_group(const FiniteGroup& g) { return validate_group(g.table()); }

// ---------------------------------------------------------------------------
// Constructors

namespace detail {

inline void check_order(std::size_t order, std::size_t max_order) {
  if (order > max_order)
    throw SizeError("group order " + std::to_string(order) + " exceeds maximum " + std::to_string(max_order));
}

inline GroupPtr make_group(Table table, std::vector<std::string> labels, GroupDescriptor d) {
  return std::make_shared<const FiniteGroup>(std::move(table), std::move(labels), std::move(d));
}

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

inline GroupPtr cyclic(int n, std::size_t max_order = kDefaultMaxOrder) {
  if (n < 1) throw ParameterError("cyclic(n) requires n >= 1");
  detail::check_order(static_cast<std::size_t>(n), max_order);
  const auto un = static_cast<std::size_t>(n);
  Table t(un, std::vector<std::size_t>(un));
  std::vector<std::string> labels(un);
  for (std::size_t a = 0; a < un; ++a) {
    labels[a] = std::to_string(a);
    for (std::size_t b = 0; b < un; ++b) t[a][b] = (a + b) % un;
  }
  return detail::make_group(std::move(t), std::move(labels), GroupDescriptor::cyclic(n));
}

inline GroupPtr dihedral(int n, std::size_t max_order = kDefaultMaxOrder) {
  if (n < 2) throw ParameterError("dihedral(n) requires n >= 2");
  const auto un = static_cast<std::size_t>(n);
  detail::check_order(2 * un, max_order);
  // index i + j*n stands for r^i s^j; s r = r^{-1} s.
  Table t(2 * un, std::vector<std::size_t>(2 * un));
  std::vector<std::string> labels(2 * un);
  for (std::size_t x = 0; x < 2 * un; ++x) {
    const std::size_t a = x % un, sx = x / un;
    labels[x] = "r^" + std::to_string(a) + (sx ? " s" : "");
    for (std::size_t y = 0; y < 2 * un; ++y) {
      const std::size_t b = y % un, sy = y / un;
      const std::size_t rot = sx ? (a + un - b) % un : (a + b) % un;
      t[x][y] = rot + ((sx + sy) % 2) * un;
    }
  }
  return detail::make_group(std::move(t), std::move(labels), GroupDescriptor::dihedral(n));
}

inline GroupPtr symmetric(int n, std::size_t max_order = kDefaultMaxOrder) {
  if (n < 1 || n > 6) throw ParameterError("symmetric(n) requires 1 <= n <= 6");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  detail::check_order(perms.size(), max_order);

  const std::size_t m = perms.size();
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(m, std::vector<std::size_t>(m));
  std::vector<std::string> labels(m);
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (std::size_t a = 0; a < m; ++a) {
    for (int v : perms[a]) labels[a] += std::to_string(v + 1);
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      t[a][b] = index_of(comp);
    }
  }
  return detail::make_group(std::move(t), std::move(labels), GroupDescriptor::symmetric(n));
}

inline GroupPtr quaternion8(std::size_t max_order = kDefaultMaxOrder) {
  detail::check_order(8, max_order);
  // Units 1,i,j,k as 0..3; index = 2*unit + (negative ? 1 : 0).
  // unit_mul[u][v] = (sign, unit) of u*v.
  static constexpr int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  Table t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      const std::size_t ux = x / 2, uy = y / 2;
      int s = sign[ux][uy] * ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1);
      t[x][y] = 2 * static_cast<std::size_t>(unit[ux][uy]) + (s < 0 ? 1 : 0);
    }
  return detail::make_group(std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, GroupDescriptor::quaternion8());
}

inline GroupPtr heisenberg(int p, std::size_t max_order = kDefaultMaxOrder) {
  if (!detail::is_prime(p) || p > 7) throw ParameterError("heisenberg(p) requires a prime p <= 7");
  const auto up = static_cast<std::size_t>(p);
  const std::size_t m = up * up * up;
  detail::check_order(m, max_order);
  Table t(m, std::vector<std::size_t>(m));
  std::vector<std::string> labels(m);
  for (std::size_t x = 0; x < m; ++x) {
    const std::size_t a = x / (up * up), b = (x / up) % up, c = x % up;
    labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < m; ++y) {
      const std::size_t a2 = y / (up * up), b2 = (y / up) % up, c2 = y % up;
      t[x][y] = ((a + a2) % up) * up * up + ((b + b2) % up) * up + (c + c2 + a * b2) % up;
    }
  }
  return detail::make_group(std::move(t), std::move(labels), GroupDescriptor::heisenberg(p));
}

/// Group from an explicit table. Element 0 must be the identity.
inline GroupPtr from_table(Table table, std::vector<std::string> labels = {},
                           std::size_t max_order = kDefaultMaxOrder) {
  detail::check_order(table.size(), max_order);
  const auto rep = validate_group(table);
  if (const auto* bad = rep.first_failure()) throw ValidationError(bad->axiom, bad->detail);
  if (labels.empty()) {
    for (std::size_t t = 0; t < table.size(); ++t) labels.push_back("g" + std::to_string(t));
  } else if (labels.size() != table.size()) {
    throw ParameterError("from_table: label count does not match the table order");
  }
  auto d = GroupDescriptor::from_table(table, labels);
  return detail::make_group(std::move(table), std::move(labels), std::move(d));
}

inline GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h, std::size_t max_order = kDefaultMaxOrder) {
  const std::size_t ng = g.order(), nh = h.order();
  detail::check_order(ng * nh, max_order);
  Table t(ng * nh, std::vector<std::size_t>(ng * nh));
  std::vector<std::string> labels(ng * nh);
  for (std::size_t x = 0; x < ng * nh; ++x) {
    labels[x] = "(" + g.label(x / nh) + "," + h.label(x % nh) + ")";
    for (std::size_t y = 0; y < ng * nh; ++y)
      t[x][y] = g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh);
  }
  GroupDescriptor d;
  if (g.descriptor().kind == GroupKind::product) {
    d = g.descriptor();
    d.factors.push_back(h.descriptor());
  } else {
    d = GroupDescriptor::product({g.descriptor(), h.descriptor()});
  }
  return detail::make_group(std::move(t), std::move(labels), std::move(d));
}

inline GroupPtr build_group(const GroupDescriptor& d, std::size_t max_order = kDefaultMaxOrder) {
  switch (d.kind) {
    case GroupKind::cyclic: return cyclic(d.n, max_order);
    case GroupKind::dihedral: return dihedral(d.n, max_order);
    case GroupKind::symmetric: return symmetric(d.n, max_order);
    case GroupKind::quaternion8: return quaternion8(max_order);
    case GroupKind::heisenberg: return heisenberg(d.p, max_order);
    case GroupKind::table: return from_table(d.table, d.labels, max_order);
    case GroupKind::product: {
      if (d.factors.empty()) throw ParameterError("product descriptor needs at least one factor");
      GroupPtr acc = build_group(d.factors.front(), max_order);
      for (std::size_t i = 1; i < d.factors.size(); ++i)
        acc = direct_product(*acc, *build_group(d.factors[i], max_order), max_order);
      return acc;
    }
  }
  throw ParameterError("unknown group kind");
}

/// Non-Abelian groups used throughout the property suites.
inline std::vector<GroupPtr> standard_test_groups() {
  return {cyclic(6), symmetric(3), dihedral(4), quaternion8(), heisenberg(3)};
}

}  // namespace ncf
