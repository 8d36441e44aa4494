#pragma once

// Quadrature model of the ax+b group on a truncated grid.
//
// Conventions: (a,b)(a',b') = (aa', ab' + b), (a,b)^-1 = (1/a, -b/a),
// left Haar measure da db / a^2, modular function Delta(a,b) = 1/a.
// The grid is uniform in (log a, b); off-grid points are resolved by
// nearest-grid-point lookup and are zero outside the window. Everything
// here is approximate and is reported, not asserted, except the scalar
// laws of Delta and of the modular flow.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncf/error.hpp"
#include "ncf/linalg.hpp"
#include "ncf/modular.hpp"

namespace ncf::axb {

struct Element {
  double a = 1.0;
  double b = 0.0;
};

inline Element mul(const Element& p, const Element& q) { return {p.a * q.a, p.a * q.b + p.b}; }
inline Element inv(const Element& p) { return {1.0 / p.a, -p.b / p.a}; }
inline double modular(const Element& p) { return 1.0 / p.a; }

struct Params {
  double a_min = 0.25;
  double a_max = 4.0;
  double B = 4.0;
  int m_a = 33;
  int m_b = 33;

  /// Same window with both spacings halved (2m - 1 points per axis), so the
  /// coarse grid is a subgrid of the refined one.
  Params refined() const { return {a_min, a_max, B, 2 * m_a - 1, 2 * m_b - 1}; }
};

class DiscretizedGroup {
 public:
  explicit DiscretizedGroup(const Params& p) : params_(p) {
    if (!(p.a_min > 0.0)) throw ParameterError("build_grid: a_min must be positive");
    if (!(p.a_max > p.a_min)) throw ParameterError("build_grid: a_max must exceed a_min");
    if (!(p.B > 0.0)) throw ParameterError("build_grid: B must be positive");
    if (p.m_a < 4 || p.m_b < 4) throw ParameterError("build_grid: m_a and m_b must be at least 4");
    log_min_ = std::log(p.a_min);
    h_log_ = (std::log(p.a_max) - log_min_) / (p.m_a - 1);
    h_b_ = 2.0 * p.B / (p.m_b - 1);
    const std::size_t n = static_cast<std::size_t>(p.m_a) * static_cast<std::size_t>(p.m_b);
    points_.reserve(n);
    weights_.reserve(n);
    modular_.reserve(n);
    for (int i = 0; i < p.m_a; ++i) {
      const double a = std::exp(log_min_ + i * h_log_);
      const double ci = (i == 0 || i == p.m_a - 1) ? 0.5 : 1.0;
      for (int j = 0; j < p.m_b; ++j) {
        const double b = -p.B + j * h_b_;
        const double cj = (j == 0 || j == p.m_b - 1) ? 0.5 : 1.0;
        points_.push_back({a, b});
        // da db / a^2 = d(log a) db / a, trapezoidal in (log a, b).
        weights_.push_back(ci * cj * h_log_ * h_b_ / a);
        modular_.push_back(axb::modular(points_.back()));
      }
    }
  }

  const Params& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Element& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  double modular(std::size_t i) const { return modular_[i]; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double log_step() const noexcept { return h_log_; }
  double b_step() const noexcept { return h_b_; }
  double total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
  }

  /// Nearest grid index, or nullopt when x falls outside the window.
  std::optional<std::size_t> nearest(const Element& x) const {
    if (!(x.a > 0.0)) return std::nullopt;
    const double fi = std::round((std::log(x.a) - log_min_) / h_log_);
    const double fj = std::round((x.b + params_.B) / h_b_);
    if (fi < 0 || fj < 0 || fi > params_.m_a - 1 || fj > params_.m_b - 1) return std::nullopt;
    return static_cast<std::size_t>(fi) * static_cast<std::size_t>(params_.m_b) + static_cast<std::size_t>(fj);
  }

  /// log a and b of grid point i.
  double log_a(std::size_t i) const { return std::log(points_[i].a); }

 private:
  Params params_;
  double log_min_ = 0.0;
  double h_log_ = 0.0;
  double h_b_ = 0.0;
  std::vector<Element> points_;
  std::vector<double> weights_;
  std::vector<double> modular_;
};

using GridPtr = std::shared_ptr<const DiscretizedGroup>;

inline GridPtr build_grid(const Params& p = {}) { return std::make_shared<const DiscretizedGroup>(p); }

/// Scalar function sampled on the grid.
struct GridFn {
  GridPtr grid;
  std::vector<Complex> values;

  GridFn(GridPtr g) : grid(std::move(g)), values(grid->size(), Complex(0.0)) {}
  GridFn(GridPtr g, std::vector<Complex> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw ShapeError("GridFn: value count does not match the grid");
  }

  /// Nearest-point lookup, zero outside the window.
  Complex at(const Element& x) const {
    const auto i = grid->nearest(x);
    return i ? values[*i] : Complex(0.0);
  }
};

using AnalyticFn = std::function<Complex(const Element&)>;

inline GridFn sample(const GridPtr& g, const AnalyticFn& fn) {
  GridFn f(g);
  for (std::size_t i = 0; i < g->size(); ++i) f.values[i] = fn(g->point(i));
  return f;
}

/// Gaussian in (log a, b) centred at c.
inline AnalyticFn gaussian(Element c, double sigma_log_a, double sigma_b, double freq_b = 0.0) {
  return [=](const Element& x) {
    const double du = std::log(x.a) - std::log(c.a);
    const double db = x.b - c.b;
    const double env = std::exp(-0.5 * du * du / (sigma_log_a * sigma_log_a) - 0.5 * db * db / (sigma_b * sigma_b));
    return std::polar(env, freq_b * db);
  };
}

/// sum_i f_i w_i.
inline Complex integrate(const GridFn& f) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * f.grid->weight(i);
  return s;
}

/// L^2(left Haar) norm.
inline double l2_norm(const GridFn& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += std::norm(f.values[i]) * f.grid->weight(i);
  return std::sqrt(s);
}

inline double relative_l2_distance(const GridFn& x, const GridFn& y) {
  GridFn d(x.grid);
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = x.values[i] - y.values[i];
  const double ref = l2_norm(y);
  return ref > 0.0 ? l2_norm(d) / ref : l2_norm(d);
}

// ---------------------------------------------------------------------------
// Regular representation by quadrature

struct SupportReport {
  double outside_fraction = 0.0;  // |f| w mass outside the inner half window
  bool truncation_warning = false;
};

/// Fraction of |f| mass outside |log a| <= half the log-range, |b| <= B/2
/// (about the identity).
inline SupportReport support_report(const GridFn& f) {
  const auto& p = f.grid->params();
  const double half_log = 0.5 * std::min(std::abs(std::log(p.a_min)), std::abs(std::log(p.a_max)));
  double total = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double m = std::abs(f.values[i]) * f.grid->weight(i);
    total += m;
    if (std::abs(f.grid->log_a(i)) > half_log || std::abs(f.grid->point(i).b) > 0.5 * p.B) outside += m;
  }
  SupportReport r;
  r.outside_fraction = total > 0.0 ? outside / total : 0.0;
  r.truncation_warning = r.outside_fraction > 1e-3;
  return r;
}

/// Kernel of lambda(f) on the grid:
/// (f * g)(t) = integral f(t s^-1) g(s) Delta(s^-1) ds.
inline Complex kernel_entry(const GridFn& f, std::size_t t, std::size_t s) {
  const auto& G = *f.grid;
  return f.at(mul(G.point(t), inv(G.point(s)))) * (G.weight(s) / G.modular(s));
}

struct QuadOperator {
  CMatrix matrix;
  SupportReport support;
};

inline QuadOperator q_left_regular(const GridFn& f) {
  const std::size_t n = f.grid->size();
  QuadOperator q;
  q.support = support_report(f);
  q.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s)
      q.matrix(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = kernel_entry(f, t, s);
  return q;
}

/// Matrix-free q_left_regular(f) * g, i.e. the quadrature convolution f * g.
inline GridFn convolve(const GridFn& f, const GridFn& g) {
  if (f.grid != g.grid) throw ShapeError("axb::convolve: functions live on different grids");
  const std::size_t n = f.grid->size();
  GridFn out(f.grid);
  for (std::size_t t = 0; t < n; ++t) {
    Complex acc = 0.0;
    for (std::size_t s = 0; s < n; ++s)
      if (g.values[s] != Complex(0.0)) acc += kernel_entry(f, t, s) * g.values[s];
    out.values[t] = acc;
  }
  return out;
}

/// (xi^* * xi)(t) = integral conj(xi(u)) xi(ut) du.
inline GridFn self_adjoint_square(const GridFn& xi) {
  const auto& G = *xi.grid;
  GridFn out(xi.grid);
  for (std::size_t t = 0; t < G.size(); ++t) {
    Complex acc = 0.0;
    for (std::size_t u = 0; u < G.size(); ++u)
      if (xi.values[u] != Complex(0.0)) acc += std::conj(xi.values[u]) * xi.at(mul(G.point(u), G.point(t))) * G.weight(u);
    out.values[t] = acc;
  }
  return out;
}

/// ||(f*g)*h - f*(g*h)|| / ||f*(g*h)||.
inline double associativity_defect(const GridFn& f, const GridFn& g, const GridFn& h) {
  const GridFn left = convolve(convolve(f, g), h);
  const GridFn right = convolve(f, convolve(g, h));
  return relative_l2_distance(left, right);
}

// ---------------------------------------------------------------------------
// Modular conjugation and flow

/// (J xi)(s) = Delta(s)^{-1/2} conj(xi(s^-1)).
inline GridFn apply_J(const GridFn& xi) {
  const auto& G = *xi.grid;
  GridFn out(xi.grid);
  for (std::size_t s = 0; s < G.size(); ++s)
    out.values[s] = modular::conjugation_factor(G.modular(s)) * std::conj(xi.at(inv(G.point(s))));
  return out;
}

/// (lambda_t xi)(s) = xi(t^-1 s).
inline GridFn apply_lambda(const Element& t, const GridFn& xi) {
  const auto& G = *xi.grid;
  GridFn out(xi.grid);
  for (std::size_t s = 0; s < G.size(); ++s) out.values[s] = xi.at(mul(inv(t), G.point(s)));
  return out;
}

/// (V_t xi)(s) = xi(st).
inline GridFn apply_V(const Element& t, const GridFn& xi) {
  const auto& G = *xi.grid;
  GridFn out(xi.grid);
  for (std::size_t s = 0; s < G.size(); ++s) out.values[s] = xi.at(mul(G.point(s), t));
  return out;
}

/// sigma_z(lambda_t) xi = Delta(t)^{iz} lambda_t xi.
inline GridFn apply_flow(const Element& t, std::complex<double> z, const GridFn& xi) {
  GridFn out = apply_lambda(t, xi);
  const Complex c = modular::flow_factor(modular(t), z);
  for (auto& v : out.values) v *= c;
  return out;
}

/// Five smooth test vectors about the identity. The widths trade nearest-point
/// lookup error (shrinks with width) against truncation at the window edge.
inline std::vector<AnalyticFn> smooth_test_functions() {
  constexpr double sl = 0.3, sb = 1.0;
  return {gaussian({1.0, 0.0}, sl, sb),
          gaussian({std::exp(0.15), 0.3}, sl, sb, 0.3),
          gaussian({std::exp(-0.15), -0.3}, sl, sb),
          gaussian({std::exp(0.1), -0.4}, sl, sb, -0.3),
          gaussian({std::exp(-0.1), 0.4}, sl, sb)};
}

/// Narrower bumps whose mass sits inside the inner half window, as the
/// quadrature convolution requires; used for the associativity defect.
inline std::vector<AnalyticFn> admissible_test_functions() {
  return {gaussian({1.0, 0.0}, 0.18, 0.5), gaussian({std::exp(0.1), 0.2}, 0.18, 0.5),
          gaussian({std::exp(-0.1), -0.2}, 0.18, 0.5)};
}

/// Translations used by the flow check; all close to the identity so that
/// V_t moves the test vectors by a few grid cells only.
inline std::vector<Element> flow_test_elements() {
  return {{std::exp(0.2), 0.2}, {std::exp(-0.2), -0.2}, {1.0, 0.25}, {std::exp(0.15), -0.3}, {std::exp(-0.1), 0.3}};
}

inline std::vector<GridFn> smooth_test_vectors(const GridPtr& g) {
  std::vector<GridFn> out;
  for (const auto& fn : smooth_test_functions()) out.push_back(sample(g, fn));
  return out;
}

struct FlowReport {
  double delta_t = 1.0;
  Complex flow_factor = 1.0;          // Delta(t)^{iz}
  double half_scalar_residual = 0.0;  // |Delta^{i(i/2)} - Delta^{-1/2}|
  double exponent_law_residual = 0.0; // |Delta^{iz} Delta^{iw} - Delta^{i(z+w)}|, w = i/2
  double flow_displacement = 0.0;     // max ||sigma_z(lambda_t) xi - lambda_t xi|| / ||lambda_t xi||
  double conjugation_deviation = 0.0; // max ||J sigma_{i/2}(lambda_t) J xi - V_t xi|| / ||V_t xi||
};

inline FlowReport modular_flow_check(const GridPtr& grid, const Element& t, std::complex<double> z,
                                     const std::vector<GridFn>& test_vectors) {
  FlowReport r;
  r.delta_t = modular(t);
  const std::complex<double> half_i(0.0, 0.5);
  r.flow_factor = modular::flow_factor(r.delta_t, z);
  r.half_scalar_residual = std::abs(modular::flow_factor(r.delta_t, half_i) - std::pow(r.delta_t, -0.5));
  r.exponent_law_residual = std::abs(r.flow_factor * modular::flow_factor(r.delta_t, half_i) -
                                     modular::flow_factor(r.delta_t, z + half_i));
  for (const auto& xi : test_vectors) {
    if (xi.grid != grid) throw ShapeError("modular_flow_check: test vector on a different grid");
    const GridFn plain = apply_lambda(t, xi);
    const GridFn flowed = apply_flow(t, z, xi);
    r.flow_displacement = std::max(r.flow_displacement, relative_l2_distance(flowed, plain));
    const GridFn lhs = apply_J(apply_flow(t, half_i, apply_J(xi)));
    const GridFn rhs = apply_V(t, xi);
    r.conjugation_deviation = std::max(r.conjugation_deviation, relative_l2_distance(lhs, rhs));
  }
  return r;
}

inline FlowReport modular_flow_check(const GridPtr& grid, const Element& t, std::complex<double> z) {
  return modular_flow_check(grid, t, z, smooth_test_vectors(grid));
}

// ---------------------------------------------------------------------------
// Windowed integral nets

/// Rectangle |log a| <= log_a_radius, |b| <= b_radius about the identity.
struct Window {
  double log_a_radius = 0.0;
  double b_radius = 0.0;
  bool contains(const DiscretizedGroup& g, std::size_t i) const {
    return std::abs(g.log_a(i)) <= log_a_radius + 1e-12 && std::abs(g.point(i).b) <= b_radius + 1e-12;
  }
};

struct NetReport {
  std::vector<double> partial_sums;
  std::vector<double> increments;  // increments[0] = partial_sums[0]
  bool monotone = true;
  bool integrable = false;
  double value = 0.0;
};

/// Partial integrals of a nonnegative f over nested windows; integrable at
/// eps when the last increment is below eps.
inline NetReport windowed_integral_net(const GridFn& f, const std::vector<Window>& windows, double eps) {
  if (windows.empty()) throw ParameterError("windowed_integral_net: no windows given");
  for (std::size_t w = 1; w < windows.size(); ++w)
    if (windows[w].log_a_radius < windows[w - 1].log_a_radius || windows[w].b_radius < windows[w - 1].b_radius)
      throw ParameterError("windowed_integral_net: windows are not nested");
  for (const auto& v : f.values)
    if (v.real() < 0.0 || v.imag() != 0.0) throw ParameterError("windowed_integral_net: integrand must be nonnegative");

  const auto& G = *f.grid;
  NetReport r;
  double running = 0.0;
  for (std::size_t w = 0; w < windows.size(); ++w) {
    double inc = 0.0;
    for (std::size_t i = 0; i < G.size(); ++i)
      if (windows[w].contains(G, i) && (w == 0 || !windows[w - 1].contains(G, i))) inc += f.values[i].real() * G.weight(i);
    const double next = running + inc;
    if (w > 0 && next < running) r.monotone = false;
    running = next;
    r.increments.push_back(inc);
    r.partial_sums.push_back(running);
  }
  r.value = running;
  r.integrable = windows.size() > 1 && r.increments.back() < eps;
  return r;
}

// ---------------------------------------------------------------------------
// Positivity of lambda(f) versus positive definiteness of Delta^{1/2} f

struct PdPositivityReport {
  double op_min_eig = 0.0;
  double op_scale = 0.0;
  bool op_positive = true;
  double gram_min_eig = 0.0;
  double gram_scale = 0.0;
  bool gram_positive = true;
  bool agree = true;
  std::size_t sample_size = 0;
};

/// Interior points (inner half window), evenly thinned to at most max_points.
inline std::vector<std::size_t> interior_sample(const DiscretizedGroup& g, std::size_t max_points) {
  const auto& p = g.params();
  const double half_log = 0.5 * std::min(std::abs(std::log(p.a_min)), std::abs(std::log(p.a_max)));
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(g.log_a(i)) <= half_log && std::abs(g.point(i).b) <= 0.5 * p.B) interior.push_back(i);
  if (interior.size() <= max_points) return interior;
  std::vector<std::size_t> out;
  const double stride = static_cast<double>(interior.size()) / static_cast<double>(max_points);
  for (std::size_t j = 0; j < max_points; ++j) out.push_back(interior[static_cast<std::size_t>(j * stride)]);
  return out;
}

inline PdPositivityReport pd_positivity_check(const GridFn& f, double tol = 0.05, std::size_t max_sample = 200) {
  const auto& G = *f.grid;
  PdPositivityReport r;

  // (i) lambda(f) in orthonormal coordinates W^{1/2} K W^{-1/2}, Hermitian part.
  const QuadOperator q = q_left_regular(f);
  RVector sw(static_cast<Eigen::Index>(G.size()));
  for (std::size_t i = 0; i < G.size(); ++i) sw(static_cast<Eigen::Index>(i)) = std::sqrt(G.weight(i));
  CMatrix m = sw.cast<Complex>().asDiagonal() * q.matrix * sw.cwiseInverse().cast<Complex>().asDiagonal();
  const RVector ev = hermitian_part_eigenvalues(m);
  r.op_min_eig = ev(0);
  r.op_scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  r.op_positive = r.op_min_eig >= -tol * r.op_scale;

  // (ii) Gram matrix of Delta^{1/2} f over interior sample points.
  const auto pts = interior_sample(G, max_sample);
  r.sample_size = pts.size();
  const auto ns = static_cast<Eigen::Index>(pts.size());
  CMatrix gram(ns, ns);
  for (Eigen::Index i = 0; i < ns; ++i)
    for (Eigen::Index j = 0; j < ns; ++j) {
      const Element x = mul(inv(G.point(pts[static_cast<std::size_t>(i)])), G.point(pts[static_cast<std::size_t>(j)]));
      gram(i, j) = modular::half_density(modular(x)) * f.at(x);
    }
  const RVector gv = hermitian_part_eigenvalues(gram);
  r.gram_min_eig = gv.size() ? gv(0) : 0.0;
  r.gram_scale = gv.size() ? std::max(std::abs(gv(0)), std::abs(gv(gv.size() - 1))) : 0.0;
  r.gram_positive = r.gram_min_eig >= -tol * r.gram_scale;
  r.agree = r.op_positive == r.gram_positive;
  return r;
}

struct PdExample {
  std::string name;
  GridFn f;
  bool expected_positive = true;
};

/// Constructed examples for pd_positivity_check: xi^* * xi for a smooth bump
/// xi, and the same function minus a narrow bump at the identity scaled to
/// twice its peak, which makes f(e) < 0 while leaving f positive elsewhere.
inline std::vector<PdExample> documented_pd_examples(const GridPtr& g) {
  const GridFn square = self_adjoint_square(sample(g, gaussian({1.0, 0.0}, 0.3, 0.5)));
  double peak = 0.0;
  for (const auto& v : square.values) peak = std::max(peak, std::abs(v));
  const GridFn dip = sample(g, gaussian({1.0, 0.0}, 0.1, 0.2));
  GridFn perturbed = square;
  for (std::size_t i = 0; i < g->size(); ++i) perturbed.values[i] -= 2.0 * peak * dip.values[i];
  return {{"square", square, true}, {"square_minus_identity_bump", std::move(perturbed), false}};
}

// ---------------------------------------------------------------------------
// Exact scalar laws

/// max relative |Delta(pq) - Delta(p) Delta(q)| over all pairs of the given points.
inline double modular_homomorphism_residual(const std::vector<Element>& pts) {
  double r = 0.0;
  for (const auto& p : pts)
    for (const auto& q : pts) {
      const double lhs = modular(mul(p, q));
      const double rhs = modular(p) * modular(q);
      r = std::max(r, std::abs(lhs - rhs) / std::abs(rhs));
    }
  return r;
}

}  // namespace ncf::axb
