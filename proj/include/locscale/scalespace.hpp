#pragma once

// Scale-axis infrastructure shared by signals and surfaces: the tau-lattice,
// scale stacks, local-maximum detection and classification, the nontangential
// maximal stack, dilation-consistency checking and the g / square-function
// aggregations.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locscale/kernel.hpp"

namespace locscale {

struct ScaleGrid {
  double a = 2.0;
  double tau_min = 0.0;
  double tau_max = 1.0;
  int steps = 3;

  void validate() const {
    if (!(a > 1.0)) throw std::invalid_argument("ScaleGrid: a must be > 1");
    if (!(tau_min < tau_max))
      throw std::invalid_argument("ScaleGrid: tau_min must be < tau_max");
    if (steps < 3) throw std::invalid_argument("ScaleGrid: steps must be >= 3");
  }

  double dtau() const { return (tau_max - tau_min) / (steps - 1); }
  double tau(int i) const { return tau_min + i * dtau(); }
  double t(int i) const { return std::pow(a, tau(i)); }

  Eigen::VectorXd taus() const {
    Eigen::VectorXd v(steps);
    for (int i = 0; i < steps; ++i) v[i] = tau(i);
    return v;
  }
  Eigen::VectorXd ts() const {
    Eigen::VectorXd v(steps);
    for (int i = 0; i < steps; ++i) v[i] = t(i);
    return v;
  }

  bool compatible_with(const ScaleGrid& other) const {
    return std::abs(a - other.a) <= 1e-12 * a &&
           std::abs(dtau() - other.dtau()) <= 1e-12 * dtau();
  }
};

// Per-point arrays of S and its tau-derivatives over the tau-lattice.
// Rows are evaluation points, columns are scales. The derivative slabs are
// analytic (wavelet_deriv_value kernels), never finite differences.
struct ScaleStack {
  ScaleGrid grid;
  std::vector<int> point_ids;  // caller-defined identifiers, one per row
  Eigen::MatrixXd S;
  Eigen::MatrixXd D1;  // empty unless jmax >= 1
  Eigen::MatrixXd D2;  // empty unless jmax >= 2
  // covered(p,s): the truncated quadrature ball at scale s fits inside the
  // sampled region around point p. Everything defaults to covered.
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> covered;

  int num_points() const { return static_cast<int>(S.rows()); }
  bool has_d1() const { return D1.size() > 0; }
  bool has_d2() const { return D2.size() > 0; }
  bool point_fully_covered(int p) const {
    if (covered.size() == 0) return true;
    return covered.row(p).all();
  }
};

// Interior strict local maxima of a profile along tau. A maximal plateau of
// equal values strictly flanked below on both sides yields one index at its
// midpoint (round down). Endpoints are never returned.
inline std::vector<int> detect_local_scales(const Eigen::VectorXd& profile,
                                            const ScaleGrid& grid) {
  grid.validate();
  if (profile.size() != grid.steps)
    throw std::invalid_argument("detect_local_scales: profile/grid size mismatch");
  std::vector<int> out;
  const int n = grid.steps;
  int i = 1;
  while (i < n - 1) {
    if (profile[i] > profile[i - 1]) {
      int e = i;
      while (e + 1 < n && profile[e + 1] == profile[i]) ++e;
      if (e < n - 1 && profile[e + 1] < profile[i]) out.push_back((i + e) / 2);
      i = e + 1;
    } else {
      ++i;
    }
  }
  return out;
}

struct LocalScaleEntry {
  double tau = 0.0;
  double t = 0.0;
  double value = 0.0;      // S at the maximum (signed)
  double curvature = 0.0;  // d^2 S / dtau^2 at the maximum
  bool visible = false;    // |value| > beta
  bool separated = false;  // |curvature| > delta
};

struct LocalScaleSet {
  int point = 0;
  double beta = 0.0;
  double delta = 0.0;
  std::vector<LocalScaleEntry> entries;

  int count_separated() const {
    int c = 0;
    for (const auto& e : entries) c += e.separated ? 1 : 0;
    return c;
  }
  int count_visible_separated() const {
    int c = 0;
    for (const auto& e : entries) c += (e.visible && e.separated) ? 1 : 0;
    return c;
  }
};

inline LocalScaleSet classify_scales(const ScaleStack& stack, int point,
                                     double beta, double delta) {
  if (!stack.has_d2())
    throw std::invalid_argument("classify_scales: stack lacks analytic d2 slab");
  if (point < 0 || point >= stack.num_points())
    throw std::invalid_argument("classify_scales: point out of range");
  if (beta < 0.0 || delta < 0.0)
    throw std::invalid_argument("classify_scales: thresholds must be >= 0");
  const Eigen::VectorXd abs_profile = stack.S.row(point).cwiseAbs();
  LocalScaleSet set;
  set.point = stack.point_ids.empty() ? point : stack.point_ids[point];
  set.beta = beta;
  set.delta = delta;
  for (int i : detect_local_scales(abs_profile, stack.grid)) {
    LocalScaleEntry e;
    e.tau = stack.grid.tau(i);
    e.t = stack.grid.t(i);
    e.value = stack.S(point, i);
    e.curvature = stack.D2(point, i);
    e.visible = std::abs(e.value) > beta;
    e.separated = std::abs(e.curvature) > delta;
    set.entries.push_back(e);
  }
  return set;
}

// S*(x,t) = max over sampled y with pi|x-y|^2 < t of |S(y,t)| e^{-pi|x-y|^2/t}.
// y = x is always admissible, so S* >= |S|.
inline ScaleStack nontangential_stack(const ScaleStack& stack,
                                      const Eigen::MatrixXd& positions) {
  if (stack.num_points() == 0)
    throw std::invalid_argument("nontangential_stack: empty stack");
  if (positions.cols() != stack.num_points())
    throw std::invalid_argument("nontangential_stack: positions/stack mismatch");
  ScaleStack out;
  out.grid = stack.grid;
  out.point_ids = stack.point_ids;
  out.covered = stack.covered;
  const int np = stack.num_points();
  const int ns = stack.grid.steps;
  out.S.resize(np, ns);
  for (int s = 0; s < ns; ++s) {
    const double t = stack.grid.t(s);
    for (int p = 0; p < np; ++p) {
      double best = std::abs(stack.S(p, s));
      for (int q = 0; q < np; ++q) {
        const double r2 = (positions.col(q) - positions.col(p)).squaredNorm();
        if (M_PI * r2 < t) {
          const double cand = std::abs(stack.S(q, s)) * std::exp(-M_PI * r2 / t);
          if (cand > best) best = cand;
        }
      }
      out.S(p, s) = best;
    }
  }
  return out;
}

struct ConsistencyReport {
  bool count_match = false;
  double shift_measured = 0.0;
  double shift_expected = 0.0;
  bool pass = false;
};

// Compares detected scale sets of an object and its delta-dilated copy.
// s_exponent is the derived dilation exponent: +2 for set dilation
// (d_delta Gamma = {delta x}), -2 for argument dilation (f(delta x)).
inline ConsistencyReport check_dilation_consistency(
    const LocalScaleSet& scales_base, const LocalScaleSet& scales_dilated,
    double delta, const ScaleGrid& grid_base, const ScaleGrid& grid_dilated,
    int s_exponent = 2) {
  if (!(delta > 0.0))
    throw std::invalid_argument("check_dilation_consistency: delta must be > 0");
  if (!grid_base.compatible_with(grid_dilated))
    throw std::invalid_argument("check_dilation_consistency: incompatible grids");
  ConsistencyReport rep;
  rep.count_match = scales_base.entries.size() == scales_dilated.entries.size();
  rep.shift_expected =
      s_exponent * std::log(delta) / std::log(grid_base.a);
  if (rep.count_match && !scales_base.entries.empty()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < scales_base.entries.size(); ++i)
      acc += scales_dilated.entries[i].tau - scales_base.entries[i].tau;
    rep.shift_measured = acc / static_cast<double>(scales_base.entries.size());
  }
  rep.pass = rep.count_match &&
             std::abs(rep.shift_measured - rep.shift_expected) <=
                 grid_base.dtau() + 1e-12;
  return rep;
}

namespace detail {
inline double trapezoid_sq(const Eigen::VectorXd& profile, double dtau) {
  double acc = 0.0;
  const int n = static_cast<int>(profile.size());
  for (int i = 0; i < n; ++i) {
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += w * profile[i] * profile[i];
  }
  return acc * dtau;
}
}  // namespace detail

// g_k(f)(x) = [ int |t^k d^k K_t/dt^k * f|^2 dt/t ]^{1/2}, discretized with
// dt/t = ln(a) dtau and the trapezoid rule on the tau-lattice.
inline double g_function(const Eigen::VectorXd& point_kernel_profile,
                         const ScaleGrid& grid, int k) {
  grid.validate();
  if (k < 1) throw std::invalid_argument("g_function: k must be >= 1");
  if (point_kernel_profile.size() != grid.steps)
    throw std::invalid_argument("g_function: profile/grid size mismatch");
  return std::sqrt(std::log(grid.a) *
                   detail::trapezoid_sq(point_kernel_profile, grid.dtau()));
}

// S^2(x) = ln(a) int |d^2 S/dtau^2|^2 dtau.
inline double square_function(const Eigen::VectorXd& second_deriv_profile,
                              const ScaleGrid& grid) {
  grid.validate();
  if (second_deriv_profile.size() != grid.steps)
    throw std::invalid_argument("square_function: profile/grid size mismatch");
  return std::log(grid.a) *
         detail::trapezoid_sq(second_deriv_profile, grid.dtau());
}

struct ExponentialFit {
  double c1 = 0.0;
  double c2 = 0.0;
};

// Least-squares fit measure ~= c1 * exp(-c2 * N) over the strictly positive
// entries; undefined (nullopt) with fewer than two of them.
inline std::optional<ExponentialFit> fit_exponential_decay(
    const std::vector<std::pair<int, double>>& measures) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, m] : measures)
    if (m > 0.0) pts.emplace_back(static_cast<double>(n), std::log(m));
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return ExponentialFit{std::exp(intercept), -slope};
}

}  // namespace locscale
