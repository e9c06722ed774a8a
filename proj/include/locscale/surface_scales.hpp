#pragma once

// Scale transforms over quadrature measures: S Gamma stacks, local scales on
// Gamma, the Gamma_{delta,N} decay reports, derivative-bound probes, and the
// empirical g-function norm ratios.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locscale/geometry.hpp"
#include "locscale/kernel.hpp"
#include "locscale/scalespace.hpp"
#include "locscale/signal.hpp"

namespace locscale {

// S(x,t) = sum_i w_i psi_t(|x - y_i|^2) over |x - y_i| <= conv_radius(t),
// with the analytic tau-derivative slabs from the same pass. Points whose
// truncated ball sticks out of the sampled region are marked uncovered.
inline ScaleStack surface_scale_stack(const QuadratureMeasure& measure,
                                      const Eigen::MatrixXd& eval_points,
                                      const ScaleGrid& grid, int jmax,
                                      double eps_trunc = 1e-12) {
  grid.validate();
  if (jmax < 0 || jmax > 2)
    throw std::invalid_argument("surface_scale_stack: jmax must be in {0,1,2}");
  if (eval_points.rows() != measure.ambient_dim())
    throw std::invalid_argument("surface_scale_stack: ambient dim mismatch");
  KernelParams params{measure.d, grid.a, eps_trunc};
  const long P = eval_points.cols();
  const long M = measure.size();
  ScaleStack stack;
  stack.grid = grid;
  stack.point_ids.resize(P);
  for (long p = 0; p < P; ++p) stack.point_ids[p] = static_cast<int>(p);
  stack.S.resize(P, grid.steps);
  if (jmax >= 1) stack.D1.resize(P, grid.steps);
  if (jmax >= 2) stack.D2.resize(P, grid.steps);
  stack.covered.resize(P, grid.steps);
  stack.covered.setConstant(true);

  Eigen::VectorXd clearance(P);
  for (long p = 0; p < P; ++p)
    clearance[p] = measure.boundary_clearance(eval_points.col(p));

  double vals[3];
  for (int s = 0; s < grid.steps; ++s) {
    const double t = grid.t(s);
    const double radius = params.conv_radius(t);
    const double radius2 = radius * radius;
    WaveletStackKernel kern(params, t, jmax);
    for (long p = 0; p < P; ++p) {
      if (clearance[p] < radius) stack.covered(p, s) = false;
      double acc[3] = {0.0, 0.0, 0.0};
      for (long i = 0; i < M; ++i) {
        const double r2 = (measure.points.col(i) - eval_points.col(p)).squaredNorm();
        if (r2 > radius2) continue;
        kern.eval(r2, vals);
        const double w = measure.weights[i];
        for (int j = 0; j <= jmax; ++j) acc[j] += w * vals[j];
      }
      stack.S(p, s) = acc[0];
      if (jmax >= 1) stack.D1(p, s) = acc[1];
      if (jmax >= 2) stack.D2(p, s) = acc[2];
    }
  }
  return stack;
}

struct SurfaceScaleRun {
  QuadratureMeasure measure;
  std::vector<long> eval_indices;  // into measure.points
  ScaleGrid grid;
  ScaleStack stack;
  KernelParams params;
};

inline SurfaceScaleRun make_surface_run(const QuadratureMeasure& measure,
                                        const std::vector<long>& eval_indices,
                                        const ScaleGrid& grid, int jmax = 2,
                                        double eps_trunc = 1e-12) {
  Eigen::MatrixXd eval(measure.ambient_dim(),
                       static_cast<long>(eval_indices.size()));
  for (std::size_t i = 0; i < eval_indices.size(); ++i)
    eval.col(static_cast<long>(i)) = measure.points.col(eval_indices[i]);
  SurfaceScaleRun run{measure, eval_indices, grid,
                      surface_scale_stack(measure, eval, grid, jmax, eps_trunc),
                      KernelParams{measure.d, grid.a, eps_trunc}};
  return run;
}

struct GammaSetReport {
  double delta = 0.0;
  std::optional<double> beta;
  std::vector<std::pair<int, double>> mu_measures;  // (N, mu(Gamma_{.,N}))
  std::optional<ExponentialFit> fit;
};

// Gamma_{delta,N} = {z : #T_delta(z) > N}; masses are sums of quadrature
// weights of qualifying eval points. N runs from 0 (at least one separated
// scale) so short count histograms still give a two-point fit.
inline GammaSetReport gamma_sets(const SurfaceScaleRun& run, double delta,
                                 std::optional<double> beta, int Nmax) {
  if (Nmax < 1) throw std::invalid_argument("gamma_sets: Nmax must be >= 1");
  GammaSetReport rep;
  rep.delta = delta;
  rep.beta = beta;
  const long P = static_cast<long>(run.eval_indices.size());
  std::vector<int> counts(P);
  for (long p = 0; p < P; ++p) {
    const LocalScaleSet set =
        classify_scales(run.stack, static_cast<int>(p), beta.value_or(0.0), delta);
    counts[p] = beta ? set.count_visible_separated() : set.count_separated();
  }
  for (int N = 0; N <= Nmax; ++N) {
    double mass = 0.0;
    for (long p = 0; p < P; ++p)
      if (counts[p] > N) mass += run.measure.weights[run.eval_indices[p]];
    rep.mu_measures.emplace_back(N, mass);
  }
  rep.fit = fit_exponential_decay(rep.mu_measures);
  return rep;
}

struct DerivativeBoundProbe {
  double sup_value = 0.0;                      // sup_{x,t} t^k |d^k/dt^k S|
  std::vector<std::pair<double, double>> per_t;  // (t, sup_x)
};

// Evaluates t^k |d^k/dt^k S Gamma(x,t)| through the (t d/dt)-algebra kernels.
inline DerivativeBoundProbe derivative_bound_probe(
    const QuadratureMeasure& measure, const Eigen::MatrixXd& eval_points,
    int k, const std::vector<double>& t_list, double eps_trunc = 1e-12) {
  if (k < 0 || k > 3)
    throw std::invalid_argument("derivative_bound_probe: k must be in {0..3}");
  KernelParams params{measure.d, 2.0, eps_trunc};
  DerivativeBoundProbe probe;
  const LogDerivPolynomial poly = t_deriv_polynomial(k, params, 1);
  const double d_half = 0.5 * params.d;
  for (double t : t_list) {
    const double radius = params.conv_radius(t);
    const double radius2 = radius * radius;
    const double pre = std::pow(t, -d_half);
    double sup_t = 0.0;
    for (long p = 0; p < eval_points.cols(); ++p) {
      double acc = 0.0;
      for (long i = 0; i < measure.size(); ++i) {
        const double r2 =
            (measure.points.col(i) - eval_points.col(p)).squaredNorm();
        if (r2 > radius2) continue;
        const double u = M_PI * r2 / t;
        acc += measure.weights[i] * pre * poly(u) * std::exp(-u);
      }
      sup_t = std::max(sup_t, std::abs(acc));
    }
    probe.per_t.emplace_back(t, sup_t);
    probe.sup_value = std::max(probe.sup_value, sup_t);
  }
  return probe;
}

// ||g_k f||_{L^2(mu)} / ||f||_{L^2(mu)} with weighted discrete norms; the
// scale integral uses the t-lattice of `grid`.
inline double g_norm_ratio(const QuadratureMeasure& measure,
                           const Eigen::VectorXd& f_samples, int k,
                           const ScaleGrid& grid, double eps_trunc = 1e-12) {
  grid.validate();
  if (k < 1) throw std::invalid_argument("g_norm_ratio: k must be >= 1");
  if (f_samples.size() != measure.size())
    throw std::invalid_argument("g_norm_ratio: f/measure size mismatch");
  const double f_norm2 = (measure.weights.array() *
                          f_samples.array().square()).sum();
  if (!(f_norm2 > 0.0))
    throw std::invalid_argument("g_norm_ratio: f must be nonzero");
  KernelParams params{measure.d, grid.a, eps_trunc};
  const LogDerivPolynomial poly = t_deriv_polynomial(k, params, 0);
  const double d_half = 0.5 * params.d;
  const long M = measure.size();
  Eigen::MatrixXd conv(M, grid.steps);  // t^k d^k K_t/dt^k * (f dmu)
  for (int s = 0; s < grid.steps; ++s) {
    const double t = grid.t(s);
    const double radius = params.conv_radius(t);
    const double radius2 = radius * radius;
    const double pre = std::pow(t, -d_half);
    for (long p = 0; p < M; ++p) {
      double acc = 0.0;
      for (long i = 0; i < M; ++i) {
        const double r2 = (measure.points.col(i) - measure.points.col(p)).squaredNorm();
        if (r2 > radius2) continue;
        const double u = M_PI * r2 / t;
        acc += measure.weights[i] * f_samples[i] * pre * poly(u) * std::exp(-u);
      }
      conv(p, s) = acc;
    }
  }
  double g_norm2 = 0.0;
  for (long p = 0; p < M; ++p) {
    const double g = g_function(conv.row(p).transpose(), grid, k);
    g_norm2 += measure.weights[p] * g * g;
  }
  return std::sqrt(g_norm2 / f_norm2);
}

}  // namespace locscale
