#pragma once

// Pipeline for sampled functions and images: heat stacks, scale transforms,
// the sine closed form, and the Omega exceptional-set reports.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locscale/kernel.hpp"
#include "locscale/scalespace.hpp"

namespace locscale {

enum class Boundary { periodic, zero_pad, clamp };

struct SampledField {
  int dims = 1;                   // 1 or 2
  std::array<int, 2> shape = {0, 1};  // {nx, ny}; ny = 1 when dims == 1
  double h = 1.0;                 // uniform grid spacing
  Boundary boundary = Boundary::periodic;
  Eigen::VectorXd values;         // index = iy * nx + ix

  void validate() const {
    if (dims != 1 && dims != 2)
      throw std::invalid_argument("SampledField: dims must be 1 or 2");
    if (!(h > 0.0)) throw std::invalid_argument("SampledField: h must be > 0");
    const long expect = static_cast<long>(shape[0]) * (dims == 2 ? shape[1] : 1);
    if (shape[0] < 1 || (dims == 2 && shape[1] < 1) ||
        values.size() != expect)
      throw std::invalid_argument("SampledField: shape/values mismatch");
    if (!values.allFinite())
      throw std::invalid_argument("SampledField: values must be finite");
  }

  int size() const { return static_cast<int>(values.size()); }
  double sup_norm() const {
    return values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  }
  double cell_volume() const { return dims == 2 ? h * h : h; }

  double& at(int ix, int iy) { return values[iy * shape[0] + ix]; }
  double at(int ix, int iy) const { return values[iy * shape[0] + ix]; }
};

namespace detail {

inline int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

// Sample with the field's boundary policy; returns 0 outside for zero_pad.
inline double sample_1d(const SampledField& f, int i) {
  const int n = f.shape[0];
  switch (f.boundary) {
    case Boundary::periodic: return f.values[wrap_index(i, n)];
    case Boundary::zero_pad: return (i < 0 || i >= n) ? 0.0 : f.values[i];
    case Boundary::clamp: return f.values[std::clamp(i, 0, n - 1)];
  }
  return 0.0;
}

inline double sample_2d(const SampledField& f, int ix, int iy) {
  const int nx = f.shape[0], ny = f.shape[1];
  switch (f.boundary) {
    case Boundary::periodic:
      return f.at(wrap_index(ix, nx), wrap_index(iy, ny));
    case Boundary::zero_pad:
      return (ix < 0 || ix >= nx || iy < 0 || iy >= ny) ? 0.0 : f.at(ix, iy);
    case Boundary::clamp:
      return f.at(std::clamp(ix, 0, nx - 1), std::clamp(iy, 0, ny - 1));
  }
  return 0.0;
}

// Convolves the field with a set of radial kernels at one scale. taps[j] maps
// the lattice offset to kernel value times the cell volume. Summation order is
// fixed (ascending offset) so results are bit-reproducible.
inline std::vector<Eigen::VectorXd> convolve_scale(
    const SampledField& f, const std::vector<Eigen::VectorXd>& taps, int K) {
  const int jcount = static_cast<int>(taps.size());
  std::vector<Eigen::VectorXd> out(jcount, Eigen::VectorXd::Zero(f.size()));
  if (f.dims == 1) {
    const int n = f.shape[0];
    if (f.boundary == Boundary::periodic) {
      // Fold the taps into one period, then do an n-point circular pass.
      std::vector<Eigen::VectorXd> wrapped(jcount, Eigen::VectorXd::Zero(n));
      for (int k = -K; k <= K; ++k) {
        const int o = wrap_index(k, n);
        for (int j = 0; j < jcount; ++j) wrapped[j][o] += taps[j][k + K];
      }
      for (int p = 0; p < n; ++p) {
        for (int j = 0; j < jcount; ++j) {
          double acc = 0.0;
          for (int o = 0; o < n; ++o)
            acc += wrapped[j][o] * f.values[wrap_index(p + o, n)];
          out[j][p] = acc;
        }
      }
    } else {
      for (int p = 0; p < n; ++p) {
        for (int j = 0; j < jcount; ++j) {
          double acc = 0.0;
          for (int k = -K; k <= K; ++k) acc += taps[j][k + K] * sample_1d(f, p + k);
          out[j][p] = acc;
        }
      }
    }
  } else {
    const int nx = f.shape[0], ny = f.shape[1];
    const int w = 2 * K + 1;
    for (int py = 0; py < ny; ++py) {
      for (int px = 0; px < nx; ++px) {
        const int p = py * nx + px;
        for (int j = 0; j < jcount; ++j) {
          double acc = 0.0;
          for (int ky = -K; ky <= K; ++ky)
            for (int kx = -K; kx <= K; ++kx)
              acc += taps[j][(ky + K) * w + (kx + K)] *
                     sample_2d(f, px + kx, py + ky);
          out[j][p] = acc;
        }
      }
    }
  }
  return out;
}

// Kernel taps at one scale. eval(r2) must fill jcount values.
template <class Eval>
inline std::vector<Eigen::VectorXd> build_taps(const SampledField& f, int K,
                                               int jcount, Eval&& eval) {
  std::vector<Eigen::VectorXd> taps;
  if (f.dims == 1) {
    taps.assign(jcount, Eigen::VectorXd::Zero(2 * K + 1));
    std::vector<double> vals(jcount);
    for (int k = -K; k <= K; ++k) {
      const double r = k * f.h;
      eval(r * r, vals.data());
      for (int j = 0; j < jcount; ++j) taps[j][k + K] = vals[j] * f.h;
    }
  } else {
    const int w = 2 * K + 1;
    taps.assign(jcount, Eigen::VectorXd::Zero(w * w));
    std::vector<double> vals(jcount);
    const double cell = f.h * f.h;
    for (int ky = -K; ky <= K; ++ky)
      for (int kx = -K; kx <= K; ++kx) {
        const double r2 = (kx * kx + ky * ky) * f.h * f.h;
        eval(r2, vals.data());
        for (int j = 0; j < jcount; ++j)
          taps[j][(ky + K) * w + (kx + K)] = vals[j] * cell;
      }
  }
  return taps;
}

}  // namespace detail

// u(x, t_i) = (K_{t_i} * f)(x) by direct truncated convolution.
inline Eigen::MatrixXd heat_stack(const SampledField& field,
                                  const ScaleGrid& grid,
                                  double eps_trunc = 1e-12) {
  field.validate();
  grid.validate();
  KernelParams params{field.dims, grid.a, eps_trunc};
  Eigen::MatrixXd out(field.size(), grid.steps);
  for (int s = 0; s < grid.steps; ++s) {
    const double t = grid.t(s);
    const int K = static_cast<int>(std::ceil(params.conv_radius(t) / field.h));
    auto taps = detail::build_taps(field, K, 1, [&](double r2, double* v) {
      v[0] = heat_kernel(r2, t, params);
    });
    auto res = detail::convolve_scale(field, taps, K);
    out.col(s) = res[0];
  }
  return out;
}

// S and its analytic tau-derivative stacks via the wavelet_deriv kernels.
inline ScaleStack scale_transform_field(const SampledField& field,
                                        const ScaleGrid& grid, int jmax,
                                        double eps_trunc = 1e-12) {
  field.validate();
  grid.validate();
  if (jmax < 0 || jmax > 2)
    throw std::invalid_argument("scale_transform_field: jmax must be in {0,1,2}");
  KernelParams params{field.dims, grid.a, eps_trunc};
  ScaleStack stack;
  stack.grid = grid;
  stack.point_ids.resize(field.size());
  for (int p = 0; p < field.size(); ++p) stack.point_ids[p] = p;
  stack.S.resize(field.size(), grid.steps);
  if (jmax >= 1) stack.D1.resize(field.size(), grid.steps);
  if (jmax >= 2) stack.D2.resize(field.size(), grid.steps);
  for (int s = 0; s < grid.steps; ++s) {
    const double t = grid.t(s);
    const int K = static_cast<int>(std::ceil(params.conv_radius(t) / field.h));
    WaveletStackKernel kern(params, t, jmax);
    auto taps = detail::build_taps(field, K, jmax + 1,
                                   [&](double r2, double* v) { kern.eval(r2, v); });
    auto res = detail::convolve_scale(field, taps, K);
    stack.S.col(s) = res[0];
    if (jmax >= 1) stack.D1.col(s) = res[1];
    if (jmax >= 2) stack.D2.col(s) = res[2];
  }
  return stack;
}

// Sf(x,t) for f(x) = sin(2 pi m x), from the multiplier identity
// \hat{K_t}(xi) = e^{-pi t |xi|^2}:  Sf = t d/dt [e^{-pi t m^2}] sin(2 pi m x).
inline double sine_transform_closed_form(int m, double x, double t) {
  if (m < 1) throw std::invalid_argument("sine_transform_closed_form: m >= 1");
  if (!(t > 0.0))
    throw std::domain_error("sine_transform_closed_form: t must be > 0");
  const double mm = static_cast<double>(m) * m;
  return -M_PI * mm * t * std::exp(-M_PI * t * mm) * std::sin(2.0 * M_PI * m * x);
}

struct OmegaReport {
  double delta = 0.0;
  std::optional<double> beta;
  std::vector<std::pair<int, double>> measures;  // (N, |Omega_{.,N}|)
  std::optional<ExponentialFit> fit;
};

// Counts delta-separated (and beta-visible, when beta is given) local scales
// per point; measures(N) = cell_volume * #{x : count >= N}, N = 1..Nmax.
inline OmegaReport omega_sets(const ScaleStack& stack, double cell_volume,
                              double delta, std::optional<double> beta,
                              int Nmax) {
  if (Nmax < 1) throw std::invalid_argument("omega_sets: Nmax must be >= 1");
  if (!(cell_volume > 0.0))
    throw std::invalid_argument("omega_sets: cell_volume must be > 0");
  OmegaReport rep;
  rep.delta = delta;
  rep.beta = beta;
  std::vector<int> counts(stack.num_points());
  for (int p = 0; p < stack.num_points(); ++p) {
    const LocalScaleSet set =
        classify_scales(stack, p, beta.value_or(0.0), delta);
    counts[p] = beta ? set.count_visible_separated() : set.count_separated();
  }
  for (int N = 1; N <= Nmax; ++N) {
    int c = 0;
    for (int cnt : counts) c += (cnt >= N) ? 1 : 0;
    rep.measures.emplace_back(N, cell_volume * c);
  }
  rep.fit = fit_exponential_decay(rep.measures);
  return rep;
}

}  // namespace locscale
