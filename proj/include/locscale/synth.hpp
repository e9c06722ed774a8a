#pragma once

// Deterministic generators of test fixtures with known ground truth.
// Circle and Koch fixtures are geometric oracles for the beta sums and the
// dilation checks; the sine and tent families carry their expected scales.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "locscale/geometry.hpp"
#include "locscale/signal.hpp"

namespace locscale {
namespace synth {

// f(x) = amplitude * sin(2 pi m x), periodic on [0,1); expected local scale
// t* = 1/(pi m^2).
inline SampledField sine_signal(int m, double h, double amplitude = 1.0) {
  if (m < 1 || !(h > 0.0)) throw std::invalid_argument("sine_signal: bad spec");
  const int n = static_cast<int>(std::lround(1.0 / h));
  if (n < 2 || std::abs(n * h - 1.0) > 1e-9)
    throw std::invalid_argument("sine_signal: h must divide 1");
  SampledField f;
  f.dims = 1;
  f.shape = {n, 1};
  f.h = h;
  f.boundary = Boundary::periodic;
  f.values.resize(n);
  for (int i = 0; i < n; ++i)
    f.values[i] = amplitude * std::sin(2.0 * M_PI * m * i * h);
  return f;
}

inline SampledField two_freq_signal(int m1, int m2, double h) {
  SampledField f = sine_signal(m1, h);
  const SampledField g = sine_signal(m2, h);
  f.values += g.values;
  return f;
}

inline SampledField constant_field(double value, double h) {
  const int n = static_cast<int>(std::lround(1.0 / h));
  SampledField f;
  f.dims = 1;
  f.shape = {n, 1};
  f.h = h;
  f.boundary = Boundary::periodic;
  f.values = Eigen::VectorXd::Constant(n, value);
  return f;
}

// Graph curve (r, A(r)) over [0, extent] with spacing h_r.
inline ParamSurface graph_curve(const std::function<double(double)>& A,
                                double extent, double h_r) {
  if (!(extent > 0.0) || !(h_r > 0.0))
    throw std::invalid_argument("graph_curve: bad spec");
  const int n = static_cast<int>(std::lround(extent / h_r)) + 1;
  ParamSurface s;
  s.d = 1;
  s.n = 2;
  s.extents = {n};
  s.h_r = h_r;
  s.kind = SurfaceKind::lipschitz_graph;
  s.closed = false;
  s.samples.resize(2, n);
  for (int i = 0; i < n; ++i) {
    const double r = i * h_r;
    s.samples(0, i) = r;
    s.samples(1, i) = A(r);
  }
  return s;
}

// Graph of amplitude * sin(2 pi m r) over [0, extent].
inline ParamSurface sine_graph(int m, double amplitude, double h_r,
                               double extent = 1.0) {
  return graph_curve(
      [=](double r) { return amplitude * std::sin(2.0 * M_PI * m * r); }, extent,
      h_r);
}

// Triangle-wave graph with |A'| = slope a.e. and `teeth` teeth per unit
// length; amplitude = slope / (2 * teeth).
inline ParamSurface tent_graph(double slope, int teeth, double h_r,
                               double extent = 1.0) {
  if (!(slope > 0.0) || teeth < 1)
    throw std::invalid_argument("tent_graph: bad spec");
  const double period = 1.0 / teeth;
  return graph_curve(
      [=](double r) {
        const double phase = r - period * std::floor(r / period);
        return slope * (0.5 * period - std::abs(phase - 0.5 * period));
      },
      extent, h_r);
}

inline ParamSurface segment(double length, int samples) {
  if (samples < 2) throw std::invalid_argument("segment: need >= 2 samples");
  return graph_curve([](double) { return 0.0; }, length,
                     length / (samples - 1));
}

// Closed circle of radius R, parametrized over [0,1).
inline ParamSurface circle(double R, int samples) {
  if (!(R > 0.0) || samples < 3) throw std::invalid_argument("circle: bad spec");
  ParamSurface s;
  s.d = 1;
  s.n = 2;
  s.extents = {samples};
  s.h_r = 1.0 / samples;
  s.kind = SurfaceKind::general_parametric;
  s.closed = true;
  s.samples.resize(2, samples);
  for (int i = 0; i < samples; ++i) {
    const double th = 2.0 * M_PI * i / samples;
    s.samples(0, i) = R * std::cos(th);
    s.samples(1, i) = R * std::sin(th);
  }
  return s;
}

// Flat d=2 patch {(r1, r2, 0)} over [0, extent]^2.
inline ParamSurface plane_patch(double extent, int samples_per_axis) {
  if (samples_per_axis < 2)
    throw std::invalid_argument("plane_patch: need >= 2 samples per axis");
  ParamSurface s;
  s.d = 2;
  s.n = 3;
  s.extents = {samples_per_axis, samples_per_axis};
  s.h_r = extent / (samples_per_axis - 1);
  s.kind = SurfaceKind::lipschitz_graph;
  s.closed = false;
  s.samples.resize(3, static_cast<long>(samples_per_axis) * samples_per_axis);
  for (int i2 = 0; i2 < samples_per_axis; ++i2)
    for (int i1 = 0; i1 < samples_per_axis; ++i1) {
      const long idx = i1 + static_cast<long>(samples_per_axis) * i2;
      s.samples(0, idx) = i1 * s.h_r;
      s.samples(1, idx) = i2 * s.h_r;
      s.samples(2, idx) = 0.0;
    }
  return s;
}

// Koch-curve iterate: level j has 4^j segments of length 3^{-j}; returns the
// segment endpoints. level = 0 is the unit segment.
inline std::vector<Eigen::Vector2d> koch(int level) {
  if (level < 0) throw std::invalid_argument("koch: level must be >= 0");
  std::vector<Eigen::Vector2d> pts = {{0.0, 0.0}, {1.0, 0.0}};
  const double rot_c = std::cos(M_PI / 3.0), rot_s = std::sin(M_PI / 3.0);
  for (int iter = 0; iter < level; ++iter) {
    std::vector<Eigen::Vector2d> next;
    next.reserve((pts.size() - 1) * 4 + 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Eigen::Vector2d a = pts[i], b = pts[i + 1];
      const Eigen::Vector2d step = (b - a) / 3.0;
      const Eigen::Vector2d p1 = a + step;
      const Eigen::Vector2d p3 = a + 2.0 * step;
      const Eigen::Vector2d peak(
          p1.x() + rot_c * step.x() - rot_s * step.y(),
          p1.y() + rot_s * step.x() + rot_c * step.y());
      next.push_back(a);
      next.push_back(p1);
      next.push_back(peak);
      next.push_back(p3);
    }
    next.push_back(pts.back());
    pts = std::move(next);
  }
  return pts;
}

}  // namespace synth
}  // namespace locscale
