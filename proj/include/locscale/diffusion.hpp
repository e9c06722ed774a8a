#pragma once

// Component-wise heat diffusion of a parametrized set and the
// parametrization-based scale transform.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "locscale/scalespace.hpp"
#include "locscale/signal.hpp"

namespace locscale {

// Coordinate components f_1..f_n sampled on a shared lattice over [0,1]^d.
// The scale parameter of the diffusion lives in parameter units (squared
// parameter length), distinct from the ambient scale of measure transforms.
struct ParamComponents {
  int d = 1;
  int n = 2;
  std::vector<int> extents;  // size d (only d = 1 or 2 supported)
  bool closed = false;
  Eigen::MatrixXd components;  // n x M, lattice-major order

  void validate() const {
    if (d != 1 && d != 2)
      throw std::invalid_argument("ParamComponents: d must be 1 or 2");
    if (static_cast<int>(extents.size()) != d)
      throw std::invalid_argument("ParamComponents: extents size must equal d");
    long m = 1;
    for (int e : extents) {
      if (e < 2) throw std::invalid_argument("ParamComponents: >= 2 per axis");
      m *= e;
    }
    if (components.rows() != n || components.cols() != m)
      throw std::invalid_argument("ParamComponents: components shape mismatch");
    if (!components.allFinite())
      throw std::invalid_argument("ParamComponents: values must be finite");
  }

  double h_r() const {
    return closed ? 1.0 / extents[0] : 1.0 / (extents[0] - 1);
  }

  SampledField component_field(int i) const {
    SampledField f;
    f.dims = d;
    f.shape = {extents[0], d == 2 ? extents[1] : 1};
    f.h = h_r();
    f.boundary = closed ? Boundary::periodic : Boundary::clamp;
    f.values = components.row(i).transpose();
    return f;
  }
};

// Gamma_t: each component convolved with K_t over the parameter lattice.
inline ParamComponents diffuse_curve(const ParamComponents& components,
                                     double t, double eps_trunc = 1e-12) {
  components.validate();
  if (!(t > 0.0)) throw std::domain_error("diffuse_curve: t must be > 0");
  ParamComponents out = components;
  for (int i = 0; i < components.n; ++i) {
    SampledField f = components.component_field(i);
    KernelParams params{f.dims, 2.0, eps_trunc};
    const int K = static_cast<int>(std::ceil(params.conv_radius(t) / f.h));
    auto taps = detail::build_taps(f, K, 1, [&](double r2, double* v) {
      v[0] = heat_kernel(r2, t, params);
    });
    out.components.row(i) = detail::convolve_scale(f, taps, K)[0].transpose();
  }
  return out;
}

// S Gamma(r,t) = || (psi_t * f_1, ..., psi_t * f_n) ||; a nonnegative stack
// whose local maxima in tau are the parametric local scales.
inline ScaleStack parametric_scale_stack(const ParamComponents& components,
                                         const ScaleGrid& grid,
                                         double eps_trunc = 1e-12) {
  components.validate();
  grid.validate();
  const long M = components.components.cols();
  ScaleStack stack;
  stack.grid = grid;
  stack.point_ids.resize(M);
  for (long p = 0; p < M; ++p) stack.point_ids[p] = static_cast<int>(p);
  stack.S = Eigen::MatrixXd::Zero(M, grid.steps);
  for (int i = 0; i < components.n; ++i) {
    SampledField f = components.component_field(i);
    const ScaleStack comp = scale_transform_field(f, grid, 0, eps_trunc);
    stack.S.array() += comp.S.array().square();
  }
  stack.S = stack.S.array().sqrt();
  return stack;
}

}  // namespace locscale
