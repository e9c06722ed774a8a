#pragma once

// Sampled d-dimensional surfaces in R^n and the quadrature measures that
// realize surface measure mu or parametric Hausdorff measure alpha, plus
// ambient similarity transforms.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace locscale {

enum class SurfaceKind { lipschitz_graph, general_parametric };
enum class MeasureMode { surface, hausdorff_param, explicit_weights };

// z(r) sampled on a uniform lattice over a box in R^d, lattice-major order:
// index = i1 + extents[0]*i2 + extents[0]*extents[1]*i3 + ...
struct ParamSurface {
  int d = 1;
  int n = 2;
  std::vector<int> extents;   // lattice points per axis, size d
  double h_r = 1.0;           // uniform lattice spacing
  SurfaceKind kind = SurfaceKind::general_parametric;
  bool closed = false;        // periodic parametrization (all axes)
  Eigen::MatrixXd samples;    // n x M

  void validate() const {
    if (d < 1 || n <= d)
      throw std::invalid_argument("ParamSurface: need 1 <= d < n");
    if (static_cast<int>(extents.size()) != d)
      throw std::invalid_argument("ParamSurface: extents size must equal d");
    long m = 1;
    for (int e : extents) {
      if (e < 2) throw std::invalid_argument("ParamSurface: >= 2 points per axis");
      m *= e;
    }
    if (samples.rows() != n || samples.cols() != m)
      throw std::invalid_argument("ParamSurface: samples shape mismatch");
    if (!(h_r > 0.0)) throw std::invalid_argument("ParamSurface: h_r must be > 0");
    if (!samples.allFinite())
      throw std::invalid_argument("ParamSurface: samples must be finite");
  }

  long num_points() const { return samples.cols(); }

  long stride(int axis) const {
    long s = 1;
    for (int i = 0; i < axis; ++i) s *= extents[i];
    return s;
  }

  void unravel(long idx, std::vector<int>& coord) const {
    coord.resize(d);
    for (int i = 0; i < d; ++i) {
      coord[i] = static_cast<int>(idx % extents[i]);
      idx /= extents[i];
    }
  }

  bool on_boundary(long idx) const {
    std::vector<int> c;
    unravel(idx, c);
    for (int i = 0; i < d; ++i)
      if (c[i] == 0 || c[i] == extents[i] - 1) return true;
    return false;
  }

  // Max finite-difference slope of the graph part; for graphs this estimates
  // the Lipschitz constant of A.
  double lipschitz_estimate() const {
    validate();
    double sup = 0.0;
    std::vector<int> c;
    for (long idx = 0; idx < num_points(); ++idx) {
      unravel(idx, c);
      for (int ax = 0; ax < d; ++ax) {
        if (c[ax] + 1 >= extents[ax] && !closed) continue;
        const long nb = idx + ((c[ax] + 1 < extents[ax])
                                   ? stride(ax)
                                   : stride(ax) * (1 - extents[ax]));
        const double rise =
            (samples.col(nb).tail(n - d) - samples.col(idx).tail(n - d)).norm();
        sup = std::max(sup, rise / h_r);
      }
    }
    return sup;
  }
};

struct GramWeights {
  Eigen::VectorXd weights;  // sqrt(det g) per lattice point
  double gamma_star = 0.0;  // sup of the weights
  int degenerate_count = 0; // lattice points with det g <= 0, clamped to 0
};

// Jacobian columns by central finite differences (wrap if closed, one-sided
// at boundaries); g_ij = <dz/dr_i, dz/dr_j>; weight = sqrt(det g).
inline GramWeights gram_weights(const ParamSurface& surface) {
  surface.validate();
  const long M = surface.num_points();
  GramWeights out;
  out.weights.resize(M);
  std::vector<int> c;
  Eigen::MatrixXd jac(surface.n, surface.d);
  for (long idx = 0; idx < M; ++idx) {
    surface.unravel(idx, c);
    for (int ax = 0; ax < surface.d; ++ax) {
      const int e = surface.extents[ax];
      const long st = surface.stride(ax);
      long ip, im;
      double denom;
      if (surface.closed) {
        ip = idx + ((c[ax] + 1 < e) ? st : st * (1 - e));
        im = idx - ((c[ax] - 1 >= 0) ? st : st * (1 - e));
        denom = 2.0 * surface.h_r;
      } else if (c[ax] == 0) {
        ip = idx + st;
        im = idx;
        denom = surface.h_r;
      } else if (c[ax] == e - 1) {
        ip = idx;
        im = idx - st;
        denom = surface.h_r;
      } else {
        ip = idx + st;
        im = idx - st;
        denom = 2.0 * surface.h_r;
      }
      jac.col(ax) = (surface.samples.col(ip) - surface.samples.col(im)) / denom;
    }
    const Eigen::MatrixXd gram = jac.transpose() * jac;
    const double det = gram.determinant();
    if (det > 0.0) {
      out.weights[idx] = std::sqrt(det);
    } else {
      out.weights[idx] = 0.0;
      ++out.degenerate_count;
    }
    out.gamma_star = std::max(out.gamma_star, out.weights[idx]);
  }
  return out;
}

struct QuadratureMeasure {
  int d = 1;                    // intrinsic dimension carried by the weights
  Eigen::MatrixXd points;       // n x M
  Eigen::VectorXd weights;      // strictly positive (degenerate points: 0)
  MeasureMode mode = MeasureMode::hausdorff_param;
  bool closed = false;
  Eigen::MatrixXd boundary_points;  // n x B; empty when closed
  int degenerate_warnings = 0;
  double gamma_star = 1.0;

  long size() const { return points.cols(); }
  int ambient_dim() const { return static_cast<int>(points.rows()); }
  double total_mass() const { return weights.sum(); }

  // Ambient distance from x to the nearest sampled parameter-boundary point;
  // +inf for closed surfaces.
  double boundary_clearance(const Eigen::VectorXd& x) const {
    if (closed || boundary_points.cols() == 0)
      return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (long i = 0; i < boundary_points.cols(); ++i)
      best = std::min(best, (boundary_points.col(i) - x).norm());
    return best;
  }
};

inline QuadratureMeasure as_measure(
    const ParamSurface& surface, MeasureMode mode,
    const Eigen::VectorXd* explicit_w = nullptr) {
  surface.validate();
  QuadratureMeasure m;
  m.d = surface.d;
  m.points = surface.samples;
  m.mode = mode;
  m.closed = surface.closed;
  const double cell = std::pow(surface.h_r, surface.d);
  switch (mode) {
    case MeasureMode::surface: {
      const GramWeights gw = gram_weights(surface);
      m.weights = gw.weights * cell;
      m.degenerate_warnings = gw.degenerate_count;
      m.gamma_star = gw.gamma_star;
      break;
    }
    case MeasureMode::hausdorff_param:
      m.weights = Eigen::VectorXd::Constant(surface.num_points(), cell);
      m.gamma_star = gram_weights(surface).gamma_star;
      break;
    case MeasureMode::explicit_weights:
      if (!explicit_w || explicit_w->size() != surface.num_points())
        throw std::invalid_argument("as_measure: explicit mode needs weights");
      m.weights = *explicit_w;
      break;
  }
  if (!surface.closed) {
    std::vector<long> bidx;
    for (long i = 0; i < surface.num_points(); ++i)
      if (surface.on_boundary(i)) bidx.push_back(i);
    m.boundary_points.resize(surface.n, static_cast<long>(bidx.size()));
    for (std::size_t i = 0; i < bidx.size(); ++i)
      m.boundary_points.col(static_cast<long>(i)) = surface.samples.col(bidx[i]);
  }
  return m;
}

struct SimilarityTransform {
  Eigen::MatrixXd rotation;   // Q in O(n)
  Eigen::VectorXd translation;
  double dilation = 1.0;

  SimilarityTransform compose_after(const SimilarityTransform& first) const {
    // this ∘ first:  x -> delta2*Q2*(delta1*Q1*x + b1) + b2
    SimilarityTransform out;
    out.rotation = rotation * first.rotation;
    out.dilation = dilation * first.dilation;
    out.translation = dilation * rotation * first.translation + translation;
    return out;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    return dilation * rotation * x + translation;
  }
};

// Points -> delta*Q*y + b; weights -> delta^d * w (H^d scaling).
inline QuadratureMeasure apply_transform(const QuadratureMeasure& measure,
                                         const SimilarityTransform& tf) {
  const int n = measure.ambient_dim();
  if (tf.rotation.rows() != n || tf.rotation.cols() != n ||
      tf.translation.size() != n)
    throw std::invalid_argument("apply_transform: dimension mismatch");
  if (!(tf.dilation > 0.0))
    throw std::invalid_argument("apply_transform: dilation must be > 0");
  const Eigen::MatrixXd qq =
      tf.rotation.transpose() * tf.rotation - Eigen::MatrixXd::Identity(n, n);
  if (qq.cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("apply_transform: Q is not orthogonal");
  QuadratureMeasure out = measure;
  out.points = (tf.dilation * (tf.rotation * measure.points)).colwise() +
               tf.translation;
  if (measure.boundary_points.cols() > 0)
    out.boundary_points =
        (tf.dilation * (tf.rotation * measure.boundary_points)).colwise() +
        tf.translation;
  if (tf.dilation != 1.0)
    out.weights = measure.weights * std::pow(tf.dilation, measure.d);
  return out;
}

}  // namespace locscale
