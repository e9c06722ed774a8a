#pragma once

// Jones / David-Semmes flatness quantities: beta_p(x,t) over balls, the
// dyadic beta(Q) via minimal-width strips, and the traveling-salesman sum.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "locscale/geometry.hpp"

namespace locscale {

struct Plane {
  Eigen::VectorXd base;
  Eigen::MatrixXd basis;  // n x d, orthonormal columns

  double distance(const Eigen::VectorXd& y) const {
    const Eigen::VectorXd v = y - base;
    return (v - basis * (basis.transpose() * v)).norm();
  }
};

// Weighted total-least-squares d-plane: weighted centroid plus the top-d
// principal directions of the weighted second-moment matrix. Eigenvector
// signs are fixed so the first nonzero coordinate is positive.
inline Plane best_plane(const Eigen::MatrixXd& points,
                        const Eigen::VectorXd& weights, int d) {
  const long m = points.cols();
  const int n = static_cast<int>(points.rows());
  if (m < d + 1)
    throw std::invalid_argument("best_plane: need at least d+1 points");
  if (weights.size() != m || weights.minCoeff() <= 0.0)
    throw std::invalid_argument("best_plane: weights must be positive");
  if (d < 1 || d >= n) throw std::invalid_argument("best_plane: need 1 <= d < n");
  const double wsum = weights.sum();
  const Eigen::VectorXd centroid = (points * weights) / wsum;
  const Eigen::MatrixXd centered = points.colwise() - centroid;
  const Eigen::MatrixXd moment =
      centered * weights.asDiagonal() * centered.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(moment);
  Plane plane;
  plane.base = centroid;
  plane.basis.resize(n, d);
  // eigenvalues ascending; take the largest d, in descending order
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd v = es.eigenvectors().col(n - 1 - j);
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-12) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }
    plane.basis.col(j) = v;
  }
  return plane;
}

enum class BetaNorm {
  scale_power,  // t^{-d} int (dist/t)^p, the beta_1-style normalization
  ball_mass     // mu(B(x,t))^{-1} int (dist/t)^p, the beta_p normalization
};

namespace detail {

inline double beta_objective(const Eigen::MatrixXd& pts,
                             const Eigen::VectorXd& w, const Plane& plane,
                             double t, int d, double p, BetaNorm norm) {
  const double mass = w.sum();
  if (std::isinf(p)) {
    double sup = 0.0;
    for (long i = 0; i < pts.cols(); ++i)
      sup = std::max(sup, plane.distance(pts.col(i)) / t);
    return sup;
  }
  double acc = 0.0;
  for (long i = 0; i < pts.cols(); ++i)
    acc += w[i] * std::pow(plane.distance(pts.col(i)) / t, p);
  const double scale =
      (norm == BetaNorm::scale_power) ? std::pow(t, -d) : 1.0 / mass;
  return std::pow(scale * acc, 1.0 / p);
}

}  // namespace detail

// beta_p over the open ball B(x,t); p in {1, 2, inf} (pass p = infinity for
// the sup version). p=2 is exact (total least squares); p=1 and p=inf refine
// iteratively from the p=2 plane and keep the best objective seen, so the
// power-mean ordering beta_1 <= beta_2 <= beta_inf is preserved.
// Returns nullopt when the ball holds fewer than d+1 points.
inline std::optional<double> beta_p(const QuadratureMeasure& measure,
                                    const Eigen::VectorXd& x, double t,
                                    double p, int d,
                                    BetaNorm norm = BetaNorm::ball_mass) {
  if (!(t > 0.0)) throw std::invalid_argument("beta_p: t must be > 0");
  if (!(p == 1.0 || p == 2.0 || std::isinf(p)))
    throw std::invalid_argument("beta_p: p must be 1, 2 or inf");
  std::vector<long> in_ball;
  for (long i = 0; i < measure.size(); ++i)
    if ((measure.points.col(i) - x).norm() < t) in_ball.push_back(i);
  if (static_cast<long>(in_ball.size()) < d + 1) return std::nullopt;
  Eigen::MatrixXd pts(measure.ambient_dim(), static_cast<long>(in_ball.size()));
  Eigen::VectorXd w(static_cast<long>(in_ball.size()));
  for (std::size_t i = 0; i < in_ball.size(); ++i) {
    pts.col(static_cast<long>(i)) = measure.points.col(in_ball[i]);
    w[static_cast<long>(i)] = measure.weights[in_ball[i]];
  }

  Plane plane = best_plane(pts, w, d);
  double best = detail::beta_objective(pts, w, plane, t, d, p, norm);
  if (p == 2.0) return best;

  // Reweighted refinement: p=1 uses 1/dist weights, p=inf pushes toward the
  // Chebyshev plane with high-power weights.
  Eigen::VectorXd rw = w;
  const double tiny = 1e-14 * t;
  for (int iter = 0; iter < 100; ++iter) {
    for (long i = 0; i < pts.cols(); ++i) {
      const double dist = std::max(plane.distance(pts.col(i)), tiny);
      rw[i] = std::isinf(p) ? w[i] * std::pow(dist, 6.0) : w[i] / dist;
    }
    plane = best_plane(pts, rw, d);
    const double obj = detail::beta_objective(pts, w, plane, t, d, p, norm);
    const bool improved = obj < best * (1.0 - 1e-10);
    best = std::min(best, obj);
    if (!improved) break;
  }
  return best;
}

struct DyadicSquare {
  int level = 0;  // side l(Q) = 2^{-level}
  long j = 0, k = 0;

  double side() const { return std::pow(2.0, -level); }
  Eigen::Vector2d center() const {
    const double l = side();
    return {(j + 0.5) * l, (k + 0.5) * l};
  }
  bool in_3q(const Eigen::Vector2d& p) const {
    const Eigen::Vector2d c = center();
    const double half = 1.5 * side();
    return std::abs(p.x() - c.x()) <= half && std::abs(p.y() - c.y()) <= half;
  }
};

namespace detail {

// Andrew monotone chain; returns hull in counterclockwise order.
inline std::vector<Eigen::Vector2d> convex_hull(
    std::vector<Eigen::Vector2d> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                  const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Eigen::Vector2d> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Minimal slab width of a point set; the optimal direction is parallel to a
// hull edge. Returns {width, unit direction of the slab axis}.
inline std::pair<double, Eigen::Vector2d> min_width(
    const std::vector<Eigen::Vector2d>& pts) {
  const auto hull = convex_hull(pts);
  if (hull.size() <= 2) {
    Eigen::Vector2d dir(1.0, 0.0);
    if (hull.size() == 2 && (hull[1] - hull[0]).norm() > 0.0)
      dir = (hull[1] - hull[0]).normalized();
    return {0.0, dir};
  }
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector2d best_dir(1.0, 0.0);
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Eigen::Vector2d e = hull[(i + 1) % hull.size()] - hull[i];
    const double len = e.norm();
    if (len == 0.0) continue;
    const Eigen::Vector2d normal(-e.y() / len, e.x() / len);
    double w = 0.0;
    for (const auto& p : hull) w = std::max(w, std::abs(normal.dot(p - hull[i])));
    if (w < best) {
      best = w;
      best_dir = e / len;
    }
  }
  return {best, best_dir};
}

}  // namespace detail

struct DyadicBeta {
  double beta = 0.0;
  Eigen::Vector2d strip_direction{1.0, 0.0};
  long points_in_3q = 0;
};

// beta(Q) = w(Q) / l(Q), with w(Q) the minimal width of a strip containing
// K cap 3Q.
inline DyadicBeta dyadic_beta(const std::vector<Eigen::Vector2d>& pointset,
                              const DyadicSquare& q) {
  DyadicBeta out;
  std::vector<Eigen::Vector2d> inside;
  for (const auto& p : pointset)
    if (q.in_3q(p)) inside.push_back(p);
  out.points_in_3q = static_cast<long>(inside.size());
  if (inside.size() <= 1) return out;
  const auto [w, dir] = detail::min_width(inside);
  out.beta = w / q.side();
  out.strip_direction = dir;
  return out;
}

// sum over dyadic squares at levels [level_min, level_max] whose 3Q meets the
// bounding box of the set, of beta(Q)^2 l(Q).
inline double tsp_sum(const std::vector<Eigen::Vector2d>& pointset,
                      int level_min, int level_max) {
  if (level_min > level_max)
    throw std::invalid_argument("tsp_sum: level_min must be <= level_max");
  if (pointset.empty()) return 0.0;
  double xmin = pointset[0].x(), xmax = xmin, ymin = pointset[0].y(), ymax = ymin;
  for (const auto& p : pointset) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  double acc = 0.0;
  for (int level = level_min; level <= level_max; ++level) {
    const double l = std::pow(2.0, -level);
    const long j0 = static_cast<long>(std::floor(xmin / l)) - 1;
    const long j1 = static_cast<long>(std::floor(xmax / l)) + 1;
    const long k0 = static_cast<long>(std::floor(ymin / l)) - 1;
    const long k1 = static_cast<long>(std::floor(ymax / l)) + 1;
    for (long j = j0; j <= j1; ++j)
      for (long k = k0; k <= k1; ++k) {
        const DyadicBeta b = dyadic_beta(pointset, DyadicSquare{level, j, k});
        acc += b.beta * b.beta * l;
      }
  }
  return acc;
}

}  // namespace locscale
