#pragma once

// Gaussian kernel family K_t and every derivative kernel used by the
// multiscale transforms, evaluated in closed form as functions of the
// squared distance r2, the scale t and the intrinsic dimension d.
//
// All t-derivatives are generated from the log-derivative algebra
//   (t d/dt)^k K_t = t^{-d/2} Q_k(u) e^{-u},   u = pi*r2/t,
// where the Q_k are monic degree-k polynomials obeying
//   Q_{k+1}(u) = (u - d/2) Q_k(u) - u Q_k'(u),  Q_0 = 1.
// Plain t-derivatives come from the change of basis
//   t^k d^k/dt^k = sum_j s(k,j) (t d/dt)^j
// with s(k,j) the signed Stirling numbers of the first kind.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace locscale {

struct KernelParams {
  int d = 1;               // intrinsic dimension of the plane/surface/signal
  double a = 2.0;          // logarithmic base, tau = log_a(t)
  double eps_trunc = 1e-12;  // tail threshold defining the quadrature radius

  void validate() const {
    if (d < 1) throw std::invalid_argument("KernelParams: d must be >= 1");
    if (!(a > 1.0)) throw std::invalid_argument("KernelParams: a must be > 1");
    if (!(eps_trunc > 0.0 && eps_trunc < 1.0))
      throw std::invalid_argument("KernelParams: eps_trunc must be in (0,1)");
  }

  double log_base() const { return std::log(a); }

  // Radius beyond which exp(-pi r^2 / t) < eps_trunc.
  double r_max(double t) const {
    return std::sqrt(t * std::log(1.0 / eps_trunc) / M_PI);
  }

  // Truncation radius used by all convolutions; the 1.5 margin covers the
  // polynomial factors of the derivative kernels.
  double conv_radius(double t) const { return 1.5 * r_max(t); }
};

struct LogDerivPolynomial {
  int k = 0;
  Eigen::VectorXd coeffs;  // ascending powers of u, size k+1, monic

  double operator()(double u) const {
    double v = 0.0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
      v = v * u + coeffs[i];
    return v;
  }
};

// Q_k for (t d/dt)^k K_t = t^{-d/2} Q_k(u) e^{-u}.
inline LogDerivPolynomial log_deriv_polynomial(int k, const KernelParams& params) {
  params.validate();
  if (k < 0) throw std::invalid_argument("log_deriv_polynomial: k must be >= 0");
  const double half_d = 0.5 * params.d;
  Eigen::VectorXd q = Eigen::VectorXd::Zero(1);
  q[0] = 1.0;  // Q_0 = 1
  for (int step = 0; step < k; ++step) {
    const int n = static_cast<int>(q.size()) - 1;  // current degree
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n + 2);
    for (int i = 0; i <= n; ++i) {
      next[i + 1] += q[i];            // u * Q
      next[i] -= half_d * q[i];       // -(d/2) * Q
      if (i >= 1) next[i] -= i * q[i];  // -u * Q' drops one power then lifts
    }
    q = next;
  }
  return {k, q};
}

inline double heat_kernel(double r2, double t, const KernelParams& params) {
  params.validate();
  if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be > 0");
  if (r2 < 0.0) throw std::domain_error("heat_kernel: r2 must be >= 0");
  return std::pow(t, -0.5 * params.d) * std::exp(-M_PI * r2 / t);
}

// Kernel of the j-th tau-derivative of the transform S:
//   (d/dtau)^j S = [(ln a)^j (t d/dt)^{j+1} K_t] * measure.
// j = 0 is psi_t itself; j = 2 is its second log-scale derivative up to the
// (ln a)^2 factor.
inline double wavelet_deriv_value(int j, double r2, double t,
                                  const KernelParams& params) {
  params.validate();
  if (j < 0) throw std::invalid_argument("wavelet_deriv_value: j must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("wavelet_deriv_value: t must be > 0");
  const LogDerivPolynomial q = log_deriv_polynomial(j + 1, params);
  const double u = M_PI * r2 / t;
  return std::pow(params.log_base(), j) * std::pow(t, -0.5 * params.d) * q(u) *
         std::exp(-u);
}

// Signed Stirling numbers of the first kind, row k: s(k,0..k).
inline std::vector<double> stirling_first_row(int k) {
  if (k < 0) throw std::invalid_argument("stirling_first_row: k must be >= 0");
  std::vector<double> row = {1.0};
  for (int m = 0; m < k; ++m) {
    std::vector<double> next(m + 2, 0.0);
    for (int j = 0; j <= m + 1; ++j) {
      if (j >= 1) next[j] += row[j - 1];
      if (j <= m) next[j] -= m * row[j];
    }
    row = std::move(next);
  }
  return row;
}

// Polynomial R with t^k d^k/dt^k K_t = t^{-d/2} R(u) e^{-u}:
//   R = sum_j s(k,j) Q_j   (shift = 0), or, for the wavelet psi_t = (t d/dt)K_t,
//   R = sum_j s(k,j) Q_{j+1}  (shift = 1).
inline LogDerivPolynomial t_deriv_polynomial(int k, const KernelParams& params,
                                             int shift = 0) {
  params.validate();
  if (k < 0) throw std::invalid_argument("t_deriv_polynomial: k must be >= 0");
  const std::vector<double> s = stirling_first_row(k);
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(k + shift + 1);
  for (int j = 0; j <= k; ++j) {
    if (s[j] == 0.0) continue;
    const LogDerivPolynomial q = log_deriv_polynomial(j + shift, params);
    coeffs.head(q.coeffs.size()) += s[j] * q.coeffs;
  }
  return {k + shift, coeffs};
}

// t^k d^k/dt^k K_t at squared distance r2.
inline double t_deriv_kernel_value(int k, double r2, double t,
                                   const KernelParams& params) {
  if (!(t > 0.0)) throw std::domain_error("t_deriv_kernel_value: t must be > 0");
  const LogDerivPolynomial poly = t_deriv_polynomial(k, params, 0);
  const double u = M_PI * r2 / t;
  return std::pow(t, -0.5 * params.d) * poly(u) * std::exp(-u);
}

// t^k d^k/dt^k psi_t, with psi_t = (t d/dt) K_t; feeds the derivative-bound
// probe on surfaces.
inline double t_deriv_wavelet_value(int k, double r2, double t,
                                    const KernelParams& params) {
  if (!(t > 0.0)) throw std::domain_error("t_deriv_wavelet_value: t must be > 0");
  const LogDerivPolynomial poly = t_deriv_polynomial(k, params, 1);
  const double u = M_PI * r2 / t;
  return std::pow(t, -0.5 * params.d) * poly(u) * std::exp(-u);
}

// psi_{t,k}(x) = t^{-d/2} u^k e^{-u}; the unpinned constant c_d is fixed to 1.
inline double psi_tk_value(int k, double r2, double t,
                           const KernelParams& params) {
  params.validate();
  if (k < 0) throw std::invalid_argument("psi_tk_value: k must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("psi_tk_value: t must be > 0");
  const double u = M_PI * r2 / t;
  return std::pow(t, -0.5 * params.d) * std::pow(u, k) * std::exp(-u);
}

// Fast evaluator for one scale: shares u and e^{-u} across the S, dS, d2S
// kernels inside convolution loops.
class WaveletStackKernel {
 public:
  WaveletStackKernel(const KernelParams& params, double t, int jmax)
      : t_(t), jmax_(jmax), d_half_(0.5 * params.d) {
    params.validate();
    if (!(t > 0.0)) throw std::domain_error("WaveletStackKernel: t must be > 0");
    if (jmax < 0 || jmax > 2)
      throw std::invalid_argument("WaveletStackKernel: jmax must be in {0,1,2}");
    pre_ = std::pow(t, -d_half_);
    const double lna = params.log_base();
    double f = 1.0;
    for (int j = 0; j <= jmax; ++j) {
      polys_[j] = log_deriv_polynomial(j + 1, params);
      lnafac_[j] = f;
      f *= lna;
    }
  }

  // vals[j] = kernel of (d/dtau)^j S at squared distance r2.
  void eval(double r2, double* vals) const {
    const double u = M_PI * r2 / t_;
    const double e = pre_ * std::exp(-u);
    for (int j = 0; j <= jmax_; ++j) vals[j] = lnafac_[j] * polys_[j](u) * e;
  }

  int jmax() const { return jmax_; }

 private:
  double t_;
  int jmax_;
  double d_half_;
  double pre_;
  LogDerivPolynomial polys_[3];
  double lnafac_[3];
};

}  // namespace locscale
