#include "tfdg/frac_ops.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <complex>

#include "tfdg/errors.hpp"
#include "tfdg/gammafn.hpp"
#include "tfdg/quadrature.hpp"

namespace tfdg {

double rl_integral_step(const ScalarStepFunction& v, double gamma, double t) {
  require(gamma > 0.0, ErrorCode::domain, "rl_integral_step: gamma must be positive");
  require(t >= 0.0 && t <= v.grid.horizon(), ErrorCode::domain,
          "rl_integral_step: t outside [0, T]");
  double inv_g = 1.0 / gammafn(1.0 + gamma);
  auto pg = [gamma](double s) { return s > 0.0 ? std::pow(s, gamma) : 0.0; };
  double acc = 0.0;
  for (std::size_t j = 1; j <= v.grid.steps(); ++j) {
    if (v.grid.node(j - 1) >= t) break;
    acc += v.values[j - 1] * (pg(t - v.grid.node(j - 1)) - pg(t - v.grid.node(j)));
  }
  return acc * inv_g;
}

double rl_derivative_step(const ScalarStepFunction& v, double gamma, double t) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::domain,
          "rl_derivative_step: gamma must lie in (0, 1)");
  require(t > 0.0 && t <= v.grid.horizon(), ErrorCode::domain,
          "rl_derivative_step: t outside (0, T]");
  for (std::size_t i = 0; i + 1 < v.grid.nodes().size(); ++i)
    require(t != v.grid.node(i), ErrorCode::domain,
            "rl_derivative_step: value is singular at grid nodes");
  std::size_t m = v.grid.slab_of(t);
  double inv_g = 1.0 / gammafn(1.0 - gamma);
  double prev = 0.0;
  double acc = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    double d = v.values[i - 1] - prev;
    prev = v.values[i - 1];
    acc += d * std::pow(t - v.grid.node(i - 1), -gamma);
  }
  return acc * inv_g;
}

double rl_integral_step_right(const ScalarStepFunction& v, double gamma, double t) {
  require(gamma > 0.0, ErrorCode::domain, "rl_integral_step_right: gamma must be positive");
  require(t >= 0.0 && t <= v.grid.horizon(), ErrorCode::domain,
          "rl_integral_step_right: t outside [0, T]");
  double inv_g = 1.0 / gammafn(1.0 + gamma);
  auto pg = [gamma](double s) { return s > 0.0 ? std::pow(s, gamma) : 0.0; };
  double acc = 0.0;
  for (std::size_t j = v.grid.steps(); j >= 1; --j) {
    if (v.grid.node(j) <= t) break;
    acc += v.values[j - 1] * (pg(v.grid.node(j) - t) - pg(v.grid.node(j - 1) - t));
  }
  return acc * inv_g;
}

double rl_derivative_step_right(const ScalarStepFunction& v, double gamma, double t) {
  require(gamma > 0.0 && gamma < 1.0, ErrorCode::domain,
          "rl_derivative_step_right: gamma must lie in (0, 1)");
  require(t >= 0.0 && t < v.grid.horizon(), ErrorCode::domain,
          "rl_derivative_step_right: t outside [0, T)");
  for (std::size_t i = 1; i < v.grid.nodes().size(); ++i)
    require(t != v.grid.node(i), ErrorCode::domain,
            "rl_derivative_step_right: value is singular at grid nodes");
  double inv_g = 1.0 / gammafn(1.0 - gamma);
  double acc = 0.0;
  std::size_t J = v.grid.steps();
  for (std::size_t i = J; i >= 1; --i) {
    if (v.grid.node(i) <= t) break;
    double next = (i == J) ? 0.0 : v.values[i];
    double d = v.values[i - 1] - next;
    acc += d * std::pow(v.grid.node(i) - t, -gamma);
  }
  return acc * inv_g;
}

double frac_integral_quadrature(const std::function<double(double)>& f, double gamma, double t,
                                int points_per_panel, int grading_depth) {
  require(gamma > 0.0, ErrorCode::domain, "frac_integral_quadrature: gamma must be positive");
  require(t > 0.0, ErrorCode::domain, "frac_integral_quadrature: t must be positive");
  require(points_per_panel >= 2 && grading_depth >= 2, ErrorCode::invalid_argument,
          "frac_integral_quadrature: bad panel configuration");

  QuadRule gl = gauss_legendre(points_per_panel);
  double acc = 0.0;

  // panels graded toward s = 0: [0, t 2^-D], [t 2^-D, t 2^-D+1], ..., [t/4, t/2]
  double lo = 0.0;
  for (int k = grading_depth; k >= 1; --k) {
    double hi = t * std::ldexp(1.0, -k);
    QuadRule r = scaled_to(gl, lo, hi);
    for (std::size_t q = 0; q < r.size(); ++q)
      acc += r.w[q] * std::pow(t - r.x[q], gamma - 1.0) * f(r.x[q]);
    lo = hi;
  }
  // panels graded toward s = t, in the distance u = t - s so the kernel never
  // sees the cancellation of t - s; the panel at u = 0 gets the folded weight
  for (int k = 1; k < grading_depth; ++k) {
    double uhi = t * std::ldexp(1.0, -k);
    double ulo = t * std::ldexp(1.0, -k - 1);
    QuadRule r = scaled_to(gl, ulo, uhi);
    for (std::size_t q = 0; q < r.size(); ++q)
      acc += r.w[q] * std::pow(r.x[q], gamma - 1.0) * f(t - r.x[q]);
  }
  QuadRule last =
      gauss_jacobi_left(points_per_panel, gamma - 1.0, 0.0, t * std::ldexp(1.0, -grading_depth));
  for (std::size_t q = 0; q < last.size(); ++q) acc += last.w[q] * f(t - last.x[q]);

  return acc / gammafn(gamma);
}

double hgamma_seminorm(const ScalarStepFunction& v, double gamma, int oversample) {
  require(gamma > 0.0 && gamma < 0.5, ErrorCode::domain,
          "hgamma_seminorm: gamma must lie in (0, 1/2) for step functions");
  require(oversample >= 1, ErrorCode::invalid_argument, "hgamma_seminorm: oversample >= 1");

  const double T = v.grid.horizon();
  const double L = 8.0 * T;
  std::size_t target = static_cast<std::size_t>(oversample) * v.grid.steps() * 8;
  std::size_t M = 1;
  while (M < target) M <<= 1;

  std::vector<double> samples(M, 0.0);
  double dt = L / static_cast<double>(M);
  std::size_t slab = 1;
  for (std::size_t k = 0; k < M; ++k) {
    double tk = (static_cast<double>(k) + 0.5) * dt;
    if (tk >= T) break;
    while (tk > v.grid.node(slab)) ++slab;
    samples[k] = v.values[slab - 1];
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, samples);

  // |F(xi_m)|^2 with unitary continuous-transform scaling: F = dt X / sqrt(2 pi)
  const double dxi = 2.0 * M_PI / L;
  const double scale = dt * dt / (2.0 * M_PI);
  double acc = 0.0;
  for (std::size_t m = 1; m <= M / 2; ++m) {
    double xi = dxi * static_cast<double>(m);
    double mag2 = std::norm(spectrum[m]) * scale;
    double mult = (m == M / 2) ? 1.0 : 2.0;
    acc += mult * std::pow(xi, 2.0 * gamma) * mag2 * dxi;
  }
  return std::sqrt(acc);
}

}  // namespace tfdg
