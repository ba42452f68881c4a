#include "klkit/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "klkit/errors.hpp"

namespace klkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

EvaluationPoint::EvaluationPoint(double x_, double tau_) : x(x_), tau(tau_) {
  if (!std::isfinite(x) || !std::isfinite(tau) || !(x > 0) || !(tau > 0))
    throw DomainError("evaluation point requires finite x > 0 and tau > 0");
}

OrderSpec::OrderSpec(double mu_, double tau_) : mu(mu_), tau(tau_) {
  if (!std::isfinite(mu) || !std::isfinite(tau) || !(tau > 0))
    throw DomainError("order requires finite mu and tau > 0");
}

double log_natural_scale(double tau) {
  return 0.5 * std::log(2 * kPi / tau) - 0.5 * kPi * tau;
}

double natural_scale(double tau) { return std::exp(log_natural_scale(tau)); }

double oracle_contour_angle(double x, double tau) {
  const double cap = 0.5 * kPi - 1.0 / (tau + 1.0);
  const double saddle = tau < x ? std::asin(tau / x) : 0.5 * kPi;
  return std::max(0.0, std::min(saddle, cap));
}

namespace {

struct Contour {
  double theta;
  double cos_theta;
  double sin_theta;
  double t_max;
  int panels;
};

// Envelope of exp(-x cos(theta) cosh t + |mu| t); find where it has dropped
// by `drop` in log below its maximum.
Contour make_contour(double x, double tau, double mu_abs, double drop,
                     int max_panels) {
  Contour c;
  c.theta = oracle_contour_angle(x, tau);
  c.cos_theta = std::cos(c.theta);
  c.sin_theta = std::sin(c.theta);
  const double a = x * c.cos_theta;
  auto h = [&](double t) { return a * std::cosh(t) - mu_abs * t; };
  const double t_peak = std::asinh(mu_abs / a);
  const double h_peak = h(t_peak);
  double lo = t_peak;
  double hi = t_peak + 1.0;
  while (h(hi) - h_peak < drop) {
    lo = hi;
    hi = 2.0 * hi + 1.0;
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) - h_peak < drop ? lo : hi) = mid;
  }
  c.t_max = hi;
  // Total phase variation bounds the number of oscillations on [0, t_max].
  const double variation = tau * c.t_max + x * c.sin_theta * std::sinh(c.t_max);
  const double periods = variation / (2 * kPi);
  c.panels = static_cast<int>(std::clamp(std::ceil(periods) + 4.0, 4.0,
                                         0.5 * max_panels));
  return c;
}

constexpr double kSafetyDrop = 2.0;

}  // namespace

KernelEstimate k_itau_oracle_scaled(const EvaluationPoint& p,
                                    const QuadratureConfig& cfg) {
  cfg.validate();
  const double x = p.x;
  const double tau = p.tau;
  const Contour c = make_contour(x, tau, 0.0, cfg.truncation_log() + kSafetyDrop,
                                 cfg.max_refinements);
  const double lift = tau * (0.5 * kPi - c.theta);
  auto f = [&](double t) {
    return std::exp(-x * c.cos_theta * std::cosh(t) + lift) *
           std::cos(tau * t - x * c.sin_theta * std::sinh(t));
  };
  const double log_peak = -x * c.cos_theta + lift;
  const double scale =
      std::min(0.5 * std::log(2 * kPi / tau), log_peak);
  const double abs_tol = cfg.abs_tol * std::exp(scale);
  auto r = integrate(f, 0.0, c.t_max, abs_tol, cfg.rel_tol, cfg.max_refinements,
                     c.panels);
  if (!r.converged)
    throw AccuracyError("k_itau_oracle: quadrature did not converge at x=" +
                            std::to_string(x) + ", tau=" + std::to_string(tau),
                        r.value, r.error);
  return {r.value, r.error};
}

KernelEstimate k_itau_oracle_estimate(const EvaluationPoint& p,
                                      const QuadratureConfig& cfg) {
  const auto s = k_itau_oracle_scaled(p, cfg);
  const double unscale = std::exp(-0.5 * kPi * p.tau);
  return {s.value * unscale, s.error * unscale};
}

double k_itau_oracle(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  return k_itau_oracle_estimate(p, cfg).value;
}

ComplexEstimate k_complex_order_estimate(const OrderSpec& o, double x,
                                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(x > 0) || !std::isfinite(x))
    throw DomainError("k_complex_order: x must be positive");
  const double mu = o.mu;
  const double tau = o.tau;
  const Contour c = make_contour(x, tau, std::abs(mu),
                                 cfg.truncation_log() + kSafetyDrop,
                                 cfg.max_refinements);
  const double a = x * c.cos_theta;
  const double t_peak = std::asinh(std::abs(mu) / a);
  // Log of the largest integrand magnitude; factored out so the integrand
  // stays O(1).
  const double log_peak =
      -a * std::cosh(t_peak) + std::abs(mu) * t_peak - tau * c.theta;
  auto f = [&](double t) {
    const double ch = std::cosh(t);
    const double sh = std::sinh(t);
    const double base = -a * ch - tau * c.theta - log_peak;
    const double im_common = mu * c.theta;
    const double im_osc = tau * t - x * sh * c.sin_theta;
    const Complex plus = std::exp(Complex(base + mu * t, im_common + im_osc));
    const Complex minus = std::exp(Complex(base - mu * t, im_common - im_osc));
    return 0.5 * (plus + minus);
  };
  auto r = integrate(f, 0.0, c.t_max, cfg.abs_tol, cfg.rel_tol,
                     cfg.max_refinements, c.panels);
  const double lift = std::exp(log_peak);
  if (!r.converged)
    throw AccuracyError("k_complex_order: quadrature did not converge",
                        std::abs(r.value) * lift, r.error * lift);
  return {r.value * lift, r.error * lift};
}

Complex k_complex_order(const OrderSpec& o, double x,
                        const QuadratureConfig& cfg) {
  return k_complex_order_estimate(o, x, cfg).value;
}

Complex gamma_phase_factor(double x, double tau) {
  return std::exp(complex_log_gamma(Complex(0.0, tau)) -
                  Complex(0.0, tau * std::log(0.5 * x)));
}

ComplexEstimate keyformula_remainder_integral(double x, double tau, unsigned N,
                                              const QuadratureConfig& cfg) {
  cfg.validate();
  const unsigned order = N + 1;
  const double damping = static_cast<double>(order);
  const double g0 = bessel_i_over_power(order, 0.0);
  const double gx = bessel_i_over_power(order, x);
  const double v_max =
      (cfg.truncation_log() + kSafetyDrop + std::log(gx / g0)) / damping;
  auto f = [&](double v) {
    const double y = x * std::sqrt(-std::expm1(-v));
    const double g = bessel_i_over_power(order, y);
    return g * std::exp(Complex(-damping * v, tau * v));
  };
  // Prefactor x^{2N+2} / (2^{N+1} (1 - i tau)_N).
  const Complex prefactor =
      std::exp((2.0 * N + 2.0) * std::log(x) - (N + 1.0) * std::numbers::ln2) /
      pochhammer(Complex(1.0, -tau), N);
  const double pre_abs = std::abs(prefactor);
  const int panels = static_cast<int>(
      std::clamp(std::ceil(tau * v_max / (2 * kPi)) + 2.0, 2.0,
                 0.5 * cfg.max_refinements));
  auto r = integrate(f, 0.0, v_max, cfg.abs_tol / pre_abs, cfg.rel_tol,
                     cfg.max_refinements, panels);
  if (!r.converged)
    throw AccuracyError("keyformula remainder integral did not converge",
                        std::abs(r.value) * pre_abs, r.error * pre_abs);
  return {prefactor * r.value, pre_abs * r.error};
}

ComplexEstimate keyformula_correction(double x, double tau, unsigned N,
                                      const QuadratureConfig& cfg) {
  if (N > 20) throw DomainError("keyformula: N must not exceed 20");
  const Complex one_minus(1.0, -tau);
  const double q2 = 0.25 * x * x;
  Complex term = 1.0;
  Complex sum = 0.0;
  double abs_sum = 1.0;
  for (unsigned m = 1; m <= N; ++m) {
    term *= q2 / (static_cast<double>(m) * (one_minus + (m - 1.0)));
    sum += term;
    abs_sum += std::abs(term);
  }
  const auto rem = keyformula_remainder_integral(x, tau, N, cfg);
  sum += rem.value;
  abs_sum += std::abs(rem.value);
  return {sum, rem.error + 4 * kEps * abs_sum};
}

KernelEstimate k_itau_keyformula_estimate(const EvaluationPoint& p, unsigned N,
                                          const QuadratureConfig& cfg) {
  const Complex phase = gamma_phase_factor(p.x, p.tau);
  const auto s = keyformula_correction(p.x, p.tau, N, cfg);
  const double value = (phase * (1.0 + s.value)).real();
  const double error = std::abs(phase) * (s.error + 4 * kEps);
  return {value, error};
}

double k_itau_keyformula(const EvaluationPoint& p, unsigned N,
                         const QuadratureConfig& cfg) {
  return k_itau_keyformula_estimate(p, N, cfg).value;
}

namespace {

struct SeriesSum {
  Complex sum;
  double abs_sum;
};

// I_nu(x) by its power series, with the sum of term magnitudes.
SeriesSum i_series_tracked(Complex nu, double x) {
  const double half = 0.5 * x;
  Complex term = std::exp(nu * std::log(half) - complex_log_gamma(nu + 1.0));
  SeriesSum s{term, std::abs(term)};
  const double q2 = half * half;
  for (int k = 0; k < 10000; ++k) {
    const Complex ratio = q2 / ((k + 1.0) * (nu + (k + 1.0)));
    term *= ratio;
    s.sum += term;
    s.abs_sum += std::abs(term);
    if (std::abs(ratio) < 1.0 && std::abs(term) <= 0.25 * kEps * s.abs_sum) break;
  }
  return s;
}

}  // namespace

KernelEstimate k_itau_defseries_estimate(const EvaluationPoint& p) {
  const double tau = p.tau;
  const auto minus = i_series_tracked(Complex(0.0, -tau), p.x);
  const auto plus = i_series_tracked(Complex(0.0, tau), p.x);
  // pi / (2 i sinh(pi tau))
  const Complex prefactor = Complex(0.0, -0.5 * kPi / std::sinh(kPi * tau));
  const Complex assembled = prefactor * (minus.sum - plus.sum);
  const double error =
      std::abs(prefactor) * 8 * kEps * (minus.abs_sum + plus.abs_sum);
  const double scale = natural_scale(tau);
  if (error > 1e-10 * scale)
    throw AccuracyError("k_itau_defseries: cancellation exceeds budget",
                        assembled.real(), error);
  if (std::abs(assembled.imag()) > 1e-10 * scale)
    throw AccuracyError("k_itau_defseries: imaginary residual exceeds budget",
                        assembled.real(), std::abs(assembled.imag()));
  return {assembled.real(), error};
}

double k_itau_defseries(const EvaluationPoint& p) {
  return k_itau_defseries_estimate(p).value;
}

namespace {

// exp(pi tau/2) Re[Gamma(i tau) (x/2)^{-i tau} sum_m (x/2)^{2m} / (m! (1 - i tau)_m)].
// The sum of term magnitudes is at most exp(x^2 / (4 tau)) times the leading
// term, which bounds the cancellation.
double k_itau_power_series_scaled(double x, double tau) {
  const Complex one_minus(1.0, -tau);
  const double q2 = 0.25 * x * x;
  Complex term = 1.0;
  Complex sum = 1.0;
  double abs_sum = 1.0;
  for (int m = 1; m < 10000; ++m) {
    term *= q2 / (static_cast<double>(m) * (one_minus + (m - 1.0)));
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) <= 0.25 * kEps * abs_sum && q2 < m) break;
  }
  const Complex phase = std::exp(complex_log_gamma(Complex(0.0, tau)) + 0.5 * kPi * tau -
                                 Complex(0.0, tau * std::log(0.5 * x)));
  return (phase * sum).real();
}

bool power_series_preferred(const EvaluationPoint& p) {
  return p.x <= 2.0 || p.x * p.x <= 8.0 * p.tau;
}

}  // namespace

double k_itau_scaled(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  if (power_series_preferred(p)) return k_itau_power_series_scaled(p.x, p.tau);
  return k_itau_oracle_scaled(p, cfg).value;
}

double k_itau(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  if (power_series_preferred(p))
    return k_itau_power_series_scaled(p.x, p.tau) * std::exp(-0.5 * kPi * p.tau);
  return k_itau_oracle(p, cfg);
}

}  // namespace klkit
