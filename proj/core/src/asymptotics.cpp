#include "klkit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "klkit/errors.hpp"

namespace klkit {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(z) - 1 without cancellation for small |z|.
Complex expm1c(Complex z) {
  const double a = z.real();
  const double b = std::remainder(z.imag(), 2 * kPi);
  const double s = std::sin(0.5 * b);
  const Complex eib_m1(-2.0 * s * s, std::sin(b));
  return std::expm1(a) * std::exp(Complex(0.0, b)) + eib_m1;
}

}  // namespace

double expansion_phase(const EvaluationPoint& p) {
  return p.tau * (std::log(2.0 * p.tau / p.x) - 1.0) - 0.25 * kPi;
}

double leading_term(const EvaluationPoint& p) {
  return natural_scale(p.tau) * std::cos(expansion_phase(p));
}

Complex stirling_r_gamma(double tau) {
  if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("stirling_r: requires tau > 0");
  const Complex lg = complex_log_gamma(Complex(0.0, tau));
  const Complex stirling(0.5 * std::log(2 * kPi / tau) - 0.5 * kPi * tau,
                         tau * std::log(tau) - tau - 0.25 * kPi);
  return expm1c(lg - stirling);
}

Complex binet_bracket(Complex t) {
  if (std::abs(t) < 1.0) {
    // sum_k B_{2k} / (2k)! t^{2k-2}
    static constexpr double kCoeffs[] = {
        1.0 / 12, -1.0 / 720, 1.0 / 30240, -1.0 / 1209600, 1.0 / 47900160,
        -691.0 / 1307674368000.0, 1.0 / 74724249600.0, -3617.0 / 10670622842880000.0,
        43867.0 / 5109094217170944000.0, -174611.0 / 802857662698291200000.0};
    const Complex t2 = t * t;
    Complex sum = 0.0;
    for (int k = 9; k >= 0; --k) sum = sum * t2 + kCoeffs[k];
    return sum;
  }
  return (0.5 - 1.0 / t + 1.0 / expm1c(t)) / t;
}

Complex stirling_r_integral(double tau, const QuadratureConfig& cfg) {
  if (!(tau >= 0.5)) throw DomainError("stirling_r_integral: requires tau >= 0.5");
  cfg.validate();
  const Complex dir = std::exp(Complex(0.0, -0.25 * kPi));
  const double u_max = std::sqrt(2.0) * (cfg.truncation_log() + 2.0) / tau;
  auto f = [&](double u) {
    const Complex t = u * dir;
    return std::exp(Complex(0.0, -tau) * t) * binet_bracket(t) * dir;
  };
  auto r = integrate(f, 0.0, u_max, cfg.abs_tol, cfg.rel_tol, cfg.max_refinements, 8);
  if (!r.converged)
    throw AccuracyError("stirling_r_integral: quadrature did not converge", std::abs(r.value),
                        r.error);
  return expm1c(r.value);
}

double remainder_measured(const EvaluationPoint& p, unsigned /*N*/,
                          const QuadratureConfig& cfg) {
  const double scaled = k_itau_oracle_scaled(p, cfg).value;
  return scaled * std::sqrt(p.tau / (2 * kPi)) - std::cos(expansion_phase(p));
}

double remainder_explicit(const EvaluationPoint& p, unsigned N, const QuadratureConfig& cfg) {
  const Complex r = stirling_r_gamma(p.tau);
  const Complex s = keyformula_correction(p.x, p.tau, N, cfg).value;
  const Complex e = std::exp(Complex(0.0, expansion_phase(p)));
  return (e * (r + (1.0 + r) * s)).real();
}

double remainder_bound(double tau, double tau0, double X, unsigned N) {
  if (!(tau0 > 0) || !(tau >= tau0) || !(X > 0))
    throw DomainError("remainder_bound: requires tau >= tau0 > 0 and X > 0");
  if (N < 1 || N > 20) throw DomainError("remainder_bound: requires 1 <= N <= 20");
  const double e6 = std::exp(1.0 / (6.0 * tau0)) / 6.0;
  const double n = static_cast<double>(N);
  const double bracket_i =
      bessel_i_over_power(N, X) - std::exp(-n * std::numbers::ln2 - std::lgamma(n + 1.0));
  const double inner =
      std::exp(X * X / (4 * tau0)) + std::pow(X * X / (2 * tau0), n) * bracket_i;
  return (e6 + (tau0 + e6) * inner) / tau;
}

ExpansionReport expansion_report(const EvaluationPoint& p, unsigned N, double tau0, double X,
                                 const QuadratureConfig& cfg) {
  if (!(p.x <= X)) throw DomainError("expansion_report: requires x <= X");
  if (!(p.tau >= tau0)) throw DomainError("expansion_report: requires tau >= tau0");
  ExpansionReport rep;
  rep.point = p;
  rep.N = N;
  rep.tau0 = tau0;
  rep.X = X;
  const double scale = natural_scale(p.tau);
  rep.leading = leading_term(p);
  rep.remainder_measured = remainder_measured(p, N, cfg);
  rep.k_value = rep.leading + scale * rep.remainder_measured;
  rep.remainder_explicit = remainder_explicit(p, N, cfg);
  rep.bound_order = std::max(N, 1u);
  rep.remainder_bound = remainder_bound(p.tau, tau0, X, rep.bound_order);
  rep.within_bound =
      std::abs(rep.remainder_measured) <= rep.remainder_bound * (1.0 + 1e-9);
  return rep;
}

}  // namespace klkit
