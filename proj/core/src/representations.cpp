#include "klkit/representations.hpp"

#include <cmath>
#include <numbers>

#include "klkit/errors.hpp"

namespace klkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTailBlocks = 40;

struct Named {
  Representation r;
  const char* name;
};

constexpr Named kNames[] = {
    {Representation::SquaredSine, "SQUARED_SINE"},
    {Representation::BesselJOrderShift, "BESSEL_J_ORDER_SHIFT"},
    {Representation::SquaredJ1Cosine, "SQUARED_J1_COSINE"},
    {Representation::SquaredDoubling, "SQUARED_DOUBLING"},
};

double tail_start(double x, double tau) { return std::max(20.0, 20.0 * tau) / x; }

void require_finite(const SeriesLimit& lim, const char* what) {
  if (!std::isfinite(lim.value) || !std::isfinite(lim.error))
    throw AccuracyError(std::string(what) + ": tail extrapolation failed", lim.value,
                        lim.error);
}

RepresentationCheck finish(Complex lhs, Complex rhs, double rhs_error) {
  const double residual = std::abs(lhs - rhs) / (std::abs(lhs) + 1e-300);
  return {lhs, rhs, residual, rhs_error};
}

RepresentationCheck squared_sine(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  const double x = p.x, tau = p.tau;
  const double k = k_itau_oracle(p, cfg);
  auto f = [&](double y) {
    return bessel_j(0.0, 2 * x * y) * std::sin(2 * tau * std::asinh(y)) /
           std::sqrt(1.0 + y * y);
  };
  const auto lim = oscillatory_integral(f, tail_start(x, tau), 0.5 * kPi / x, kTailBlocks,
                                        cfg.abs_tol, cfg.rel_tol, cfg.max_refinements,
                                        16 + static_cast<int>(4 * tau));
  const double pre = kPi / std::sinh(kPi * tau);
  require_finite(lim, "squared-sine representation");
  return finish(k * k, pre * lim.value, pre * lim.error);
}

RepresentationCheck squared_j1_cosine(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  const double x = p.x, tau = p.tau;
  const double k = k_itau_oracle(p, cfg);
  auto f = [&](double y) {
    return bessel_j(1.0, 2 * x * y) * std::cos(2 * tau * std::asinh(y));
  };
  const auto lim = oscillatory_integral(f, tail_start(x, tau), 0.5 * kPi / x, kTailBlocks,
                                        cfg.abs_tol, cfg.rel_tol, cfg.max_refinements,
                                        16 + static_cast<int>(4 * tau));
  require_finite(lim, "J1-cosine representation");
  const double lhs = 2 * tau / kPi * std::sinh(kPi * tau) * k * k;
  return finish(lhs, 1.0 - 2 * x * lim.value, 2 * x * lim.error);
}

RepresentationCheck bessel_j_order_shift(const EvaluationPoint& p, const QuadratureConfig& cfg,
                                         const RepresentationParams& prm) {
  const double x = p.x, tau = p.tau, nu = prm.nu;
  if (!(nu > -1.0) || !(nu < 2 * prm.rho_re - 0.5))
    throw DomainError("order-shift representation requires -1 < nu < 2 Re(rho) - 1/2");
  const Complex rho(prm.rho_re, tau);
  const double mu = nu - prm.rho_re + 1.0;
  if (std::abs(mu) > 3.0)
    throw DomainError("order-shift representation requires |nu - Re(rho) + 1| <= 3");
  // Order nu - rho + 1 = mu - i tau, the conjugate of K_{mu + i tau}.
  const Complex lhs = std::conj(k_complex_order(OrderSpec(mu, tau), x, cfg));
  auto g = [&](double y) {
    const Complex w = std::exp(-rho * std::log1p(y * y));
    return std::pow(y, nu + 1.0) * bessel_j(nu, x * y) * w;
  };
  const double start = tail_start(x, tau);
  const double block = kPi / x;
  const int panels = 16 + static_cast<int>(4 * tau);
  const auto re = oscillatory_integral([&](double y) { return g(y).real(); }, start, block,
                                       kTailBlocks, cfg.abs_tol, cfg.rel_tol,
                                       cfg.max_refinements, panels);
  const auto im = oscillatory_integral([&](double y) { return g(y).imag(); }, start, block,
                                       kTailBlocks, cfg.abs_tol, cfg.rel_tol,
                                       cfg.max_refinements, panels);
  require_finite(re, "order-shift representation");
  require_finite(im, "order-shift representation");
  const Complex pre = std::exp((rho - 1.0) * std::log(2.0 / x) + complex_log_gamma(rho));
  return finish(lhs, pre * Complex(re.value, im.value),
                std::abs(pre) * (re.error + im.error));
}

RepresentationCheck squared_doubling(const EvaluationPoint& p, const QuadratureConfig& cfg) {
  const double x = p.x, tau = p.tau;
  const double k = k_itau_oracle(p, cfg);
  // y = cosh u removes the endpoint singularity.
  const double u_max = std::acosh(1.0 + (cfg.truncation_log() + 2.0) / (2 * x));
  auto f = [&](double u) {
    return k_itau(EvaluationPoint(2 * x * std::cosh(u), 2 * tau), cfg);
  };
  const double scale = natural_scale(tau) * natural_scale(tau);
  auto r = integrate(f, 0.0, u_max, cfg.abs_tol * scale, 1e-11, cfg.max_refinements,
                     4 + static_cast<int>(2 * tau));
  if (!r.converged)
    throw AccuracyError("doubling representation: quadrature did not converge", 2 * r.value,
                        2 * r.error);
  return finish(k * k, 2 * r.value, 2 * r.error);
}

}  // namespace

const std::vector<Representation>& all_representations() {
  static const std::vector<Representation> v = {
      Representation::SquaredSine, Representation::BesselJOrderShift,
      Representation::SquaredJ1Cosine, Representation::SquaredDoubling};
  return v;
}

std::string to_string(Representation r) {
  for (const auto& n : kNames)
    if (n.r == r) return n.name;
  return "UNKNOWN";
}

std::optional<Representation> representation_from_string(const std::string& name) {
  for (const auto& n : kNames)
    if (name == n.name) return n.r;
  return std::nullopt;
}

RepresentationCheck check_representation(Representation r, const EvaluationPoint& p,
                                         const QuadratureConfig& cfg,
                                         const RepresentationParams& params) {
  cfg.validate();
  switch (r) {
    case Representation::SquaredSine: return squared_sine(p, cfg);
    case Representation::BesselJOrderShift: return bessel_j_order_shift(p, cfg, params);
    case Representation::SquaredJ1Cosine: return squared_j1_cosine(p, cfg);
    case Representation::SquaredDoubling: return squared_doubling(p, cfg);
  }
  throw DomainError("unknown representation");
}

double verify_representation(Representation r, const EvaluationPoint& p,
                             const QuadratureConfig& cfg, const RepresentationParams& params) {
  return check_representation(r, p, cfg, params).residual;
}

RecurrenceCheck check_recurrence_identity(const EvaluationPoint& p,
                                          const QuadratureConfig& cfg) {
  const double lhs = p.tau * k_itau_oracle(p, cfg);
  const double rhs = p.x * k_complex_order(OrderSpec(1.0, p.tau), p.x, cfg).imag();
  const double res = std::abs(lhs - rhs);
  return {lhs, rhs, res, res <= 1e-10 * std::abs(lhs) + 1e-14};
}

}  // namespace klkit
