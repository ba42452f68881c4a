#include "klkit/summability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "klkit/errors.hpp"
#include "klkit/parallel.hpp"

namespace klkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

double log_abs_gamma_sq(double s, double tau) {
  return 2.0 * complex_log_gamma(Complex(s, tau)).real();
}

void require_positive_s(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw DomainError("Mellin exponent s must be positive");
}

void require_a(double a) {
  if (!(a >= 0.0) || !(a < 0.5 * kPi)) throw DomainError("parameter a must lie in [0, pi/2)");
}

// Smallest T beyond the envelope peak where log_env has dropped by `drop`.
// log_env must eventually decrease.
template <class F>
double envelope_cutoff(F&& log_env, double drop, double step) {
  double peak = log_env(0.0);
  double t = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    t += step;
    const double v = log_env(t);
    peak = std::max(peak, v);
    if (v < peak - drop) return t;
  }
  throw DomainError("integrand envelope does not decay");
}

}  // namespace

EntireFunctionSpec EntireFunctionSpec::one() { return {{1.0}, 0.0, 0}; }
EntireFunctionSpec EntireFunctionSpec::zero() { return {{}, 0.0, 0}; }

EntireFunctionSpec EntireFunctionSpec::cosine(double b, unsigned terms) {
  if (!(b >= 0) || !std::isfinite(b)) throw DomainError("cosine: requires b >= 0");
  if (terms == 0) throw DomainError("cosine: requires at least one coefficient");
  EntireFunctionSpec f{{}, b, 0};
  double c = 1.0;
  for (unsigned n = 0; n < terms; ++n) {
    f.even_coeffs.push_back(c);
    c *= -b * b / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
  }
  return f;
}

void EntireFunctionSpec::validate() const {
  if (!(exp_type >= 0) || !std::isfinite(exp_type))
    throw DomainError("exponential type must be finite and non-negative");
  for (std::size_t n = 0; n < even_coeffs.size(); ++n) {
    const double c = even_coeffs[n];
    if (!std::isfinite(c)) throw DomainError("Taylor coefficients must be finite");
    if (n <= cauchy_n0 || c == 0.0) continue;
    const double m = 2.0 * static_cast<double>(n);
    const double log_limit = m * std::log(kE * exp_type / m);
    if (std::log(std::abs(c)) > log_limit)
      throw DomainError("coefficient c_" + std::to_string(2 * n) +
                        " violates the Cauchy estimate for the declared type");
  }
}

double EntireFunctionSpec::operator()(double tau) const {
  const double t2 = tau * tau;
  double v = 0.0;
  for (auto it = even_coeffs.rbegin(); it != even_coeffs.rend(); ++it) v = v * t2 + *it;
  return v;
}

double EntireFunctionSpec::majorant(double tau) const {
  const double t2 = tau * tau;
  double v = 0.0;
  for (auto it = even_coeffs.rbegin(); it != even_coeffs.rend(); ++it)
    v = v * t2 + std::abs(*it);
  return v;
}

bool EntireFunctionSpec::is_zero() const {
  return std::all_of(even_coeffs.begin(), even_coeffs.end(), [](double c) { return c == 0.0; });
}

double type_threshold(double a) { return (1.0 - std::sin(a)) / (2.0 * kE); }

std::vector<double> SummabilityQuery::default_epsilon_schedule() {
  return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
}

void SummabilityQuery::validate() const {
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("x must be positive");
  require_a(a);
  psi1.validate();
  psi2.validate();
  const double limit = type_threshold(a);
  if (!(psi1.exp_type < limit) || !(psi2.exp_type < limit))
    throw DomainError("exponential types must be below (1 - sin a)/(2e) = " +
                      std::to_string(limit));
  if (epsilon_schedule.empty()) throw DomainError("epsilon schedule must not be empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    if (!(epsilon_schedule[i] > 0)) throw DomainError("epsilon values must be positive");
    if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1]))
      throw DomainError("epsilon schedule must be strictly decreasing");
  }
  require_positive_s(mellin_s);
}

double f_epsilon(const SummabilityQuery& q, double eps, const QuadratureConfig& cfg) {
  if (!(eps > 0)) throw DomainError("f_epsilon: requires eps > 0");
  q.validate();
  if (q.psi1.is_zero() && q.psi2.is_zero()) return 0.0;
  const double a = q.a, x = q.x;
  // exp(pi tau / 2) K_{i tau}(x) is O(tau^{-1/2}), so the weight behaves as
  // e^{a tau - eps tau^2} times the psi majorant.
  auto log_env = [&](double t) {
    return -eps * t * t + a * t + std::log(q.psi1.majorant(t) + t * q.psi2.majorant(t) + 1e-300);
  };
  const double t_max = envelope_cutoff(log_env, cfg.truncation_log() + 2.0, 0.5);
  auto f = [&](double t) {
    const double grow = std::exp(a * t - eps * t * t);
    const double decay = std::exp(-(kPi + a) * t - eps * t * t);
    const double ch = 0.5 * (grow + decay);
    const double sh = 0.5 * (grow - decay);
    const double k = k_itau_scaled(EvaluationPoint(x, t), cfg);
    return (q.psi1(t) * ch + q.psi2(t) * t * sh) * k;
  };
  const double peak = std::exp(std::max(0.0, log_env(std::max(0.0, a / (2 * eps)))));
  const int panels = std::clamp(static_cast<int>(t_max * std::log(2 + t_max / x)), 8,
                                cfg.max_refinements / 2);
  auto r = integrate(f, 0.0, t_max, cfg.abs_tol * peak, cfg.rel_tol, cfg.max_refinements * 4,
                     panels);
  if (!r.converged)
    throw AccuracyError("f_epsilon: quadrature did not converge", r.value, r.error);
  return r.value;
}

double mellin_pair(const std::function<double(double)>& g, double s, const QuadratureConfig& cfg,
                   double growth) {
  require_positive_s(s);
  if (!(growth < 1.0)) throw DomainError("mellin_pair: growth rate must be below 1");
  cfg.validate();
  const double rate = 1.0 - std::max(0.0, growth);
  const double drop = cfg.truncation_log() + 2.0;
  double x_max = drop / rate;
  for (int i = 0; i < 50; ++i)
    x_max = (drop + std::max(0.0, s - 1.0) * std::log(x_max) + std::log(1.0 + x_max)) / rate;
  // u = x^s on [0, 1] removes the x^{s-1} endpoint behavior.
  auto head = integrate(
      [&](double u) {
        const double x = std::pow(u, 1.0 / s);
        return std::exp(-x) * g(x) / s;
      },
      0.0, 1.0, cfg.abs_tol, cfg.rel_tol, cfg.max_refinements, 4);
  auto tail = integrate(
      [&](double x) { return std::exp(-x + (s - 1.0) * std::log(x)) * g(x); }, 1.0,
      std::max(2.0, x_max), cfg.abs_tol, cfg.rel_tol, cfg.max_refinements, 16);
  if (!head.converged || !tail.converged)
    throw AccuracyError("mellin_pair: quadrature did not converge", head.value + tail.value,
                        head.error + tail.error);
  return head.value + tail.value;
}

double tau_integral_prefactor(double s) {
  require_positive_s(s);
  return std::exp(-s * std::numbers::ln2 + 0.5 * std::log(kPi) - std::lgamma(s + 0.5));
}

double tau_integral_rhs(double s, double a, double eps, const EntireFunctionSpec& psi1,
                        const EntireFunctionSpec& psi2, const QuadratureConfig& cfg) {
  require_positive_s(s);
  if (!(a < 0.5 * kPi) || !(a > -0.5 * kPi))
    throw DomainError("tau_integral_rhs: requires |a| < pi/2");
  if (!(eps >= 0)) throw DomainError("tau_integral_rhs: requires eps >= 0");
  cfg.validate();
  psi1.validate();
  psi2.validate();
  if (psi1.is_zero() && psi2.is_zero()) return 0.0;
  const double c = 0.5 * kPi + a;
  auto log_env = [&](double t) {
    return -eps * t * t + c * t + log_abs_gamma_sq(s, t) +
           std::log(psi1.majorant(t) + t * psi2.majorant(t) + 1e-300);
  };
  const double t_max = envelope_cutoff(log_env, cfg.truncation_log() + 2.0, 0.25);
  double log_peak = log_env(0.0);
  for (double t = 0.0; t <= t_max; t += 0.25) log_peak = std::max(log_peak, log_env(t));
  auto f = [&](double t) {
    const double g = log_abs_gamma_sq(s, t) - eps * t * t - log_peak;
    const double up = std::exp(c * t + g);
    const double down = std::exp(-c * t + g);
    return psi1(t) * 0.5 * (up + down) + psi2(t) * t * 0.5 * (up - down);
  };
  const int panels = std::clamp(static_cast<int>(t_max), 8, cfg.max_refinements / 2);
  auto r = integrate(f, 0.0, t_max, cfg.abs_tol, cfg.rel_tol, cfg.max_refinements, panels);
  if (!r.converged)
    throw AccuracyError("tau_integral_rhs: quadrature did not converge", r.value, r.error);
  return tau_integral_prefactor(s) * r.value * std::exp(log_peak);
}

double closed_cosh(double s, double a) {
  require_positive_s(s);
  const double c = std::cos(0.25 * kPi + 0.5 * a);
  return kPi * std::exp(std::lgamma(2 * s) - 2 * s * std::numbers::ln2 - 2 * s * std::log(c));
}

double closed_sinh(double s, double a) {
  require_positive_s(s);
  const double arg = 0.25 * kPi + 0.5 * a;
  return kPi *
         std::exp(std::lgamma(2 * s + 1) - (2 * s + 1) * std::numbers::ln2 -
                  (2 * s + 1) * std::log(std::cos(arg))) *
         std::sin(arg);
}

double mellin_k_identity(double s, double tau, const QuadratureConfig& cfg) {
  require_positive_s(s);
  cfg.validate();
  const double rhs = tau_integral_prefactor(s) * std::exp(log_abs_gamma_sq(s, tau));
  // x = e^u; K_{i tau}(x) stays bounded as x -> 0.
  const double drop = cfg.truncation_log() + 2.0;
  const double u_lo = -(drop + std::log(1.0 + tau)) / s;
  const double u_hi = std::log(drop + 10.0);
  auto f = [&](double u) {
    const double x = std::exp(u);
    return std::exp(-x + s * u) * k_itau(EvaluationPoint(x, tau), cfg);
  };
  const int panels = std::clamp(static_cast<int>(tau * (u_hi - u_lo) / kPi) + 8, 8,
                                cfg.max_refinements / 2);
  auto r = integrate(f, u_lo, u_hi, 1e-3 * cfg.abs_tol * rhs, 1e-12, cfg.max_refinements, panels);
  if (!r.converged)
    throw AccuracyError("mellin_k_identity: quadrature did not converge", r.value, r.error);
  return std::abs(r.value - rhs) / std::abs(rhs);
}

double gamma_product_identity(double s, double tau, const QuadratureConfig& cfg) {
  require_positive_s(s);
  cfg.validate();
  const double lhs = std::exp(log_abs_gamma_sq(s, std::abs(tau)));
  const double t2 = 2.0 * std::abs(tau);
  const double drop = cfg.truncation_log() + 2.0;
  const double u_lo = -(drop + std::log(1.0 + t2)) / (2 * s);
  const double u_hi = std::log(drop + 10.0 + 2 * s * std::log(drop + 10.0));
  auto f = [&](double u) {
    const double x = std::exp(u);
    return std::exp(2 * s * u) * k_itau(EvaluationPoint(x, t2), cfg);
  };
  const int panels = std::clamp(static_cast<int>(t2 * (u_hi - u_lo) / kPi) + 8, 8,
                                cfg.max_refinements / 2);
  const double pre = std::exp(2 * (1 - s) * std::numbers::ln2);
  auto r = integrate(f, u_lo, u_hi, 1e-3 * cfg.abs_tol * lhs / pre, 1e-12, cfg.max_refinements,
                     panels);
  if (!r.converged)
    throw AccuracyError("gamma_product_identity: quadrature did not converge", r.value, r.error);
  return std::abs(pre * r.value - lhs) / lhs;
}

std::vector<double> deriv_exp_xsina_all(unsigned n_max, double x, double a) {
  if (n_max > kMaxDerivativeOrder)
    throw DomainError("deriv_exp_xsina: order exceeds " + std::to_string(kMaxDerivativeOrder));
  // Polynomials in S = sin a, coefficient k multiplies S^k.
  using Poly = std::vector<double>;
  auto deriv = [](const Poly& p) {
    Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
  };
  auto eval = [](const Poly& p, double s) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + *it;
    return v;
  };
  const double S = std::sin(a), C = std::cos(a);
  const double e = std::exp(x * S);
  Poly A{1.0}, B{0.0};
  std::vector<double> out;
  out.reserve(n_max + 1);
  for (unsigned n = 0;; ++n) {
    out.push_back(e * (eval(A, S) + C * eval(B, S)));
    if (n == n_max) break;
    const Poly dA = deriv(A), dB = deriv(B);
    // A' = (1 - S^2)(B' + x B) - S B
    Poly q(std::max(dB.size(), B.size()), 0.0);
    for (std::size_t k = 0; k < dB.size(); ++k) q[k] += dB[k];
    for (std::size_t k = 0; k < B.size(); ++k) q[k] += x * B[k];
    Poly nA(q.size() + 2, 0.0);
    for (std::size_t k = 0; k < q.size(); ++k) {
      nA[k] += q[k];
      nA[k + 2] -= q[k];
    }
    for (std::size_t k = 0; k < B.size(); ++k) nA[k + 1] -= B[k];
    Poly nB(std::max(dA.size(), A.size()), 0.0);
    for (std::size_t k = 0; k < dA.size(); ++k) nB[k] += dA[k];
    for (std::size_t k = 0; k < A.size(); ++k) nB[k] += x * A[k];
    A = std::move(nA);
    B = std::move(nB);
  }
  return out;
}

double deriv_exp_xsina(unsigned n, double x, double a) {
  return deriv_exp_xsina_all(n, x, a).back();
}

double theorem2_limit(double x, double a) { return 0.5 * kPi * std::exp(x * std::sin(a)); }

double theorem3_value(double x, double a, const EntireFunctionSpec& psi1,
                      const EntireFunctionSpec& psi2) {
  require_a(a);
  psi1.validate();
  psi2.validate();
  const double limit = type_threshold(a);
  if (!(psi1.exp_type < limit) || !(psi2.exp_type < limit))
    throw DomainError("exponential types must be below (1 - sin a)/(2e) = " +
                      std::to_string(limit));
  const std::size_t n1 = psi1.even_coeffs.size(), n2 = psi2.even_coeffs.size();
  const std::size_t order = std::max(n1 ? 2 * n1 - 2 : 0, n2 ? 2 * n2 - 1 : 0);
  if (order > kMaxDerivativeOrder)
    throw DomainError("theorem3_value: too many coefficients for the derivative engine");
  const auto d = deriv_exp_xsina_all(static_cast<unsigned>(order), x, a);
  double sum = 0.0;
  for (std::size_t n = 0; n < n1; ++n) sum += psi1.even_coeffs[n] * d[2 * n];
  for (std::size_t n = 0; n < n2; ++n) sum += psi2.even_coeffs[n] * d[2 * n + 1];
  return 0.5 * kPi * sum;
}

namespace {

SummabilityReport pairing_report(const SummabilityQuery& q, const EntireFunctionSpec& psi1,
                                 const EntireFunctionSpec& psi2, double target,
                                 const QuadratureConfig& cfg, unsigned workers) {
  SummabilityReport rep;
  rep.query = q;
  rep.target = target;
  const auto& sched = q.epsilon_schedule;
  rep.pairing_values.resize(sched.size());
  detail::parallel_for(sched.size() + 1, workers, [&](std::size_t i) {
    const double eps = i < sched.size() ? sched[i] : 0.0;
    const double v = tau_integral_rhs(q.mellin_s, q.a, eps, psi1, psi2, cfg);
    if (i < sched.size())
      rep.pairing_values[i] = v;
    else
      rep.limit_value = v;
  });
  rep.errors.resize(sched.size());
  for (std::size_t i = 0; i < sched.size(); ++i)
    rep.errors[i] = std::abs(rep.pairing_values[i] - target);
  bool decreasing = true;
  const std::size_t n = rep.errors.size();
  for (std::size_t i = n >= 3 ? n - 2 : 1; i < n; ++i)
    if (!(rep.errors[i] < rep.errors[i - 1])) decreasing = false;
  const double final_rel = rep.errors.back() / std::max(std::abs(target), 1e-300);
  rep.converged = decreasing && final_rel <= 1e-4;
  return rep;
}

}  // namespace

SummabilityReport theorem2_check(const SummabilityQuery& q, const QuadratureConfig& cfg,
                                 unsigned workers) {
  SummabilityQuery q2 = q;
  q2.psi1 = EntireFunctionSpec::one();
  q2.psi2 = EntireFunctionSpec::zero();
  q2.validate();
  const double s = q2.mellin_s;
  const double target = 0.5 * kPi * std::exp(std::lgamma(s) - s * std::log1p(-std::sin(q2.a)));
  return pairing_report(q2, q2.psi1, q2.psi2, target, cfg, workers);
}

SummabilityReport theorem3_check(const SummabilityQuery& q, const QuadratureConfig& cfg,
                                 unsigned workers) {
  q.validate();
  const double b = std::max(q.psi1.exp_type, q.psi2.exp_type);
  const double growth = std::sin(q.a) * std::cosh(b) + 1e-3;
  const double target = mellin_pair(
      [&](double x) { return theorem3_value(x, q.a, q.psi1, q.psi2); }, q.mellin_s, cfg,
      std::min(growth, 0.999));
  return pairing_report(q, q.psi1, q.psi2, target, cfg, workers);
}

}  // namespace klkit
