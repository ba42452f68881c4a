#pragma once

#include <functional>
#include <vector>

#include "klkit/kernel.hpp"

namespace klkit {

/// Even entire function psi(tau) = sum_n c_{2n} tau^{2n} of exponential type b.
struct EntireFunctionSpec {
  std::vector<double> even_coeffs;
  double exp_type = 0.0;
  /// Cauchy estimates |c_{2n}| <= (e b / (2n))^{2n} are required for n > cauchy_n0.
  unsigned cauchy_n0 = 0;

  static EntireFunctionSpec one();
  static EntireFunctionSpec zero();
  /// Taylor truncation of cos(b tau) to `terms` even coefficients.
  static EntireFunctionSpec cosine(double b, unsigned terms = 30);

  /// Throws DomainError unless coefficients are finite, exp_type >= 0 and
  /// the Cauchy estimates hold.
  void validate() const;
  double operator()(double tau) const;
  /// sum_n |c_{2n}| tau^{2n}
  double majorant(double tau) const;
  bool is_zero() const;
};

/// (1 - sin a) / (2e): exponential types must stay strictly below it.
double type_threshold(double a);

struct SummabilityQuery {
  double x = 1.0;
  double a = 0.0;
  EntireFunctionSpec psi1 = EntireFunctionSpec::one();
  EntireFunctionSpec psi2 = EntireFunctionSpec::zero();
  std::vector<double> epsilon_schedule = default_epsilon_schedule();
  double mellin_s = 1.0;

  static std::vector<double> default_epsilon_schedule();
  void validate() const;
};

/// int_0^inf e^{-eps tau^2} [psi1 cosh((pi/2 + a) tau) + psi2 tau sinh((pi/2 + a) tau)]
///          K_{i tau}(x) d tau
/// evaluated with the scaled oracle so that large tau does not underflow.
double f_epsilon(const SummabilityQuery& q, double eps, const QuadratureConfig& cfg = {});

/// int_0^inf e^{-x} g(x) x^{s-1} dx for g growing at most like e^{growth x},
/// growth < 1.
double mellin_pair(const std::function<double(double)>& g, double s,
                   const QuadratureConfig& cfg = {}, double growth = 0.0);

/// 2^{-s} sqrt(pi) / Gamma(s + 1/2)
///   int_0^inf e^{-eps tau^2} [psi1 cosh((pi/2+a) tau) + psi2 tau sinh((pi/2+a) tau)]
///   Gamma(s + i tau) Gamma(s - i tau) d tau
double tau_integral_rhs(double s, double a, double eps, const EntireFunctionSpec& psi1,
                        const EntireFunctionSpec& psi2, const QuadratureConfig& cfg = {});

/// 2^{-s} sqrt(pi) / Gamma(s + 1/2)
double tau_integral_prefactor(double s);

/// pi Gamma(2s) 2^{-2s} cos(pi/4 + a/2)^{-2s}
double closed_cosh(double s, double a);
/// pi Gamma(2s+1) 2^{-2s-1} cos(pi/4 + a/2)^{-2s-1} sin(pi/4 + a/2)
double closed_sinh(double s, double a);

/// Relative residual of
///   int_0^inf e^{-x} K_{i tau}(x) x^{s-1} dx = 2^{-s} sqrt(pi) Gamma(s+i tau) Gamma(s-i tau) / Gamma(s+1/2)
double mellin_k_identity(double s, double tau, const QuadratureConfig& cfg = {});

/// Relative residual of
///   Gamma(s+i tau) Gamma(s-i tau) = 2^{2(1-s)} int_0^inf K_{2 i tau}(x) x^{2s-1} dx
double gamma_product_identity(double s, double tau, const QuadratureConfig& cfg = {});

inline constexpr unsigned kMaxDerivativeOrder = 60;

/// d^n/da^n e^{x sin a}, from the cofactor recurrence
///   d^n/da^n e^{x sin a} = e^{x sin a} (A_n(sin a) + cos a B_n(sin a)),
///   A_{n+1} = (1 - S^2)(B_n' + x B_n) - S B_n,  B_{n+1} = A_n' + x A_n.
/// n <= 60.
double deriv_exp_xsina(unsigned n, double x, double a);

/// All derivatives of orders 0..n_max at once.
std::vector<double> deriv_exp_xsina_all(unsigned n_max, double x, double a);

/// (pi/2) e^{x sin a}
double theorem2_limit(double x, double a);

/// (pi/2) [psi1(D_a) + D_a psi2(D_a)] e^{x sin a}. Throws DomainError when an
/// exponential type reaches (1 - sin a)/(2e) or the coefficient count needs
/// derivatives beyond order 60.
double theorem3_value(double x, double a, const EntireFunctionSpec& psi1,
                      const EntireFunctionSpec& psi2);

struct SummabilityReport {
  SummabilityQuery query;
  std::vector<double> pairing_values;
  double target = 0.0;
  /// |pairing - target| per schedule entry.
  std::vector<double> errors;
  /// Pairing at eps = 0.
  double limit_value = 0.0;
  bool converged = false;
};

/// Pairing values for psi1 = 1, psi2 = 0 against (pi/2) Gamma(s) (1 - sin a)^{-s}.
SummabilityReport theorem2_check(const SummabilityQuery& q, const QuadratureConfig& cfg = {},
                                 unsigned workers = 1);

/// Pairing values for the query's psi1, psi2 against the Mellin pairing of
/// theorem3_value.
SummabilityReport theorem3_check(const SummabilityQuery& q, const QuadratureConfig& cfg = {},
                                 unsigned workers = 1);

}  // namespace klkit
