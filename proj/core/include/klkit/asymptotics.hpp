#pragma once

#include "klkit/kernel.hpp"

namespace klkit {

/// phi = tau log(2 tau / (e x)) - pi/4
double expansion_phase(const EvaluationPoint& p);

/// sqrt(2 pi / tau) e^{-pi tau / 2} cos(phi)
double leading_term(const EvaluationPoint& p);

/// Stirling remainder r(tau) with
///   Gamma(i tau) = sqrt(2 pi / tau) exp(-pi tau/2 + i(tau log(tau/e) - pi/4)) (1 + r),
/// computed from the complex log-gamma.
Complex stirling_r_gamma(double tau);

/// The same r(tau) from the Binet-type integral
///   r = exp(int_0^inf e^{-i tau t} [1/2 - 1/t + 1/(e^t - 1)] dt / t) - 1,
/// integrated along the ray arg t = -pi/4. Requires tau >= 0.5.
Complex stirling_r_integral(double tau, const QuadratureConfig& cfg = {});

/// [1/2 - 1/t + 1/(e^t - 1)] / t, with its Bernoulli series near t = 0.
Complex binet_bracket(Complex t);

/// K_{i tau}(x) sqrt(tau / 2pi) e^{pi tau/2} - cos(phi), K from the oracle.
/// The value does not depend on the truncation order, which is accepted only
/// for symmetry with remainder_explicit.
double remainder_measured(const EvaluationPoint& p, unsigned N = 0,
                          const QuadratureConfig& cfg = {});

/// Re[e^{i phi} (r + (1 + r) S_N)] with S_N the key-formula correction.
double remainder_explicit(const EvaluationPoint& p, unsigned N,
                          const QuadratureConfig& cfg = {});

/// (1/tau) [ e^{1/(6 tau0)}/6 + (tau0 + e^{1/(6 tau0)}/6)
///           ( exp(X^2 / (4 tau0)) + (X^2 / (2 tau0))^N (I_N(X)/X^N - 1/(2^N N!)) ) ]
/// Requires tau >= tau0 > 0, X > 0, 1 <= N <= 20.
double remainder_bound(double tau, double tau0, double X, unsigned N);

struct ExpansionReport {
  EvaluationPoint point{1.0, 1.0};
  unsigned N = 0;
  double tau0 = 1.0;
  double X = 1.0;
  double leading = 0.0;
  double k_value = 0.0;
  double remainder_measured = 0.0;
  double remainder_explicit = 0.0;
  double remainder_bound = 0.0;
  /// Order used for the bound; N = 0 is checked against the N = 1 bound.
  unsigned bound_order = 1;
  bool within_bound = false;
};

ExpansionReport expansion_report(const EvaluationPoint& p, unsigned N, double tau0,
                                 double X, const QuadratureConfig& cfg = {});

}  // namespace klkit
