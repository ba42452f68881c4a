#pragma once

#include "klkit/quadrature.hpp"
#include "klkit/special.hpp"

namespace klkit {

/// A point (x, tau) with x > 0, tau > 0, both finite. Construction validates.
struct EvaluationPoint {
  double x;
  double tau;

  EvaluationPoint(double x_, double tau_);
  friend bool operator==(const EvaluationPoint&, const EvaluationPoint&) = default;
};

/// Order mu + i tau of K_{mu + i tau}.
struct OrderSpec {
  double mu;
  double tau;

  OrderSpec(double mu_, double tau_);
};

/// A value together with an absolute error estimate.
struct KernelEstimate {
  double value;
  double error;
};

struct ComplexEstimate {
  Complex value;
  double error;
};

/// sqrt(2 pi / tau) exp(-pi tau / 2): the size of K_{i tau}(x) for x below
/// the turning point. Accuracy of every evaluator is quoted against it.
double natural_scale(double tau);
double log_natural_scale(double tau);

// --- Quadrature oracle -----------------------------------------------------
//
// K_{i tau}(x) = int_0^inf exp(-x cosh t) cos(tau t) dt, evaluated on the
// horizontal contour Im t = theta. theta passes through the saddle of the
// integrand when tau < x and sits just below pi/2 otherwise, so the
// integrand magnitude never exceeds the result scale by more than a small
// factor. theta = 0 recovers the real-axis integral.

/// Contour height used by the oracle at (x, tau).
double oracle_contour_angle(double x, double tau);

KernelEstimate k_itau_oracle_estimate(const EvaluationPoint& p,
                                      const QuadratureConfig& cfg = {});
double k_itau_oracle(const EvaluationPoint& p, const QuadratureConfig& cfg = {});

/// exp(pi tau / 2) K_{i tau}(x); usable far beyond the underflow of K itself.
KernelEstimate k_itau_oracle_scaled(const EvaluationPoint& p,
                                    const QuadratureConfig& cfg = {});

/// K_{mu + i tau}(x) = int_0^inf exp(-x cosh t) cosh((mu + i tau) t) dt on
/// the same shifted contour. Contract: |mu| <= 3, tau <= 50, 0.01 <= x <= 100.
ComplexEstimate k_complex_order_estimate(const OrderSpec& o, double x,
                                         const QuadratureConfig& cfg = {});
Complex k_complex_order(const OrderSpec& o, double x,
                        const QuadratureConfig& cfg = {});

// --- Series representations -------------------------------------------------

/// The bracketed correction S with
///   K_{i tau}(x) = Re[ Gamma(i tau) (x/2)^{-i tau} (1 + S) ],
///   S = sum_{m=1}^N (x/2)^{2m} / (m! (1 - i tau)_m)
///       + x^{2 i tau} / (2^N (1 - i tau)_N)
///         * int_0^x (x^2 - y^2)^{N - i tau} I_{N+1}(y) y^{-N} dy.
/// The remainder integral is taken in the variable v with
/// x^2 - y^2 = x^2 e^{-v}, which turns it into a smooth exponentially damped
/// oscillation on [0, inf).
ComplexEstimate keyformula_correction(double x, double tau, unsigned N,
                                      const QuadratureConfig& cfg = {});

/// Only the remainder-integral part of keyformula_correction.
ComplexEstimate keyformula_remainder_integral(double x, double tau, unsigned N,
                                              const QuadratureConfig& cfg = {});

/// Gamma(i tau) (x/2)^{-i tau}
Complex gamma_phase_factor(double x, double tau);

KernelEstimate k_itau_keyformula_estimate(const EvaluationPoint& p, unsigned N,
                                          const QuadratureConfig& cfg = {});
double k_itau_keyformula(const EvaluationPoint& p, unsigned N,
                         const QuadratureConfig& cfg = {});

/// (pi / (2 i sinh(pi tau))) [I_{-i tau}(x) - I_{i tau}(x)] in complex
/// arithmetic. Throws AccuracyError when the cancellation estimate exceeds
/// 1e-10 of the natural scale or the imaginary residual exceeds 1e-10.
/// Intended for tau <= 10, x <= 10.
KernelEstimate k_itau_defseries_estimate(const EvaluationPoint& p);
double k_itau_defseries(const EvaluationPoint& p);

/// Best available evaluator: the convergent power series when x <= 2 or
/// x^2 <= 8 tau, the quadrature oracle otherwise.
double k_itau(const EvaluationPoint& p, const QuadratureConfig& cfg = {});

/// exp(pi tau / 2) k_itau(p), free of underflow at large tau.
double k_itau_scaled(const EvaluationPoint& p, const QuadratureConfig& cfg = {});

}  // namespace klkit
