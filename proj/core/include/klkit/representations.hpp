#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klkit/kernel.hpp"

namespace klkit {

/// Integral representations of K_{i tau}(x) and its square that can be
/// checked numerically, both sides evaluated independently.
enum class Representation {
  /// K^2_{i tau}(x) = pi / sinh(pi tau) int_0^inf J_0(2x sinh t) sin(2 tau t) dt
  SquaredSine,
  /// K_{nu - rho + 1}(x) = (2/x)^{rho - 1} Gamma(rho)
  ///                      int_0^inf y^{nu + 1} J_nu(xy) (1 + y^2)^{-rho} dy
  /// with rho = rho_re + i tau, -1 < nu < 2 rho_re - 1/2.
  BesselJOrderShift,
  /// (2 tau/pi) sinh(pi tau) K^2_{i tau}(x)
  ///   = 1 - 2x int_0^inf J_1(2xy) cos(2 tau asinh y) dy
  SquaredJ1Cosine,
  /// K^2_{i tau}(x) = 2 int_1^inf K_{2 i tau}(2xy) (y^2 - 1)^{-1/2} dy
  SquaredDoubling,
};

const std::vector<Representation>& all_representations();
std::string to_string(Representation r);
std::optional<Representation> representation_from_string(const std::string& name);

struct RepresentationParams {
  double nu = 0.0;
  double rho_re = 1.5;
};

struct RepresentationCheck {
  Complex lhs;
  Complex rhs;
  double residual;  // |lhs - rhs| / (|lhs| + tiny)
  double rhs_error; // quadrature error estimate of the right side
};

RepresentationCheck check_representation(Representation r, const EvaluationPoint& p,
                                         const QuadratureConfig& cfg = {},
                                         const RepresentationParams& params = {});

/// Relative residual of check_representation.
double verify_representation(Representation r, const EvaluationPoint& p,
                             const QuadratureConfig& cfg = {},
                             const RepresentationParams& params = {});

/// tau K_{i tau}(x) against x Im K_{1 + i tau}(x).
struct RecurrenceCheck {
  double lhs;
  double rhs;
  double abs_residual;
  /// abs_residual <= 1e-10 |lhs| + 1e-14
  bool pass;
};

RecurrenceCheck check_recurrence_identity(const EvaluationPoint& p,
                                          const QuadratureConfig& cfg = {});

/// Integral of f over [0, inf) for an oscillatory f whose tail decays
/// slowly: adaptive quadrature on [0, start], then partial integrals over
/// consecutive blocks of width `block` extrapolated by the epsilon
/// algorithm.
template <class F>
SeriesLimit oscillatory_integral(F&& f, double start, double block, int blocks,
                                 double abs_tol, double rel_tol, int max_panels,
                                 int initial_panels = 8) {
  auto head = integrate(f, 0.0, start, abs_tol, rel_tol, max_panels, initial_panels);
  std::vector<double> sums;
  sums.reserve(blocks + 1);
  double acc = head.value;
  double err = head.error;
  sums.push_back(acc);
  for (int k = 0; k < blocks; ++k) {
    const double a = start + k * block;
    auto piece = integrate(f, a, a + block, abs_tol, rel_tol, max_panels, 2);
    acc += piece.value;
    err += piece.error;
    sums.push_back(acc);
  }
  SeriesLimit lim = wynn_epsilon(sums);
  lim.error += err;
  return lim;
}

}  // namespace klkit
