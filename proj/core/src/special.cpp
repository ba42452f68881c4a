#include "klkit/special.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "klkit/errors.hpp"
#include "klkit/quadrature.hpp"

namespace klkit {

namespace {

using LComplex = std::complex<long double>;

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr long double kStirling[] = {
    1.0L / 12.0L,          -1.0L / 360.0L,         1.0L / 1260.0L,
    -1.0L / 1680.0L,       1.0L / 1188.0L,         -691.0L / 360360.0L,
    1.0L / 156.0L,         -3617.0L / 122400.0L,   43867.0L / 244188.0L,
    -174611.0L / 125400.0L};

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

Complex complex_log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("complex_log_gamma: non-finite argument");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("complex_log_gamma: pole at non-positive integer");

  LComplex w(z.real(), z.imag());
  LComplex shift = 0.0L;
  // Move into the half plane where the asymptotic series converges to full
  // precision: Re w >= 1 and |w| >= 12.
  while (w.real() < 1.0L || std::abs(w) < 12.0L) {
    shift += std::log(w);
    w += 1.0L;
  }
  const LComplex inv = 1.0L / w;
  const LComplex inv2 = inv * inv;
  LComplex series = 0.0L;
  LComplex power = inv;
  for (long double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  constexpr long double half_log_two_pi =
      0.918938533204672741780329736405617639861L;
  const LComplex result =
      (w - 0.5L) * std::log(w) - w + half_log_two_pi + series - shift;
  return {static_cast<double>(result.real()),
          static_cast<double>(result.imag())};
}

Complex complex_gamma(Complex z) { return std::exp(complex_log_gamma(z)); }

double log_abs_gamma(Complex z) { return complex_log_gamma(z).real(); }

Complex pochhammer(Complex a, unsigned n) {
  Complex p = 1.0;
  for (unsigned k = 0; k < n; ++k) p *= a + static_cast<double>(k);
  return p;
}

double beta(double z, double w) {
  if (!(z > 0) || !(w > 0)) throw DomainError("beta: arguments must be positive");
  return std::exp(std::lgamma(z) + std::lgamma(w) - std::lgamma(z + w));
}

double bessel_j(double nu, double x) {
  if (nu < -0.5) throw DomainError("bessel_j: order below -1/2");
  if (x < 0) throw DomainError("bessel_j: negative argument");
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  return boost::math::cyl_bessel_j(nu, x);
}

namespace {

// Sums t_0 * sum_k prod_{j<k} q^2 / ((j+1)(j+1+nu)) for the I_nu series.
// Terms grow until k ~ q and then decay super-geometrically; stop once past
// the peak and the next term no longer moves the sum.
template <class T>
T i_series(T leading, T nu, double q2) {
  T term = leading;
  T sum = leading;
  for (int k = 0; k < 100000; ++k) {
    const T ratio = q2 / ((k + 1.0) * (T(k + 1.0) + nu));
    term *= ratio;
    sum += term;
    if (std::abs(ratio) < 1.0 && std::abs(term) <= 0.5 * kEps * std::abs(sum))
      break;
    if (term == T(0)) break;
  }
  return sum;
}

}  // namespace

double bessel_i(double nu, double x) {
  if (nu < 0) throw DomainError("bessel_i: negative order");
  if (x < 0) throw DomainError("bessel_i: negative argument");
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double leading = std::exp(nu * std::log(half) - std::lgamma(nu + 1));
  return i_series(leading, nu, half * half);
}

Complex bessel_i(Complex nu, double x) {
  if (x < 0) throw DomainError("bessel_i: negative argument");
  if (x == 0) return nu == Complex(0.0) ? Complex(1.0) : Complex(0.0);
  const double half = 0.5 * x;
  Complex leading;
  const Complex np1 = nu + 1.0;
  if (np1.imag() == 0 && np1.real() <= 0 && np1.real() == std::floor(np1.real()))
    throw DomainError("bessel_i: negative integer order not supported");
  leading = std::exp(nu * std::log(half) - complex_log_gamma(np1));
  return i_series(leading, nu, half * half);
}

double bessel_i_over_power(unsigned n, double y) {
  const double half = 0.5 * y;
  // 1 / (2^n n!)
  const double leading = std::exp(-static_cast<double>(n) * std::numbers::ln2 - std::lgamma(n + 1.0));
  if (y == 0) return leading;
  return i_series(leading, static_cast<double>(n), half * half);
}

double bessel_k0(double x) {
  if (!(x > 0)) throw DomainError("bessel_k0: argument must be positive");
  // K_0(x) = e^{-x} int_0^inf exp(-2 x sinh^2(t/2)) dt
  const double log_drop = 40.0;
  const double t_max = 2.0 * std::asinh(std::sqrt(log_drop / (2.0 * x))) + 1.0;
  auto f = [x](double t) {
    const double s = std::sinh(0.5 * t);
    return std::exp(-2.0 * x * s * s);
  };
  auto r = integrate(f, 0.0, t_max, 0.0, 1e-14, 2000, 4);
  if (!r.converged)
    throw AccuracyError("bessel_k0: quadrature did not converge", r.value,
                        r.error);
  return std::exp(-x) * r.value;
}

}  // namespace klkit
