#pragma once

#include <complex>

namespace klkit {

using Complex = std::complex<double>;

// Principal branch of log Gamma(z). Shifted Stirling series evaluated in
// extended precision. Throws DomainError at the poles z = 0, -1, -2, ...
Complex complex_log_gamma(Complex z);

// exp(complex_log_gamma(z))
Complex complex_gamma(Complex z);

// log|Gamma(z)| without forming the complex value.
double log_abs_gamma(Complex z);

// Rising factorial a (a+1) ... (a+n-1); 1 for n == 0.
Complex pochhammer(Complex a, unsigned n);

// Euler beta function for positive real arguments.
double beta(double z, double w);

// Bessel function of the first kind, nu >= -1/2, x >= 0.
double bessel_j(double nu, double x);

// Modified Bessel function of the first kind from its power series.
double bessel_i(double nu, double x);

// Complex-order power series for I_nu(x), x >= 0.
Complex bessel_i(Complex nu, double x);

// I_n(y) / y^n for integer n >= 0, as the even entire function it is; finite
// at y == 0.
double bessel_i_over_power(unsigned n, double y);

/// Macdonald function of order zero, K_0(x) = int_0^inf exp(-x cosh t) dt,
/// by adaptive quadrature with relative accuracy near 1e-14.
double bessel_k0(double x);

}  // namespace klkit
