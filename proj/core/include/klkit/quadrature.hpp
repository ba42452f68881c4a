#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

namespace klkit {

struct QuadratureConfig {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_refinements = 4000;
  // Integrand envelope, relative to its peak, below which a semi-infinite
  // tail is dropped.
  double truncation_threshold = 1e-17;

  void validate() const;
  // -log(truncation_threshold)
  double truncation_log() const { return -std::log(truncation_threshold); }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  // Estimate of the integral of |f|; measures cancellation.
  double l1 = 0.0;
  int subintervals = 0;
  bool converged = false;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  double l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  double l1 = magnitude(fc) * kKronrodWeights[7];
  std::array<T, 15> samples{};
  samples[7] = fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    samples[j] = f1;
    samples[14 - j] = f2;
    kronrod += (f1 + f2) * kKronrodWeights[j];
    l1 += (magnitude(f1) + magnitude(f2)) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  // QUADPACK-style error scaling.
  const T mean = kronrod * 0.5;
  double asc = magnitude(fc - mean) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j)
    asc += (magnitude(samples[j] - mean) + magnitude(samples[14 - j] - mean)) *
           kKronrodWeights[j];
  asc *= std::abs(half);
  l1 *= std::abs(half);
  double err = magnitude((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0)
    err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (l1 > std::numeric_limits<double>::min() / (50 * eps))
    err = std::max(err, 50 * eps * l1);
  return {a, b, kronrod * half, err, l1};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The interval is first split into `initial_panels` equal pieces (useful for
/// oscillatory integrands), then the panel with the largest error estimate is
/// bisected until the summed estimate falls below max(abs_tol, rel_tol |I|) or
/// `max_panels` is reached. Convergence is reported, never thrown; callers
/// decide how to surface a failure. T is double or std::complex<double>.
template <class F>
auto integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
               int max_panels, int initial_panels = 1) {
  using T = std::decay_t<decltype(f(a))>;
  QuadratureResult<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  initial_panels = std::max(1, initial_panels);
  max_panels = std::max(max_panels, initial_panels);
  std::priority_queue<detail::Panel<T>> heap;
  T total{};
  double total_err = 0.0;
  double total_l1 = 0.0;
  const double width = (b - a) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + i * width;
    const double hi = (i + 1 == initial_panels) ? b : a + (i + 1) * width;
    auto p = detail::gauss_kronrod_15<T>(f, lo, hi);
    total += p.value;
    total_err += p.error;
    total_l1 += p.l1;
    heap.push(p);
  }
  auto target = [&] {
    return std::max(abs_tol, rel_tol * detail::magnitude(total));
  };
  while (total_err > target() && static_cast<int>(heap.size()) < max_panels) {
    auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted
    heap.pop();
    auto left = detail::gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = detail::gauss_kronrod_15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Recompute sums from scratch to shed accumulated update roundoff.
  total = T{};
  total_err = 0.0;
  total_l1 = 0.0;
  out.subintervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    total_l1 += heap.top().l1;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.l1 = total_l1;
  // A request below the roundoff floor of the sum counts as met.
  const double floor =
      100 * std::numeric_limits<double>::epsilon() * total_l1;
  out.converged = std::isfinite(total_err) &&
                  total_err <= std::max(target(), floor);
  return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
               int initial_panels = 1) {
  return integrate(std::forward<F>(f), a, b, cfg.abs_tol, cfg.rel_tol,
                   cfg.max_refinements, initial_panels);
}

/// Wynn epsilon acceleration of a sequence of partial sums. Returns the
/// accelerated limit and an error estimate from the last two diagonal
/// entries.
struct SeriesLimit {
  double value;
  double error;
};
SeriesLimit wynn_epsilon(const std::vector<double>& partial_sums);

}  // namespace klkit
