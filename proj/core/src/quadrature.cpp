#include "klkit/quadrature.hpp"

#include "klkit/errors.hpp"

namespace klkit {

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0) || !(rel_tol > 0))
    throw DomainError("quadrature tolerances must be positive");
  if (max_refinements < 1)
    throw DomainError("max_refinements must be at least 1");
  if (!(truncation_threshold > 0) || !(truncation_threshold < 1))
    throw DomainError("truncation_threshold must lie in (0, 1)");
}

SeriesLimit wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n == 0) return {0.0, std::numeric_limits<double>::infinity()};
  if (n < 3) return {s.back(), n == 2 ? std::abs(s[1] - s[0]) : std::abs(s[0])};
  // eps[k][j]: column k of the epsilon table; even columns hold estimates.
  std::vector<double> prev(n + 1, 0.0);  // column -1
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  double best_err = std::abs(s[n - 1] - s[n - 2]);
  double last_even = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool broke = false;
    for (std::size_t j = 0; j + k < n; ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (diff == 0.0) {
        broke = true;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    if (broke) break;
    if (k % 2 == 0) {
      const double est = next.back();
      const double err = std::abs(est - last_even);
      if (err < best_err) {
        best = est;
        best_err = err;
      }
      last_even = est;
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {best, best_err};
}

}  // namespace klkit
