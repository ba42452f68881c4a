// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "klkit/asymptotics.hpp"
#include "klkit/bounds.hpp"
#include "klkit/errors.hpp"
#include "klkit/kernel.hpp"
#include "klkit/representations.hpp"
#include "klkit/summability.hpp"

using namespace klkit;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

const double kGridX[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
const double kGridTau[] = {0.5, 1.0, 2.0, 5.0, 10.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome cross_method() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double x : kGridX) {
    for (double tau : kGridTau) {
      const EvaluationPoint p(x, tau);
      std::vector<double> v{k_itau_oracle(p), k_itau_defseries(p)};
      for (unsigned N : {0u, 2u, 4u}) v.push_back(k_itau_keyformula(p, N));
      for (double a : v)
        for (double b : v) worst = std::max(worst, std::abs(a - b) / natural_scale(tau));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8 && secs <= 30.0,
          "max scaled deviation " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome catalog() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto certs = certify_catalog(default_catalog(), default_grid(), {}, 4);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = secs <= 300.0;
  double worst = 0.0;
  std::string failed;
  for (const auto& c : certs) {
    worst = std::max(worst, c.max_ratio);
    if (!c.pass) {
      pass = false;
      failed += " " + to_string(c.descriptor.id);
    }
  }
  return {pass, std::to_string(certs.size()) + " entries, max ratio " + fmt("%.6f", worst) + ", " +
                    fmt("%.2f", secs) + " s (4 workers)" + (failed.empty() ? "" : ", failed:" + failed)};
}

Outcome recurrence() {
  double worst = 0.0;
  for (double x : kGridX) {
    for (double tau : kGridTau) {
      const auto r = check_recurrence_identity(EvaluationPoint(x, tau));
      worst = std::max(worst, r.abs_residual / std::abs(r.lhs));
    }
  }
  return {worst <= 1e-10, "max relative residual " + fmt("%.3g", worst) + " on 6x5 grid"};
}

Outcome representations() {
  struct Case {
    Representation rep;
    double x, tau, tol;
  };
  const Case cases[] = {{Representation::SquaredDoubling, 1.0, 1.0, 1e-8},
                        {Representation::BesselJOrderShift, 1.0, 1.0, 1e-8},
                        {Representation::SquaredSine, 0.5, 1.0, 1e-6},
                        {Representation::SquaredJ1Cosine, 0.5, 2.0, 1e-4}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const double r = verify_representation(c.rep, EvaluationPoint(c.x, c.tau));
    pass = pass && r <= c.tol;
    detail += (detail.empty() ? "" : ", ") + to_string(c.rep) + " " + fmt("%.2g", r);
  }
  return {pass, detail};
}

Outcome theorem1() {
  const double tau0 = 1.0, X = 5.0;
  bool grid_ok = true;
  for (unsigned N : {1u, 2u, 3u})
    for (double tau : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0})
      for (double x : {0.25, 1.0, 5.0})
        grid_ok = grid_ok && expansion_report(EvaluationPoint(x, tau), N, tau0, X).within_bound;

  double decay_ratio = 0.0;
  for (unsigned N : {1u, 2u, 3u}) {
    const double cap = remainder_bound(tau0, tau0, X, N);
    for (double x : {0.25, 1.0, 5.0})
      for (double tau : log_space(1.0, 40.0, 40))
        decay_ratio = std::max(
            decay_ratio, tau * std::abs(remainder_measured(EvaluationPoint(x, tau))) / cap);
  }

  double stirling_ratio = 0.0;
  for (double tau : log_space(0.5, 50.0, 100))
    stirling_ratio =
        std::max(stirling_ratio, std::abs(stirling_r_gamma(tau)) / std::expm1(1.0 / (6.0 * tau)));

  return {grid_ok && decay_ratio <= 1.0 && stirling_ratio <= 1.0,
          std::string("grid ") + (grid_ok ? "within bound" : "VIOLATED") +
              ", max tau|R|/bound(tau0) " + fmt("%.3g", decay_ratio) + ", max |r|/stirling " +
              fmt("%.4f", stirling_ratio)};
}

Outcome closed_forms() {
  const auto one = EntireFunctionSpec::one();
  const auto zero = EntireFunctionSpec::zero();
  double worst = 0.0;
  for (double s : {0.5, 1.0, 1.5}) {
    const double pre = tau_integral_prefactor(s);
    for (double a : {0.0, 0.3, 0.7, 1.2}) {
      const double c = pre * closed_cosh(s, a);
      const double h = pre * closed_sinh(s, a);
      worst = std::max(worst, std::abs(tau_integral_rhs(s, a, 0.0, one, zero) - c) / c);
      worst = std::max(worst, std::abs(tau_integral_rhs(s, a, 0.0, zero, one) - h) / h);
    }
  }
  return {worst <= 1e-8, "max relative deviation " + fmt("%.3g", worst)};
}

Outcome theorem2() {
  bool pass = true;
  std::string detail;
  for (double a : {0.0, 0.5}) {
    SummabilityQuery q;
    q.a = a;
    const auto r = theorem2_check(q, {}, 4);
    const double target = kHalfPi * std::tgamma(1.0) / (1.0 - std::sin(a));
    bool decreasing = true;
    for (std::size_t i = 1; i < r.pairing_values.size(); ++i)
      decreasing = decreasing && std::abs(r.pairing_values[i] - target) <
                                     std::abs(r.pairing_values[i - 1] - target);
    const double final_rel = std::abs(r.pairing_values.back() - target) / target;
    pass = pass && decreasing && final_rel <= 1e-4;
    detail += (detail.empty() ? "" : ", ") + std::string("a=") + fmt("%.1f", a) +
              (decreasing ? " decreasing" : " NOT decreasing") + " final rel " +
              fmt("%.3g", final_rel);
  }
  return {pass, detail};
}

Outcome theorem3() {
  SummabilityQuery q;
  q.psi1 = EntireFunctionSpec::cosine(0.05);
  const auto r = theorem3_check(q, {}, 4);
  const double limit_rel = std::abs(r.limit_value - r.target) / r.target;
  // First-order extrapolation of the two smallest eps, which sit a decade apart.
  const auto& v = r.pairing_values;
  const double extrap = v.back() + (v.back() - v[v.size() - 2]) / 9.0;
  const double extrap_rel = std::abs(extrap - r.target) / r.target;

  const double thr = type_threshold(0.0);
  bool rejects = true;
  for (double b : {thr, 1.0001 * thr, 0.2, 0.5}) {
    try {
      theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(b), EntireFunctionSpec::zero());
      rejects = false;
    } catch (const DomainError&) {
    }
  }
  bool accepts = true;
  try {
    theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(0.999 * thr), EntireFunctionSpec::zero());
  } catch (const DomainError&) {
    accepts = false;
  }
  return {limit_rel <= 1e-6 && extrap_rel <= 1e-6 && rejects && accepts,
          "limit rel " + fmt("%.3g", limit_rel) + ", extrapolated rel " + fmt("%.3g", extrap_rel) +
              ", type check " + (rejects && accepts ? "ok" : "WRONG")};
}

Outcome szego_olenko() {
  const double s = std::sqrt(2.0 / kPi);
  const double d0 = std::abs(measure_c(0.0) - s);
  const double d5 = std::abs(measure_c(0.5) - s);
  bool dominated = true;
  double margin = 1e300;
  for (double nu : {0.5, 1.0, 2.0, 5.0}) {
    const double gap = olenko_c(nu) - measure_c(nu);
    dominated = dominated && gap >= 0.0;
    margin = std::min(margin, gap);
  }
  return {d0 <= 1e-6 && d5 <= 1e-6 && dominated,
          "|c_0 - s| " + fmt("%.2g", d0) + ", |c_1/2 - s| " + fmt("%.2g", d5) +
              ", min olenko margin " + fmt("%.4f", margin)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"cross-method kernel agreement", cross_method},
      {"bound catalog certification", catalog},
      {"order-one recurrence identity", recurrence},
      {"integral representations", representations},
      {"large-index expansion remainder", theorem1},
      {"tau-integral closed forms", closed_forms},
      {"weak limit, constant multiplier", theorem2},
      {"weak limit, cosine multiplier", theorem3},
      {"half-order constant and Olenko estimate", szego_olenko},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s (%s) [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
