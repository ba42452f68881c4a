#include "klkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "klkit/errors.hpp"
#include "klkit/parallel.hpp"

namespace klkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

struct Entry {
  BoundId id;
  const char* name;
  std::vector<std::string> params;
  const char* family;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {BoundId::LEBEDEV_15, "LEBEDEV_15", {}, "lebedev-explicit-constant"},
      {BoundId::FAMILY_17, "FAMILY_17", {"nu", "mu"}, "complex-order-family"},
      {BoundId::HALF_RANGE_18, "HALF_RANGE_18", {"nu"}, "szego-half-range"},
      {BoundId::OLENKO_19, "OLENKO_19", {"nu"}, "olenko-constant"},
      {BoundId::MODIFIED_110, "MODIFIED_110", {}, "modified-lebedev"},
      {BoundId::DELTA_111, "DELTA_111", {"delta"}, "shifted-half-range"},
      {BoundId::MU_EQ_NU_112, "MU_EQ_NU_112", {"nu"}, "equal-order"},
      {BoundId::LS_RE_113, "LS_RE_113", {}, "lebedev-skalskaya-real"},
      {BoundId::LS_IM_114, "LS_IM_114", {}, "lebedev-skalskaya-imaginary"},
      {BoundId::K1_115, "K1_115", {"nu"}, "unit-real-order"},
      {BoundId::VIA_116_117, "VIA_116_117", {"nu"}, "recurrence-transfer"},
      {BoundId::DELTA_118, "DELTA_118", {"delta"}, "recurrence-transfer-shifted"},
      {BoundId::COMPOSITE_126, "COMPOSITE_126", {"delta", "M", "N"}, "composite-asymptotic"},
      {BoundId::ITER_128, "ITER_128", {}, "iterated-step-2"},
      {BoundId::ITER_129, "ITER_129", {}, "iterated-step-3"},
      {BoundId::ITER_130, "ITER_130", {"n"}, "iterated-general"},
      {BoundId::EXP_DECAY_315, "EXP_DECAY_315", {"delta"}, "exponential-decay-k0"},
  };
  return table;
}

const Entry& entry(BoundId id) {
  for (const auto& e : entries())
    if (e.id == id) return e;
  throw DomainError("unknown bound id");
}

double log_sinh(double z) {
  if (z > 20.0) return z - kLn2 + std::log1p(-std::exp(-2.0 * z));
  return std::log(std::sinh(z));
}

double re_log_gamma(double re, double im) {
  return complex_log_gamma(Complex(re, im)).real();
}

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

const std::vector<BoundId>& all_bound_ids() {
  static const std::vector<BoundId> ids = [] {
    std::vector<BoundId> v;
    for (const auto& e : entries()) v.push_back(e.id);
    return v;
  }();
  return ids;
}

std::string to_string(BoundId id) { return entry(id).name; }

std::optional<BoundId> bound_id_from_string(const std::string& name) {
  for (const auto& e : entries())
    if (name == e.name) return e.id;
  return std::nullopt;
}

std::string to_string(MeasuredQuantity q) {
  switch (q) {
    case MeasuredQuantity::AbsKItau: return "abs_k_itau";
    case MeasuredQuantity::AbsKComplex: return "abs_k_complex";
    case MeasuredQuantity::AbsReKComplex: return "abs_re_k_complex";
    case MeasuredQuantity::AbsImKComplex: return "abs_im_k_complex";
  }
  return "unknown";
}

const std::vector<std::string>& bound_parameter_names(BoundId id) {
  return entry(id).params;
}

bool BoundDescriptor::valid_at(const EvaluationPoint& p) const {
  return p.x > 0 && p.tau > 0;
}

double BoundDescriptor::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw DomainError(to_string(id) + ": missing parameter " + name);
  return it->second;
}

BoundDescriptor make_descriptor(BoundId id, const BoundParams& params) {
  const Entry& e = entry(id);
  for (const auto& [k, v] : params) {
    require(std::find(e.params.begin(), e.params.end(), k) != e.params.end(),
            std::string(e.name) + ": unknown parameter " + k);
    require(std::isfinite(v), std::string(e.name) + ": parameter " + k + " not finite");
  }
  for (const auto& k : e.params)
    require(params.count(k) == 1, std::string(e.name) + ": missing parameter " + k);

  BoundDescriptor d{id, params, 0.0, MeasuredQuantity::AbsKItau, "", "x > 0, tau > 0",
                    e.family};
  auto p = [&](const char* k) { return params.at(k); };
  const std::string name = e.name;
  switch (id) {
    case BoundId::LEBEDEV_15:
    case BoundId::MODIFIED_110:
    case BoundId::ITER_128:
    case BoundId::ITER_129:
      d.parameter_domain = "none";
      break;
    case BoundId::FAMILY_17: {
      const double nu = p("nu"), mu = p("mu");
      require(nu >= -0.5, name + ": requires nu >= -1/2");
      require(mu < 0.5 * (nu + 0.5), name + ": requires mu < (nu + 1/2)/2");
      require(std::abs(mu) <= 3.0, name + ": requires |mu| <= 3");
      d.order_mu = mu;
      d.measured = mu == 0.0 ? MeasuredQuantity::AbsKItau : MeasuredQuantity::AbsKComplex;
      d.parameter_domain = "nu >= -1/2, mu < (nu + 1/2)/2, |mu| <= 3";
      break;
    }
    case BoundId::HALF_RANGE_18: {
      const double nu = p("nu");
      require(nu > -0.5 && nu <= 0.5, name + ": requires -1/2 < nu <= 1/2");
      d.parameter_domain = "-1/2 < nu <= 1/2";
      break;
    }
    case BoundId::OLENKO_19: {
      require(p("nu") > 0.0, name + ": requires nu > 0");
      d.parameter_domain = "nu > 0";
      break;
    }
    case BoundId::DELTA_111: {
      const double delta = p("delta");
      require(delta > 0.0 && delta < 1.0, name + ": requires 0 < delta < 1");
      d.parameter_domain = "0 < delta < 1";
      break;
    }
    case BoundId::MU_EQ_NU_112: {
      const double nu = p("nu");
      require(nu >= -0.5 && nu < 0.5, name + ": requires -1/2 <= nu < 1/2");
      d.order_mu = nu;
      d.measured = nu == 0.0 ? MeasuredQuantity::AbsKItau : MeasuredQuantity::AbsKComplex;
      d.parameter_domain = "-1/2 <= nu < 1/2";
      break;
    }
    case BoundId::LS_RE_113:
      d.order_mu = 0.5;
      d.measured = MeasuredQuantity::AbsReKComplex;
      d.parameter_domain = "none";
      break;
    case BoundId::LS_IM_114:
      d.order_mu = 0.5;
      d.measured = MeasuredQuantity::AbsImKComplex;
      d.parameter_domain = "none";
      break;
    case BoundId::K1_115:
    case BoundId::VIA_116_117: {
      require(p("nu") >= 1.5 + 1e-3, name + ": requires nu >= 3/2 + 1e-3");
      if (id == BoundId::K1_115) {
        d.order_mu = 1.0;
        d.measured = MeasuredQuantity::AbsKComplex;
      }
      d.parameter_domain = "nu >= 3/2 + 1e-3";
      break;
    }
    case BoundId::DELTA_118: {
      require(p("delta") >= 1e-3, name + ": requires delta >= 1e-3");
      d.parameter_domain = "delta >= 1e-3";
      break;
    }
    case BoundId::COMPOSITE_126: {
      require(p("delta") > 0.0, name + ": requires delta > 0");
      require(is_integral(p("M")) && p("M") >= 1.0 && p("M") <= 50.0,
              name + ": requires integer 1 <= M <= 50");
      require(is_integral(p("N")) && p("N") >= 1.0 && p("N") <= 50.0,
              name + ": requires integer 1 <= N <= 50");
      d.parameter_domain = "delta > 0, integers 1 <= M, N <= 50";
      break;
    }
    case BoundId::ITER_130: {
      require(is_integral(p("n")) && p("n") >= 1.0 && p("n") <= 20.0,
              name + ": requires integer 1 <= n <= 20");
      d.parameter_domain = "integer 1 <= n <= 20";
      break;
    }
    case BoundId::EXP_DECAY_315: {
      const double delta = p("delta");
      require(delta >= 0.0 && delta < 0.5 * kPi, name + ": requires 0 <= delta < pi/2");
      d.parameter_domain = "0 <= delta < pi/2";
      break;
    }
  }
  return d;
}

double olenko_c(double nu) {
  if (!(nu > 0) || !std::isfinite(nu)) throw DomainError("olenko_c: requires nu > 0");
  const double c = std::cbrt(nu);
  return kLandauB *
         std::sqrt(c + kOlenkoAlpha / c + 0.3 * kOlenkoAlpha * kOlenkoAlpha / nu);
}

double c_nu(double nu) {
  if (nu < -0.5) throw DomainError("c_nu: requires nu >= -1/2");
  if (nu <= 0.5) return std::sqrt(2.0 / kPi);
  return olenko_c(nu);
}

double measure_c(double nu, double x_max, unsigned step_density) {
  if (nu < -0.5) throw DomainError("measure_c: requires nu >= -1/2");
  if (!(x_max > 0) || step_density == 0)
    throw DomainError("measure_c: requires x_max > 0 and step_density >= 1");
  auto g = [nu](double x) { return std::sqrt(x) * std::abs(bessel_j(nu, x)); };
  const double h = 1.0 / step_density;
  const auto n = static_cast<std::size_t>(std::ceil(x_max / h));
  const std::size_t count = n - 1;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x_max * static_cast<double>(i + 1) / static_cast<double>(n);
    ys[i] = g(xs[i]);
  }
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t i = 0; i <= count; ++i) {
    const bool left = i == 0 || ys[i] >= ys[i - 1];
    const bool right = i == count || ys[i] >= ys[i + 1];
    if (left && right) peaks.emplace_back(ys[i], i);
  }
  std::sort(peaks.begin(), peaks.end(), std::greater<>());
  double best = 0.0;
  const std::size_t refine = std::min<std::size_t>(peaks.size(), 16);
  constexpr double kGolden = 0.6180339887498949;
  for (std::size_t k = 0; k < refine; ++k) {
    const std::size_t i = peaks[k].second;
    double a = i == 0 ? 0.5 * xs[0] : xs[i - 1];
    double b = i == count ? xs[i] : xs[i + 1];
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < 80 && b - a > 1e-13 * b; ++it) {
      if (gc > gd) {
        b = d; d = c; gd = gc;
        c = b - kGolden * (b - a); gc = g(c);
      } else {
        a = c; c = d; gc = gd;
        d = a + kGolden * (b - a); gd = g(d);
      }
    }
    best = std::max({best, peaks[k].first, gc, gd});
  }
  return best;
}

double log_bound(const BoundDescriptor& d, const EvaluationPoint& p) {
  if (!d.valid_at(p)) throw DomainError(to_string(d.id) + ": point outside validity region");
  const double x = p.x, tau = p.tau;
  const double lx = std::log(x);
  const double lsh = log_sinh(kPi * tau);
  auto par = [&](const char* k) { return d.param(k); };
  switch (d.id) {
    case BoundId::LEBEDEV_15:
      return std::lgamma(0.25) - 0.5 * kLn2 - 0.25 * lx - 0.5 * lsh;
    case BoundId::FAMILY_17: {
      const double nu = par("nu"), mu = par("mu");
      return (nu - mu - 1.0) * kLn2 + std::log(c_nu(nu)) +
             std::lgamma(0.5 * (nu + 1.5)) + std::lgamma(0.5 * (nu - 2.0 * mu + 0.5)) -
             std::lgamma(nu - mu + 1.0) + re_log_gamma(nu - mu + 1.0, tau) +
             (mu - nu - 0.5) * lx;
    }
    case BoundId::HALF_RANGE_18:
    case BoundId::OLENKO_19: {
      const double nu = par("nu");
      const double lead = d.id == BoundId::OLENKO_19 ? std::log(olenko_c(nu)) : 0.0;
      return lead + std::lgamma(nu + 0.5) - std::lgamma(nu + 1.0) +
             re_log_gamma(nu + 1.0, tau) - (nu + 0.5) * lx;
    }
    case BoundId::MODIFIED_110:
      return 0.5 * (std::log(kPi * kPi * tau) - lx - lsh);
    case BoundId::DELTA_111: {
      const double delta = par("delta");
      return std::lgamma(delta) - delta * lx - std::lgamma(delta + 0.5) +
             re_log_gamma(0.5 + delta, tau);
    }
    case BoundId::MU_EQ_NU_112: {
      const double nu = par("nu");
      return std::lgamma(0.5 * (nu + 1.5)) + std::lgamma(0.5 * (0.5 - nu)) +
             0.5 * (std::log(tau) - kLn2 - lx - lsh);
    }
    case BoundId::LS_RE_113:
    case BoundId::LS_IM_114:
      return 0.5 * (std::log(kPi * kPi * tau) - kLn2 - lx - lsh);
    case BoundId::K1_115:
    case BoundId::VIA_116_117: {
      const double nu = par("nu");
      double v = (nu - 2.0) * kLn2 + std::log(c_nu(nu)) + std::lgamma(0.5 * (nu + 1.5)) +
                 std::lgamma(0.5 * (nu - 1.5)) - std::lgamma(nu) + re_log_gamma(nu, tau);
      if (d.id == BoundId::K1_115) return v + (0.5 - nu) * lx;
      return v - std::log(tau) + (1.5 - nu) * lx;
    }
    case BoundId::DELTA_118: {
      const double delta = par("delta");
      return (delta - 0.5) * kLn2 + std::log(c_nu(1.5 + delta)) +
             std::lgamma(0.5 * (3.0 + delta)) + std::lgamma(0.5 * delta) - std::log(tau) -
             std::lgamma(1.5 + delta) + re_log_gamma(1.5 + delta, tau) - delta * lx;
    }
    case BoundId::COMPOSITE_126: {
      const double delta = par("delta");
      const int M = static_cast<int>(par("M"));
      const int N = static_cast<int>(par("N"));
      const double sx = std::sqrt(x);
      const double b = kLandauB, al = kOlenkoAlpha;
      const double pow_d = std::pow(1.0 + tau, delta);
      double sum_n = 0.0;
      for (int n = 1; n <= N - 1; ++n)
        sum_n += std::ldexp(std::tgamma(2.0 * n - 0.5) * beta(2.0 * n + 1.5, 2.0 * n - 0.5),
                            2 * n - 1);
      double sum_m = 0.0;
      for (int n = 0; n <= M - 1; ++n)
        sum_m += std::ldexp(std::tgamma(2.0 * n + 0.5) * beta(2.0 * n + 2.5, 2.0 * n + 0.5),
                            2 * n);
      const double tail =
          std::ldexp(std::tgamma(2.0 * N - 1.5) * beta(2.0 * N - 1.5, 2.0 * N + 0.5), 2 * N) +
          std::ldexp(std::tgamma(2.0 * M - 0.5) * beta(2.0 * M - 0.5, 2.0 * M + 1.5),
                     2 * (M - 1));
      const double bracket = 2.0 / std::sqrt(kPi * x) * (1.0 + 2.0 * tau) / pow_d +
                             4.0 * sx / std::sqrt(kPi) * (pow_d - 1.0) + 1.0 +
                             2.0 * b * std::sqrt(2.0 * x) * std::sqrt(1.0 + al + 0.3 * al * al) +
                             4.0 * sx / kPi * (sum_n + sum_m) + 2.0 * sx / (kPi * kPi) * tail;
      return 0.5 * std::log(kPi) - 0.5 * (std::log(tau) + lsh) + 0.5 * std::log(bracket);
    }
    case BoundId::ITER_128:
      return std::lgamma(0.125) - 0.75 * kLn2 - 0.125 * lx - 0.25 * log_sinh(2 * kPi * tau);
    case BoundId::ITER_129:
      return std::lgamma(1.0 / 16) - 0.875 * kLn2 - lx / 16 - 0.125 * log_sinh(4 * kPi * tau);
    case BoundId::ITER_130: {
      const int n = static_cast<int>(par("n"));
      const double w = std::ldexp(1.0, -n);
      return std::lgamma(0.5 * w) - (1.0 - w) * kLn2 -
             w * (0.5 * lx + log_sinh(std::ldexp(kPi * tau, n - 1)));
    }
    case BoundId::EXP_DECAY_315: {
      const double delta = par("delta");
      return -delta * tau + std::log(bessel_k0(x * std::cos(delta)));
    }
  }
  throw DomainError("unknown bound id");
}

double evaluate_bound(const BoundDescriptor& d, const EvaluationPoint& p) {
  return std::exp(log_bound(d, p));
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
  if (!(lo > 0) || !(hi >= lo) || n == 0) throw DomainError("log_space: invalid range");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<EvaluationPoint> log_grid(double x_lo, double x_hi, std::size_t nx,
                                      double tau_lo, double tau_hi, std::size_t ntau) {
  std::vector<EvaluationPoint> g;
  g.reserve(nx * ntau);
  for (double x : log_space(x_lo, x_hi, nx))
    for (double t : log_space(tau_lo, tau_hi, ntau)) g.emplace_back(x, t);
  return g;
}

std::vector<EvaluationPoint> default_grid() { return log_grid(0.01, 100.0, 25, 0.1, 40.0, 25); }

std::vector<BoundDescriptor> default_catalog() {
  using B = BoundId;
  return {
      make_descriptor(B::LEBEDEV_15),
      make_descriptor(B::FAMILY_17, {{"nu", 0.3}, {"mu", 0.1}}),
      make_descriptor(B::FAMILY_17, {{"nu", 2.0}, {"mu", 0.5}}),
      make_descriptor(B::HALF_RANGE_18, {{"nu", 0.25}}),
      make_descriptor(B::OLENKO_19, {{"nu", 1.0}}),
      make_descriptor(B::MODIFIED_110),
      make_descriptor(B::DELTA_111, {{"delta", 0.5}}),
      make_descriptor(B::MU_EQ_NU_112, {{"nu", -0.25}}),
      make_descriptor(B::LS_RE_113),
      make_descriptor(B::LS_IM_114),
      make_descriptor(B::K1_115, {{"nu", 2.0}}),
      make_descriptor(B::VIA_116_117, {{"nu", 2.0}}),
      make_descriptor(B::DELTA_118, {{"delta", 0.5}}),
      make_descriptor(B::COMPOSITE_126, {{"delta", 0.5}, {"M", 1.0}, {"N", 1.0}}),
      make_descriptor(B::ITER_128),
      make_descriptor(B::ITER_129),
      make_descriptor(B::ITER_130, {{"n", 3.0}}),
      make_descriptor(B::EXP_DECAY_315, {{"delta", 0.0}}),
      make_descriptor(B::EXP_DECAY_315, {{"delta", 0.5}}),
  };
}

namespace {

double measure_at(MeasuredQuantity q, double mu, const EvaluationPoint& p,
                  const QuadratureConfig& cfg) {
  if (q == MeasuredQuantity::AbsKItau) return std::abs(k_itau_oracle(p, cfg));
  const Complex k = k_complex_order(OrderSpec(mu, p.tau), p.x, cfg);
  switch (q) {
    case MeasuredQuantity::AbsReKComplex: return std::abs(k.real());
    case MeasuredQuantity::AbsImKComplex: return std::abs(k.imag());
    default: return std::abs(k);
  }
}

// Descriptors measuring the same kernel quantity share evaluations.
std::pair<bool, double> kernel_key(const BoundDescriptor& d) {
  return {d.measured == MeasuredQuantity::AbsKItau, d.order_mu};
}

}  // namespace

std::vector<std::optional<double>> measure_kernel(const BoundDescriptor& d,
                                                  const std::vector<EvaluationPoint>& grid,
                                                  const QuadratureConfig& cfg,
                                                  unsigned workers) {
  std::vector<std::optional<double>> out(grid.size());
  detail::parallel_for(grid.size(), workers, [&](std::size_t i) {
    try {
      out[i] = measure_at(d.measured, d.order_mu, grid[i], cfg);
    } catch (const AccuracyError&) {
      out[i] = std::nullopt;
    }
  });
  return out;
}

BoundCertificate assemble_certificate(const BoundDescriptor& d,
                                      const std::vector<EvaluationPoint>& grid,
                                      const std::vector<std::optional<double>>& kernel) {
  BoundCertificate c{d, grid, {}, 0.0, 0, {}, false};
  c.ratios.resize(grid.size());
  bool any = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!d.valid_at(grid[i])) continue;
    if (!kernel[i]) {
      c.indeterminate.push_back(i);
      continue;
    }
    const double r = std::exp(std::log(*kernel[i]) - log_bound(d, grid[i]));
    c.ratios[i] = r;
    if (!any || r > c.max_ratio) {
      c.max_ratio = r;
      c.worst_index = i;
      any = true;
    }
  }
  c.pass = any && c.indeterminate.empty() && c.max_ratio <= 1.0 + kRatioSlack;
  return c;
}

BoundCertificate certify_bound(const BoundDescriptor& d,
                               const std::vector<EvaluationPoint>& grid,
                               const QuadratureConfig& cfg, unsigned workers) {
  return assemble_certificate(d, grid, measure_kernel(d, grid, cfg, workers));
}

std::vector<BoundCertificate> certify_catalog(const std::vector<BoundDescriptor>& ds,
                                              const std::vector<EvaluationPoint>& grid,
                                              const QuadratureConfig& cfg,
                                              unsigned workers) {
  struct Cached {
    std::pair<bool, double> key;
    std::vector<std::optional<Complex>> values;
  };
  std::vector<Cached> cache;
  auto lookup = [&](const BoundDescriptor& d) -> const Cached& {
    const auto key = kernel_key(d);
    for (const auto& c : cache)
      if (c.key == key) return c;
    Cached c{key, std::vector<std::optional<Complex>>(grid.size())};
    detail::parallel_for(grid.size(), workers, [&](std::size_t i) {
      try {
        if (key.first)
          c.values[i] = Complex(k_itau_oracle(grid[i], cfg), 0.0);
        else
          c.values[i] = k_complex_order(OrderSpec(key.second, grid[i].tau), grid[i].x, cfg);
      } catch (const AccuracyError&) {
        c.values[i] = std::nullopt;
      }
    });
    cache.push_back(std::move(c));
    return cache.back();
  };
  std::vector<BoundCertificate> out;
  out.reserve(ds.size());
  for (const auto& d : ds) {
    const Cached& c = lookup(d);
    std::vector<std::optional<double>> kernel(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!c.values[i]) continue;
      const Complex k = *c.values[i];
      switch (d.measured) {
        case MeasuredQuantity::AbsReKComplex: kernel[i] = std::abs(k.real()); break;
        case MeasuredQuantity::AbsImKComplex: kernel[i] = std::abs(k.imag()); break;
        default: kernel[i] = std::abs(k); break;
      }
    }
    out.push_back(assemble_certificate(d, grid, kernel));
  }
  return out;
}

}  // namespace klkit
