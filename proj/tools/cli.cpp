#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "klkit/asymptotics.hpp"
#include "klkit/bounds.hpp"
#include "klkit/errors.hpp"
#include "klkit/kernel.hpp"
#include "klkit/parallel.hpp"
#include "klkit/representations.hpp"
#include "klkit/serialize.hpp"
#include "klkit/summability.hpp"

namespace klkit::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double lo;
  double hi;
  std::size_t count;
};

struct Common {
  std::string format = "csv";
  std::string output;
  unsigned workers = 1;
  std::string spacing = "log";
  QuadratureConfig cfg;
};

unsigned default_workers() {
  if (const char* env = std::getenv("KLKIT_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

std::vector<double> axis(const GridSpec& g, const std::string& spacing) {
  if (g.count < 1) throw UsageError("grid counts must be at least 1");
  if (!(g.lo > 0) || !(g.hi >= g.lo)) throw UsageError("grid ranges must satisfy 0 < lo <= hi");
  if (spacing == "log") return log_space(g.lo, g.hi, g.count);
  std::vector<double> v(g.count, g.lo);
  for (std::size_t i = 1; i < g.count; ++i)
    v[i] = g.lo + (g.hi - g.lo) * static_cast<double>(i) / static_cast<double>(g.count - 1);
  return v;
}

std::string params_string(const BoundParams& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + "=" + format_double(v);
  }
  return s;
}

std::string bool_string(bool b) { return b ? "true" : "false"; }

// Writes to --output when given, otherwise to the command's stream.
void emit(const Common& c, std::ostream& out, const std::string& text) {
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + c.output);
  f << text;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string s = csv_row(header) + "\n";
  for (const auto& r : rows) s += csv_row(r) + "\n";
  return s;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  double x = 1.0;
  double tau = 1.0;
  std::string method = "oracle";
  unsigned N = 2;
};

int cmd_eval(const Common& c, const EvalArgs& a, std::ostream& out) {
  const EvaluationPoint p(a.x, a.tau);
  KernelEstimate est{};
  if (a.method == "oracle") {
    est = k_itau_oracle_estimate(p, c.cfg);
  } else if (a.method == "keyformula") {
    est = k_itau_keyformula_estimate(p, a.N, c.cfg);
  } else {
    est = k_itau_defseries_estimate(p);
  }
  const bool uses_n = a.method == "keyformula";
  if (c.format == "json") {
    json j = {{"x", a.x}, {"tau", a.tau}, {"method", a.method}, {"value", est.value},
              {"error", est.error}, {"N", uses_n ? json(a.N) : json(nullptr)}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    emit(c, out,
         csv_table({"x", "tau", "method", "N", "value", "error"},
                   {{format_double(a.x), format_double(a.tau), a.method,
                     uses_n ? std::to_string(a.N) : "", format_double(est.value),
                     format_double(est.error)}}));
  }
  return kExitOk;
}

// --- certify ----------------------------------------------------------------

struct CertifyArgs {
  std::string id;
  bool all = false;
  bool points = false;
  std::optional<double> nu, mu, delta, M, N, n;
  GridSpec x{0.01, 100.0, 25};
  GridSpec tau{0.1, 40.0, 25};
};

BoundDescriptor descriptor_for(const CertifyArgs& a) {
  const auto id = bound_id_from_string(a.id);
  if (!id) throw UsageError("unknown bound id " + a.id);
  BoundParams params;
  for (const auto& d : default_catalog()) {
    if (d.id == *id) {
      params = d.params;
      break;
    }
  }
  const std::pair<const char*, const std::optional<double>*> given[] = {
      {"nu", &a.nu}, {"mu", &a.mu}, {"delta", &a.delta},
      {"M", &a.M},   {"N", &a.N},   {"n", &a.n}};
  for (const auto& [name, v] : given)
    if (*v) params[name] = **v;
  try {
    return make_descriptor(*id, params);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int cmd_certify(const Common& c, const CertifyArgs& a, std::ostream& out) {
  if (a.all == !a.id.empty()) throw UsageError("certify needs exactly one of --id or --all");
  if (a.all && (a.nu || a.mu || a.delta || a.M || a.N || a.n))
    throw UsageError("bound parameters cannot be combined with --all");
  const auto xs = axis(a.x, c.spacing);
  const auto taus = axis(a.tau, c.spacing);
  std::vector<EvaluationPoint> grid;
  for (double x : xs)
    for (double t : taus) grid.emplace_back(x, t);

  std::vector<BoundCertificate> certs;
  if (a.all) {
    certs = certify_catalog(default_catalog(), grid, c.cfg, c.workers);
  } else {
    certs.push_back(certify_bound(descriptor_for(a), grid, c.cfg, c.workers));
  }

  bool pass = true;
  for (const auto& cert : certs) pass = pass && cert.pass;

  if (c.format == "json") {
    emit(c, out, (a.all ? certificates_to_json(certs) : certificate_to_json(certs.front())) + "\n");
  } else if (a.points) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& cert : certs) {
      const auto id = to_string(cert.descriptor.id);
      const auto ps = params_string(cert.descriptor.params);
      for (std::size_t i = 0; i < cert.grid.size(); ++i) {
        rows.push_back({id, ps, format_double(cert.grid[i].x), format_double(cert.grid[i].tau),
                        cert.ratios[i] ? format_double(*cert.ratios[i]) : ""});
      }
    }
    emit(c, out, csv_table({"id", "params", "x", "tau", "ratio"}, rows));
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& cert : certs) {
      const auto& w = cert.worst_point();
      rows.push_back({to_string(cert.descriptor.id), params_string(cert.descriptor.params),
                      format_double(cert.max_ratio), format_double(w.x), format_double(w.tau),
                      std::to_string(cert.grid.size()), std::to_string(cert.indeterminate.size()),
                      bool_string(cert.pass)});
    }
    emit(c, out,
         csv_table({"id", "params", "max_ratio", "worst_x", "worst_tau", "points",
                    "indeterminate", "pass"},
                   rows));
  }
  return pass ? kExitOk : kExitCheckFailed;
}

// --- asympt -----------------------------------------------------------------

struct AsymptArgs {
  std::vector<double> x{1.0};
  unsigned N = 1;
  double tau0 = 1.0;
  double X = 5.0;
  std::vector<double> taus;
  GridSpec tau{1.0, 40.0, 25};
};

int cmd_asympt(const Common& c, const AsymptArgs& a, std::ostream& out, std::ostream& err) {
  if (a.N == 0)
    err << "warning: the remainder bound is undefined for N = 0; N = 0 rows are checked "
           "against the N = 1 bound\n";
  const auto taus = a.taus.empty() ? axis(a.tau, c.spacing) : a.taus;
  for (double x : a.x)
    if (!(x > 0) || x > a.X) throw UsageError("x values must lie in (0, X]");
  for (double t : taus)
    if (!(t >= a.tau0)) throw UsageError("tau values must be at least tau0");

  std::vector<EvaluationPoint> pts;
  for (double x : a.x)
    for (double t : taus) pts.emplace_back(x, t);
  std::vector<ExpansionReport> reports(pts.size());
  detail::parallel_for(pts.size(), c.workers, [&](std::size_t i) {
    reports[i] = expansion_report(pts[i], a.N, a.tau0, a.X, c.cfg);
  });

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.within_bound;
  if (c.format == "json") {
    emit(c, out, expansion_reports_to_json(reports) + "\n");
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) rows.push_back(expansion_csv_fields(r));
    emit(c, out, csv_table(expansion_csv_header(), rows));
  }
  return pass ? kExitOk : kExitCheckFailed;
}

// --- identities -------------------------------------------------------------

struct IdentityRow {
  std::string check;
  std::string point;
  double residual;
  double tolerance;
  bool pass;
};

std::string point_string(double x, double tau) {
  return "x=" + format_double(x) + ";tau=" + format_double(tau);
}

std::vector<IdentityRow> identity_suite(const QuadratureConfig& cfg, unsigned workers) {
  std::vector<std::function<IdentityRow()>> jobs;
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      jobs.emplace_back([=] {
        const auto r = check_recurrence_identity(EvaluationPoint(x, t), cfg);
        const double rel = r.abs_residual / (std::abs(r.lhs) + 1e-300);
        return IdentityRow{"RECURRENCE", point_string(x, t), rel, 1e-10, r.pass};
      });
    }
  }
  struct RepCase {
    Representation rep;
    double x, tau, tol;
  };
  for (const auto& rc : {RepCase{Representation::SquaredDoubling, 1.0, 1.0, 1e-8},
                         RepCase{Representation::BesselJOrderShift, 1.0, 1.0, 1e-8},
                         RepCase{Representation::SquaredSine, 0.5, 1.0, 1e-6},
                         RepCase{Representation::SquaredJ1Cosine, 0.5, 2.0, 1e-4}}) {
    jobs.emplace_back([=] {
      const double r = verify_representation(rc.rep, EvaluationPoint(rc.x, rc.tau), cfg);
      return IdentityRow{to_string(rc.rep), point_string(rc.x, rc.tau), r, rc.tol, r <= rc.tol};
    });
  }
  for (double s : {0.5, 1.0, 1.5}) {
    for (double t : {1.0, 3.0}) {
      const std::string pt = "s=" + format_double(s) + ";tau=" + format_double(t);
      jobs.emplace_back([=] {
        const double r = mellin_k_identity(s, t, cfg);
        return IdentityRow{"MELLIN_K", pt, r, 1e-8, r <= 1e-8};
      });
      jobs.emplace_back([=] {
        const double r = gamma_product_identity(s, t, cfg);
        return IdentityRow{"GAMMA_PRODUCT", pt, r, 1e-8, r <= 1e-8};
      });
    }
  }
  std::vector<std::optional<IdentityRow>> rows(jobs.size());
  detail::parallel_for(jobs.size(), workers, [&](std::size_t i) { rows[i] = jobs[i](); });
  std::vector<IdentityRow> out;
  for (auto& r : rows) out.push_back(*r);
  return out;
}

int cmd_identities(const Common& c, std::ostream& out) {
  const auto rows = identity_suite(c.cfg, c.workers);
  bool pass = true;
  for (const auto& r : rows) pass = pass && r.pass;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"check", r.check}, {"point", r.point}, {"residual", r.residual},
                     {"tolerance", r.tolerance}, {"pass", r.pass}});
    emit(c, out, arr.dump(2) + "\n");
  } else {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows)
      table.push_back({r.check, r.point, format_double(r.residual), format_double(r.tolerance),
                       bool_string(r.pass)});
    emit(c, out, csv_table({"check", "point", "residual", "tolerance", "pass"}, table));
  }
  return pass ? kExitOk : kExitCheckFailed;
}

// --- summ -------------------------------------------------------------------

struct SummArgs {
  std::string psi1 = "one";
  std::string psi2 = "zero";
  double b = 0.05;
  double a = 0.0;
  double s = 1.0;
  double x = 1.0;
  std::vector<double> eps;
  bool trace = false;
};

EntireFunctionSpec entire_from_name(const std::string& name, double b) {
  if (name == "one") return EntireFunctionSpec::one();
  if (name == "zero") return EntireFunctionSpec::zero();
  return EntireFunctionSpec::cosine(b);
}

int cmd_summ(const Common& c, const SummArgs& a, std::ostream& out, std::ostream& err) {
  SummabilityQuery q;
  q.x = a.x;
  q.a = a.a;
  q.mellin_s = a.s;
  if (!a.eps.empty()) q.epsilon_schedule = a.eps;
  try {
    q.psi1 = entire_from_name(a.psi1, a.b);
    q.psi2 = entire_from_name(a.psi2, a.b);
    q.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const double threshold = type_threshold(q.a);
  for (const auto* f : {&q.psi1, &q.psi2}) {
    if (f->exp_type >= threshold) {
      throw UsageError("exponential type " + format_double(f->exp_type) +
                       " must be below (1 - sin a)/(2e) = " + format_double(threshold));
    }
  }
  const bool th2 = a.psi1 == "one" && a.psi2 == "zero";
  SummabilityReport r;
  try {
    r = th2 ? theorem2_check(q, c.cfg, c.workers) : theorem3_check(q, c.cfg, c.workers);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (a.trace) {
    for (double e : q.epsilon_schedule)
      err << "trace: eps=" << format_double(e) << " f_eps(x=" << format_double(q.x)
          << ")=" << format_double(f_epsilon(q, e, c.cfg)) << "\n";
  }
  if (c.format == "json") {
    emit(c, out, summability_report_to_json(r) + "\n");
  } else {
    std::vector<std::vector<std::string>> rows;
    const double scale = std::abs(r.target);
    auto row = [&](const std::string& eps, double v) {
      const double e = std::abs(v - r.target);
      rows.push_back({eps, format_double(v), format_double(r.target), format_double(e),
                      format_double(e / scale)});
    };
    for (std::size_t i = 0; i < r.pairing_values.size(); ++i)
      row(format_double(q.epsilon_schedule[i]), r.pairing_values[i]);
    row("0", r.limit_value);
    emit(c, out, csv_table({"eps", "pairing", "target", "abs_error", "rel_error"}, rows));
  }
  return r.converged ? kExitOk : kExitCheckFailed;
}

// --- catalog ----------------------------------------------------------------

int cmd_catalog(const Common& c, std::ostream& out) {
  const auto cat = default_catalog();
  if (c.format == "json") {
    emit(c, out, catalog_to_json(cat) + "\n");
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : cat)
    rows.push_back({to_string(d.id), d.family, params_string(d.params), format_double(d.order_mu),
                    to_string(d.measured), d.parameter_domain, d.validity});
  emit(c, out,
       csv_table({"id", "family", "params", "order_mu", "measured", "parameter_domain", "validity"},
                 rows));
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "Write the table to this file instead of stdout");
  sub->add_option("--workers", c.workers, "Worker threads (default: $KLKIT_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--abs-tol", c.cfg.abs_tol, "Quadrature absolute tolerance")
      ->capture_default_str();
  sub->add_option("--rel-tol", c.cfg.rel_tol, "Quadrature relative tolerance")
      ->capture_default_str();
  sub->add_option("--max-refinements", c.cfg.max_refinements, "Quadrature panel budget")
      ->capture_default_str();
  sub->add_option("--truncation-threshold", c.cfg.truncation_threshold,
                  "Relative envelope at which semi-infinite tails are cut")
      ->capture_default_str();
}

void add_grid(CLI::App* sub, const std::string& name, GridSpec& g, Common& c,
              bool with_spacing) {
  sub->add_option("--" + name + "-min", g.lo, "Lower end of the " + name + " grid")
      ->capture_default_str();
  sub->add_option("--" + name + "-max", g.hi, "Upper end of the " + name + " grid")
      ->capture_default_str();
  sub->add_option("--n" + name, g.count, "Number of " + name + " grid points")
      ->capture_default_str();
  if (with_spacing)
    sub->add_option("--spacing", c.spacing, "Grid spacing")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for the Macdonald kernel K_{i tau}(x): evaluation, inequality "
               "certification, asymptotics and summability experiments"};
  app.require_subcommand(1);
  Common common;
  common.workers = default_workers();

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate K_{i tau}(x) by one method");
  add_common(eval, common);
  eval->add_option("--x", ev.x, "Argument x > 0")->required();
  eval->add_option("--tau", ev.tau, "Index tau > 0")->required();
  eval->add_option("--method", ev.method, "Evaluator")
      ->check(CLI::IsMember({"oracle", "keyformula", "defseries"}))
      ->capture_default_str();
  eval->add_option("--N", ev.N, "Truncation order of the key formula")->capture_default_str();
  eval->footer("CSV columns: x,tau,method,N,value,error (N empty unless keyformula)");

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Certify catalog inequalities on a grid");
  add_common(certify, common);
  certify->add_option("--id", ca.id, "Catalog id, see `klkit catalog`");
  certify->add_flag("--all", ca.all, "Certify every catalog entry with its default parameters");
  certify->add_flag("--points", ca.points, "Emit one CSV row per grid point");
  certify->add_option("--nu", ca.nu, "Bessel order parameter");
  certify->add_option("--mu", ca.mu, "Power parameter of the family bound");
  certify->add_option("--delta", ca.delta, "Exponential-decay parameter");
  certify->add_option("--M", ca.M, "Composite bound: beta-sum length");
  certify->add_option("--N", ca.N, "Composite bound: gamma-sum length");
  certify->add_option("--n", ca.n, "Iteration index of the Lebedev-type sequence");
  add_grid(certify, "x", ca.x, common, true);
  add_grid(certify, "tau", ca.tau, common, false);
  certify->footer(
      "CSV columns: id,params,max_ratio,worst_x,worst_tau,points,indeterminate,pass\n"
      "With --points: id,params,x,tau,ratio (ratio empty where the kernel was indeterminate)\n"
      "params is a ';'-separated list of name=value. Exit 0 iff every certificate passes.");

  AsymptArgs aa;
  auto* asympt = app.add_subcommand("asympt", "Large-tau expansion remainder against its bound");
  add_common(asympt, common);
  asympt->add_option("--x", aa.x, "Argument values (0 < x <= X)")->capture_default_str();
  asympt->add_option("--N", aa.N, "Expansion order")->capture_default_str();
  asympt->add_option("--tau0", aa.tau0, "Lower end of the tau range of the bound")
      ->capture_default_str();
  asympt->add_option("--X", aa.X, "Upper end of the x range of the bound")
      ->capture_default_str();
  asympt->add_option("--taus", aa.taus, "Explicit tau values (overrides the tau grid)");
  add_grid(asympt, "tau", aa.tau, common, true);
  asympt->footer("CSV columns: x,tau,N,leading,measured,explicit,bound,pass\n"
                 "measured and explicit are remainders at the scale sqrt(2pi/tau)e^{-pi tau/2}. "
                 "Exit 0 iff every row passes.");

  auto* identities = app.add_subcommand("identities", "Check integral identities and recurrences");
  add_common(identities, common);
  identities->footer("CSV columns: check,point,residual,tolerance,pass");

  SummArgs sa;
  auto* summ = app.add_subcommand("summ", "Gaussian-regularized inversion pairings as eps -> 0");
  add_common(summ, common);
  summ->add_option("--psi1", sa.psi1, "Even entire multiplier of the cosh term")
      ->check(CLI::IsMember({"one", "zero", "cos"}))
      ->capture_default_str();
  summ->add_option("--psi2", sa.psi2, "Even entire multiplier of the tau sinh term")
      ->check(CLI::IsMember({"one", "zero", "cos"}))
      ->capture_default_str();
  summ->add_option("--b", sa.b, "Frequency of cos(b tau)")->capture_default_str();
  summ->add_option("--a", sa.a, "Angle a in [0, pi/2)")->capture_default_str();
  summ->add_option("--s", sa.s, "Mellin exponent s > 0")->capture_default_str();
  summ->add_option("--x", sa.x, "Point for --trace")->capture_default_str();
  summ->add_option("--eps", sa.eps, "Regularization schedule (default 1e-1 ... 1e-5)");
  summ->add_flag("--trace", sa.trace, "Print pointwise f_eps(x) values to stderr (diagnostic)");
  summ->footer("CSV columns: eps,pairing,target,abs_error,rel_error (final row eps=0 is the limit)\n"
               "Exit 0 iff the pairings converge to the target.");

  auto* catalog = app.add_subcommand("catalog", "List the inequality catalog");
  add_common(catalog, common);
  catalog->footer("CSV columns: id,family,params,order_mu,measured,parameter_domain,validity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    common.cfg.validate();
    if (eval->parsed()) return cmd_eval(common, ev, out);
    if (certify->parsed()) return cmd_certify(common, ca, out);
    if (asympt->parsed()) return cmd_asympt(common, aa, out, err);
    if (identities->parsed()) return cmd_identities(common, out);
    if (summ->parsed()) return cmd_summ(common, sa, out, err);
    return cmd_catalog(common, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << " (value " << format_double(e.value())
        << ", error estimate " << format_double(e.error_estimate()) << ")\n";
    return kExitAccuracy;
  }
}

}  // namespace klkit::cli
