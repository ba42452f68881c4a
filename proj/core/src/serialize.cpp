#include "klkit/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "json.hpp"
#include "klkit/errors.hpp"

namespace klkit {

namespace {

using nlohmann::json;

std::string dump(const json& j) { return j.dump(2); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("invalid JSON: ") + e.what());
  }
}

json point_json(const EvaluationPoint& p) { return {{"x", p.x}, {"tau", p.tau}}; }

EvaluationPoint point_from(const json& j) {
  return EvaluationPoint(j.at("x").get<double>(), j.at("tau").get<double>());
}

json descriptor_json(const BoundDescriptor& d) {
  json params = json::object();
  for (const auto& [k, v] : d.params) params[k] = v;
  return {{"id", to_string(d.id)},
          {"family", d.family},
          {"params", params},
          {"parameter_domain", d.parameter_domain},
          {"validity", d.validity},
          {"order_mu", d.order_mu},
          {"measured", to_string(d.measured)}};
}

BoundDescriptor descriptor_from(const json& j) {
  const auto name = j.at("id").get<std::string>();
  const auto id = bound_id_from_string(name);
  if (!id) throw DomainError("unknown bound id " + name);
  BoundParams params;
  for (const auto& [k, v] : j.at("params").items()) params[k] = v.get<double>();
  return make_descriptor(*id, params);
}

json certificate_json(const BoundCertificate& c) {
  json grid = json::array();
  for (const auto& p : c.grid) grid.push_back(point_json(p));
  json ratios = json::array();
  for (const auto& r : c.ratios) ratios.push_back(r ? json(*r) : json(nullptr));
  return {{"descriptor", descriptor_json(c.descriptor)},
          {"grid", grid},
          {"ratios", ratios},
          {"max_ratio", c.max_ratio},
          {"worst_index", c.worst_index},
          {"worst_point", c.grid.empty() ? json(nullptr) : point_json(c.worst_point())},
          {"indeterminate", c.indeterminate},
          {"pass", c.pass}};
}

BoundCertificate certificate_from(const json& j) {
  BoundCertificate c{descriptor_from(j.at("descriptor")), {}, {}, 0.0, 0, {}, false};
  for (const auto& p : j.at("grid")) c.grid.push_back(point_from(p));
  for (const auto& r : j.at("ratios"))
    c.ratios.push_back(r.is_null() ? std::nullopt : std::optional<double>(r.get<double>()));
  c.max_ratio = j.at("max_ratio").get<double>();
  c.worst_index = j.at("worst_index").get<std::size_t>();
  c.indeterminate = j.at("indeterminate").get<std::vector<std::size_t>>();
  c.pass = j.at("pass").get<bool>();
  return c;
}

json expansion_json(const ExpansionReport& r) {
  return {{"point", point_json(r.point)},
          {"N", r.N},
          {"tau0", r.tau0},
          {"X", r.X},
          {"leading", r.leading},
          {"k_value", r.k_value},
          {"remainder_measured", r.remainder_measured},
          {"remainder_explicit", r.remainder_explicit},
          {"remainder_bound", r.remainder_bound},
          {"bound_order", r.bound_order},
          {"within_bound", r.within_bound}};
}

ExpansionReport expansion_from(const json& j) {
  ExpansionReport r;
  r.point = point_from(j.at("point"));
  r.N = j.at("N").get<unsigned>();
  r.tau0 = j.at("tau0").get<double>();
  r.X = j.at("X").get<double>();
  r.leading = j.at("leading").get<double>();
  r.k_value = j.at("k_value").get<double>();
  r.remainder_measured = j.at("remainder_measured").get<double>();
  r.remainder_explicit = j.at("remainder_explicit").get<double>();
  r.remainder_bound = j.at("remainder_bound").get<double>();
  r.bound_order = j.at("bound_order").get<unsigned>();
  r.within_bound = j.at("within_bound").get<bool>();
  return r;
}

json entire_json(const EntireFunctionSpec& f) {
  return {{"even_coeffs", f.even_coeffs}, {"exp_type", f.exp_type}, {"cauchy_n0", f.cauchy_n0}};
}

EntireFunctionSpec entire_from(const json& j) {
  EntireFunctionSpec f;
  f.even_coeffs = j.at("even_coeffs").get<std::vector<double>>();
  f.exp_type = j.at("exp_type").get<double>();
  f.cauchy_n0 = j.at("cauchy_n0").get<unsigned>();
  return f;
}

}  // namespace

std::string catalog_to_json(const std::vector<BoundDescriptor>& catalog) {
  json arr = json::array();
  for (const auto& d : catalog) arr.push_back(descriptor_json(d));
  return dump(arr);
}

std::vector<BoundDescriptor> catalog_from_json(const std::string& text) {
  std::vector<BoundDescriptor> out;
  for (const auto& j : parse(text)) out.push_back(descriptor_from(j));
  return out;
}

std::string certificate_to_json(const BoundCertificate& c) { return dump(certificate_json(c)); }

BoundCertificate certificate_from_json(const std::string& text) {
  return certificate_from(parse(text));
}

std::string certificates_to_json(const std::vector<BoundCertificate>& cs) {
  json arr = json::array();
  for (const auto& c : cs) arr.push_back(certificate_json(c));
  return dump(arr);
}

std::vector<BoundCertificate> certificates_from_json(const std::string& text) {
  std::vector<BoundCertificate> out;
  for (const auto& j : parse(text)) out.push_back(certificate_from(j));
  return out;
}

std::string expansion_reports_to_json(const std::vector<ExpansionReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(expansion_json(r));
  return dump(arr);
}

std::vector<ExpansionReport> expansion_reports_from_json(const std::string& text) {
  std::vector<ExpansionReport> out;
  for (const auto& j : parse(text)) out.push_back(expansion_from(j));
  return out;
}

std::string summability_report_to_json(const SummabilityReport& r) {
  const auto& q = r.query;
  json query = {{"x", q.x},
                {"a", q.a},
                {"psi1", entire_json(q.psi1)},
                {"psi2", entire_json(q.psi2)},
                {"epsilon_schedule", q.epsilon_schedule},
                {"mellin_s", q.mellin_s}};
  return dump({{"query", query},
               {"pairing_values", r.pairing_values},
               {"target", r.target},
               {"errors", r.errors},
               {"limit_value", r.limit_value},
               {"converged", r.converged}});
}

SummabilityReport summability_report_from_json(const std::string& text) {
  const json j = parse(text);
  SummabilityReport r;
  const json& q = j.at("query");
  r.query.x = q.at("x").get<double>();
  r.query.a = q.at("a").get<double>();
  r.query.psi1 = entire_from(q.at("psi1"));
  r.query.psi2 = entire_from(q.at("psi2"));
  r.query.epsilon_schedule = q.at("epsilon_schedule").get<std::vector<double>>();
  r.query.mellin_s = q.at("mellin_s").get<double>();
  r.pairing_values = j.at("pairing_values").get<std::vector<double>>();
  r.target = j.at("target").get<double>();
  r.errors = j.at("errors").get<std::vector<double>>();
  r.limit_value = j.at("limit_value").get<double>();
  r.converged = j.at("converged").get<bool>();
  return r;
}

std::string canonical_json(const std::string& text) { return dump(parse(text)); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  return out;
}

std::vector<std::string> expansion_csv_header() {
  return {"x", "tau", "N", "leading", "measured", "explicit", "bound", "pass"};
}

std::vector<std::string> expansion_csv_fields(const ExpansionReport& r) {
  return {format_double(r.point.x),
          format_double(r.point.tau),
          std::to_string(r.N),
          format_double(r.leading),
          format_double(r.remainder_measured),
          format_double(r.remainder_explicit),
          format_double(r.remainder_bound),
          r.within_bound ? "true" : "false"};
}

}  // namespace klkit
