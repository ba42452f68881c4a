#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "json.hpp"
#include "klkit/errors.hpp"
#include "klkit/serialize.hpp"

using namespace klkit;

TEST(Csv, Escaping) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_escape("line\nbreak"), "\"line\nbreak\"");
  EXPECT_EQ(csv_escape(""), "");
  EXPECT_EQ(csv_row({"x", "1,2", "z"}), "x,\"1,2\",z");
}

TEST(Csv, ExpansionRowsMatchHeader) {
  const auto r = expansion_report(EvaluationPoint(1.0, 5.0), 1, 1.0, 5.0);
  EXPECT_EQ(expansion_csv_fields(r).size(), expansion_csv_header().size());
  EXPECT_EQ(expansion_csv_fields(r).back(), "true");
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    const auto s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Json, CatalogRoundTrip) {
  const auto cat = default_catalog();
  const auto text = catalog_to_json(cat);
  const auto back = catalog_from_json(text);
  ASSERT_EQ(back.size(), cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(back[i].id, cat[i].id);
    EXPECT_EQ(back[i].params, cat[i].params);
  }
  EXPECT_EQ(catalog_to_json(back), text);
  const auto j = nlohmann::json::parse(text);
  for (const auto& rec : j) {
    for (const char* key : {"id", "family", "params", "parameter_domain", "validity", "order_mu",
                            "measured"})
      EXPECT_TRUE(rec.contains(key)) << key;
  }
}

TEST(Json, CertificateRoundTripIsByteIdentical) {
  const auto grid = log_grid(0.01, 100.0, 4, 0.1, 40.0, 4);
  const auto c = certify_bound(make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}, {"mu", 0.1}}),
                               grid);
  const auto text = certificate_to_json(c);
  const auto back = certificate_from_json(text);
  EXPECT_EQ(back.ratios, c.ratios);
  EXPECT_EQ(back.grid, c.grid);
  EXPECT_EQ(back.max_ratio, c.max_ratio);
  EXPECT_EQ(certificate_to_json(back), text);
  EXPECT_EQ(canonical_json(text), text);

  auto with_gap = assemble_certificate(c.descriptor, grid, std::vector<std::optional<double>>(
                                                               grid.size(), std::nullopt));
  const auto gap_text = certificate_to_json(with_gap);
  EXPECT_EQ(certificate_to_json(certificate_from_json(gap_text)), gap_text);

  const auto many = certificates_to_json({c, with_gap});
  EXPECT_EQ(certificates_to_json(certificates_from_json(many)), many);
}

TEST(Json, ExpansionReportsRoundTrip) {
  std::vector<ExpansionReport> rs;
  for (double tau : {1.0, 3.0}) rs.push_back(expansion_report(EvaluationPoint(1.0, tau), 2, 1.0, 5.0));
  const auto text = expansion_reports_to_json(rs);
  EXPECT_EQ(expansion_reports_to_json(expansion_reports_from_json(text)), text);
}

TEST(Json, SummabilityReportRoundTrip) {
  SummabilityQuery q;
  q.a = 0.2;
  q.epsilon_schedule = {1e-1, 1e-2, 1e-3};
  const auto text = summability_report_to_json(theorem2_check(q));
  const auto back = summability_report_from_json(text);
  EXPECT_EQ(back.query.epsilon_schedule, q.epsilon_schedule);
  EXPECT_EQ(summability_report_to_json(back), text);
}

TEST(Json, MalformedInputIsDomainError) {
  EXPECT_THROW(certificate_from_json("{not json"), DomainError);
  EXPECT_THROW(catalog_from_json("[{\"id\": \"NOPE\", \"params\": {}}]"), DomainError);
}
