#include <gtest/gtest.h>

#include <cmath>

#include "klkit/bounds.hpp"
#include "klkit/errors.hpp"

using namespace klkit;

namespace {
constexpr double kSqrt2OverPi = 0.79788456080286535588;

std::vector<EvaluationPoint> small_grid() { return log_grid(0.01, 100.0, 7, 0.1, 40.0, 7); }
}  // namespace

TEST(BoundIds, StringRoundTrip) {
  EXPECT_EQ(all_bound_ids().size(), 17u);
  for (BoundId id : all_bound_ids()) {
    const auto back = bound_id_from_string(to_string(id));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, id);
  }
  EXPECT_FALSE(bound_id_from_string("NOT_A_BOUND").has_value());
}

TEST(Descriptor, ValidatesParameters) {
  EXPECT_THROW(make_descriptor(BoundId::HALF_RANGE_18, {{"nu", 0.6}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::HALF_RANGE_18, {{"nu", -0.5}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::DELTA_111, {{"delta", 1.0}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}, {"mu", 0.4}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::LEBEDEV_15, {{"nu", 1.0}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::ITER_130, {{"n", 1.5}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::ITER_130, {{"n", 21.0}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::K1_115, {{"nu", 1.5}}), DomainError);
  EXPECT_THROW(make_descriptor(BoundId::EXP_DECAY_315, {{"delta", 1.6}}), DomainError);
  EXPECT_NO_THROW(make_descriptor(BoundId::COMPOSITE_126, {{"delta", 0.5}, {"M", 2}, {"N", 3}}));
}

TEST(Descriptor, MeasuredQuantityFollowsOrder) {
  EXPECT_EQ(make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}, {"mu", 0.0}}).measured,
            MeasuredQuantity::AbsKItau);
  const auto d = make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}, {"mu", 0.1}});
  EXPECT_EQ(d.measured, MeasuredQuantity::AbsKComplex);
  EXPECT_DOUBLE_EQ(d.order_mu, 0.1);
  EXPECT_EQ(make_descriptor(BoundId::LS_RE_113).measured, MeasuredQuantity::AbsReKComplex);
  EXPECT_EQ(make_descriptor(BoundId::LS_IM_114).measured, MeasuredQuantity::AbsImKComplex);
  EXPECT_DOUBLE_EQ(make_descriptor(BoundId::K1_115, {{"nu", 2.0}}).order_mu, 1.0);
}

TEST(EvaluateBound, PinnedValues) {
  const EvaluationPoint p(1.0, 1.0);
  EXPECT_NEAR(evaluate_bound(make_descriptor(BoundId::LEBEDEV_15), p), 0.754394975602919419756,
              1e-14);
  EXPECT_NEAR(evaluate_bound(make_descriptor(BoundId::MODIFIED_110), p), 0.924448203359627655178,
              1e-14);
}

TEST(EvaluateBound, LargeIndexStaysFiniteInLogSpace) {
  const EvaluationPoint p(1.0, 400.0);
  for (const auto& d : default_catalog()) {
    const double lb = log_bound(d, p);
    EXPECT_TRUE(std::isfinite(lb)) << to_string(d.id);
  }
  EXPECT_GT(evaluate_bound(make_descriptor(BoundId::LEBEDEV_15), EvaluationPoint(1.0, 200.0)), 0.0);
}

TEST(EvaluateBound, IteratedSequenceIndexing) {
  const auto lebedev = make_descriptor(BoundId::LEBEDEV_15);
  const auto i128 = make_descriptor(BoundId::ITER_128);
  const auto i129 = make_descriptor(BoundId::ITER_129);
  for (const auto& p : small_grid()) {
    const auto at = [&](double n) {
      return log_bound(make_descriptor(BoundId::ITER_130, {{"n", n}}), p);
    };
    EXPECT_NEAR(at(1), log_bound(lebedev, p), 1e-12);
    EXPECT_NEAR(at(2), log_bound(i128, p), 1e-12);
    EXPECT_NEAR(at(3), log_bound(i129, p), 1e-12);
  }
}

TEST(EvaluateBound, IteratedSequenceFiniteUpToTwenty) {
  for (int n = 1; n <= 20; ++n) {
    const auto d = make_descriptor(BoundId::ITER_130, {{"n", static_cast<double>(n)}});
    for (const EvaluationPoint& p : {EvaluationPoint(0.01, 0.1), EvaluationPoint(100.0, 40.0)}) {
      const double v = evaluate_bound(d, p);
      EXPECT_TRUE(std::isfinite(v) && v > 0.0) << n;
    }
  }
}

TEST(EvaluateBound, HalfRangeRatioBetweenOrders) {
  const EvaluationPoint p(2.0, 1.5);
  const double r = evaluate_bound(make_descriptor(BoundId::HALF_RANGE_18, {{"nu", 0.5}}), p) /
                   evaluate_bound(make_descriptor(BoundId::HALF_RANGE_18, {{"nu", 0.0}}), p);
  EXPECT_NEAR(r, 0.581104786364280189674, 1e-13);
}

TEST(Olenko, PinnedValues) {
  EXPECT_NEAR(olenko_c(1.0), 1.33089430364332579148, 1e-14);
  EXPECT_NEAR(olenko_c(2.0), 1.21655606933385291521, 1e-14);
  EXPECT_THROW(olenko_c(0.0), DomainError);
  EXPECT_NEAR(olenko_c(1e9) / std::pow(1e9, 1.0 / 6.0), kLandauB, 1e-5);
}

TEST(MeasureC, SzegoConstantOnHalfRange) {
  EXPECT_NEAR(measure_c(0.0), kSqrt2OverPi, 1e-6);
  EXPECT_NEAR(measure_c(0.5), kSqrt2OverPi, 1e-6);
  EXPECT_NEAR(c_nu(0.3), kSqrt2OverPi, 1e-16);
}

TEST(MeasureC, InteriorMaximaMatchReference) {
  EXPECT_NEAR(measure_c(1.0), 0.825030895587351386245, 1e-9);
  EXPECT_NEAR(measure_c(2.0), 0.868420680684804860086, 1e-9);
}

TEST(MeasureC, DominatedByOlenko) {
  for (double nu : {0.5, 1.0, 2.0, 5.0}) EXPECT_GE(olenko_c(nu), measure_c(nu)) << nu;
  EXPECT_GE(olenko_c(2.0), measure_c(2.0, 500.0));
}

TEST(Certify, LebedevOnDefaultGrid) {
  const auto c = certify_bound(make_descriptor(BoundId::LEBEDEV_15), default_grid());
  EXPECT_TRUE(c.pass);
  EXPECT_EQ(c.grid.size(), 625u);
  EXPECT_TRUE(c.indeterminate.empty());
}

TEST(Certify, ExponentialDecayTightAtSmallIndex) {
  const auto grid = log_grid(0.01, 100.0, 5, 1e-4, 40.0, 6);
  const auto c = certify_bound(make_descriptor(BoundId::EXP_DECAY_315, {{"delta", 0.0}}), grid);
  EXPECT_TRUE(c.pass);
  EXPECT_GT(c.max_ratio, 1.0 - 1e-6);
  EXPECT_NEAR(c.worst_point().tau, 1e-4, 1e-12);
}

TEST(Certify, FamilyOnComplexOrder) {
  const auto d = make_descriptor(BoundId::FAMILY_17, {{"nu", 0.3}, {"mu", 0.1}});
  EXPECT_TRUE(certify_bound(d, small_grid()).pass);
}

TEST(Certify, CertificateInvariants) {
  for (const auto& c : certify_catalog(default_catalog(), small_grid())) {
    EXPECT_GE(c.max_ratio, 0.0);
    ASSERT_LT(c.worst_index, c.grid.size());
    EXPECT_EQ(c.ratios.size(), c.grid.size());
    EXPECT_EQ(c.pass, c.max_ratio <= 1.0 + kRatioSlack);
    EXPECT_EQ(*c.ratios[c.worst_index], c.max_ratio);
  }
}

TEST(Certify, ParallelMatchesSerial) {
  const auto serial = certify_catalog(default_catalog(), small_grid(), {}, 1);
  const auto parallel = certify_catalog(default_catalog(), small_grid(), {}, 3);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].ratios, parallel[i].ratios);
    EXPECT_EQ(serial[i].max_ratio, parallel[i].max_ratio);
  }
  const auto d = make_descriptor(BoundId::LS_IM_114);
  EXPECT_EQ(certify_bound(d, small_grid(), {}, 4).ratios, certify_bound(d, small_grid()).ratios);
}

TEST(Certify, AssembleFlagsViolationsAndGaps) {
  const auto d = make_descriptor(BoundId::MODIFIED_110);
  const std::vector<EvaluationPoint> grid{{1.0, 1.0}, {2.0, 1.0}, {3.0, 1.0}};
  const double b0 = evaluate_bound(d, grid[0]);
  auto c = assemble_certificate(d, grid, {0.5 * b0, 0.0, 0.1});
  EXPECT_TRUE(c.pass);
  c = assemble_certificate(d, grid, {0.5 * b0, std::nullopt, 0.1});
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.indeterminate, std::vector<std::size_t>{1});
  EXPECT_NEAR(c.max_ratio, 0.5, 1e-14);
  c = assemble_certificate(d, grid, {1.01 * b0, 0.0, 0.0});
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.worst_index, 0u);
  EXPECT_NEAR(c.max_ratio, 1.01, 1e-14);
}

TEST(Grid, LogSpacing) {
  const auto v = log_space(0.01, 100.0, 5);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_DOUBLE_EQ(v.front(), 0.01);
  EXPECT_DOUBLE_EQ(v.back(), 100.0);
  EXPECT_NEAR(v[2], 1.0, 1e-15);
  EXPECT_EQ(default_grid().size(), 625u);
}
