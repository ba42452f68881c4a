#include <gtest/gtest.h>

#include <cmath>

#include "klkit/errors.hpp"
#include "klkit/summability.hpp"

using namespace klkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST(ClosedForms, PinnedValues) {
  EXPECT_NEAR(closed_cosh(1.0, 0.3), 2.22972516976051422697, 1e-14);
  EXPECT_NEAR(closed_cosh(0.5, 0.0), 2.22144146907918312351, 1e-14);
  EXPECT_NEAR(closed_sinh(0.5, 0.0), 1.11072073453959156175, 1e-14);
  EXPECT_NEAR(closed_sinh(1.5, 0.7), 33.7549200692626263349, 1e-12);
}

TEST(ClosedForms, SinhFormIsDerivativeOfCoshForm) {
  for (double s : {0.5, 1.0, 1.5}) {
    for (double a : {0.0, 0.3, 0.7, 1.2}) {
      const double h = 1e-5;
      const double d = (closed_cosh(s, a + h) - closed_cosh(s, a - h)) / (2 * h);
      EXPECT_NEAR(d / closed_sinh(s, a), 1.0, 1e-8) << s << " " << a;
    }
  }
}

TEST(TauIntegral, MatchesClosedFormsWithoutRegularization) {
  const auto one = EntireFunctionSpec::one();
  const auto zero = EntireFunctionSpec::zero();
  for (double s : {0.5, 1.0, 1.5}) {
    const double pre = tau_integral_prefactor(s);
    for (double a : {0.0, 0.3, 0.7, 1.2, kHalfPi - 0.05}) {
      EXPECT_LT(rel(tau_integral_rhs(s, a, 0.0, one, zero), pre * closed_cosh(s, a)), 1e-8);
      EXPECT_LT(rel(tau_integral_rhs(s, a, 0.0, zero, one), pre * closed_sinh(s, a)), 1e-8);
    }
  }
}

TEST(TauIntegral, PrefactorValue) {
  EXPECT_NEAR(tau_integral_prefactor(1.0), 0.5 * std::sqrt(kPi) / std::tgamma(1.5), 1e-15);
}

TEST(MellinIdentities, Residuals) {
  for (double s : {0.5, 1.0, 1.5}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      EXPECT_LT(mellin_k_identity(s, tau), 1e-10) << s << " " << tau;
      EXPECT_LT(gamma_product_identity(s, tau), 1e-10) << s << " " << tau;
    }
  }
}

TEST(MellinPair, GammaFunctionValues) {
  EXPECT_NEAR(mellin_pair([](double) { return 1.0; }, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(mellin_pair([](double) { return 1.0; }, 2.5), std::tgamma(2.5), 1e-12);
  const double v = mellin_pair([](double x) { return std::exp(0.5 * x); }, 1.5, {}, 0.5);
  EXPECT_NEAR(v, std::tgamma(1.5) * std::pow(2.0, 1.5), 1e-11);
}

TEST(Derivatives, PinnedValues) {
  EXPECT_NEAR(deriv_exp_xsina(0, 1.0, 0.3), std::exp(std::sin(0.3)), 1e-15);
  EXPECT_NEAR(deriv_exp_xsina(2, 1.0, 0.3), 0.829338525054729738652, 1e-14);
  EXPECT_NEAR(deriv_exp_xsina(5, 2.0, 0.7), -15.7854128660542204568, 1e-12);
}

TEST(Derivatives, BatchMatchesSingle) {
  const auto all = deriv_exp_xsina_all(12, 1.5, 0.4);
  ASSERT_EQ(all.size(), 13u);
  for (unsigned n = 0; n <= 12; ++n) EXPECT_NEAR(all[n], deriv_exp_xsina(n, 1.5, 0.4), 1e-12);
  EXPECT_THROW(deriv_exp_xsina(kMaxDerivativeOrder + 1, 1.0, 0.0), DomainError);
}

TEST(Derivatives, MagnitudeBound) {
  for (unsigned n : {2u, 4u, 6u, 8u}) {
    for (double x : {0.5, 1.0, 2.0}) {
      double series = 0.0, term = 1.0;
      for (unsigned k = 0; k <= n; ++k) {
        series += term;
        term *= 2.0 * x / (k + 1);
      }
      for (double a = 0.0; a < kHalfPi; a += 0.05) {
        const double bound = std::exp(x * std::sin(a)) * std::pow(n, n) * series;
        EXPECT_LE(std::abs(deriv_exp_xsina(n, x, a)), bound) << n << " " << x << " " << a;
      }
    }
  }
}

TEST(EntireFunctionSpec, ValidationAndEvaluation) {
  const auto c = EntireFunctionSpec::cosine(0.05);
  EXPECT_NEAR(c(3.0), std::cos(0.15), 1e-15);
  EXPECT_NEAR(c.majorant(3.0), std::cosh(0.15), 1e-15);
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(EntireFunctionSpec::zero().is_zero());
  EXPECT_FALSE(EntireFunctionSpec::one().is_zero());
  EntireFunctionSpec bad{{1.0, 0.0, 5.0}, 0.01, 0};
  EXPECT_THROW(bad.validate(), DomainError);
  EntireFunctionSpec neg{{1.0}, -1.0, 0};
  EXPECT_THROW(neg.validate(), DomainError);
}

TEST(OperatorValue, SpecialCases) {
  const auto one = EntireFunctionSpec::one();
  const auto zero = EntireFunctionSpec::zero();
  for (double x : {0.5, 1.0, 2.0}) {
    for (double a : {0.0, 0.4, 1.0}) {
      EXPECT_NEAR(theorem3_value(x, a, one, zero), theorem2_limit(x, a), 1e-14);
      EXPECT_NEAR(theorem3_value(x, a, zero, one),
                  kHalfPi * x * std::cos(a) * std::exp(x * std::sin(a)), 1e-13);
    }
  }
}

TEST(OperatorValue, CosineMultiplierClosedForm) {
  const double b = 0.05;
  const double expected = kHalfPi * std::cos(std::sinh(b));
  EXPECT_NEAR(theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(b), EntireFunctionSpec::zero()),
              expected, 1e-14);
  EXPECT_NEAR(expected, 1.56883160430436843253, 1e-15);
}

TEST(OperatorValue, ConvergesInTruncation) {
  const auto zero = EntireFunctionSpec::zero();
  double prev_gap = 1.0;
  const double limit = theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(0.1, 20), zero);
  for (unsigned m = 1; m <= 6; ++m) {
    const double gap =
        std::abs(theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(0.1, m), zero) - limit);
    EXPECT_LE(gap, prev_gap);
    // |c_2n| <= (e b / 2n)^{2n} and |D^{2n}| <= (2n)^{2n} e^{x sin a + 2x} sum to a
    // geometric tail in (e b)^2.
    const double q = std::pow(std::exp(1.0) * 0.1, 2.0);
    const double tail = kHalfPi * std::exp(2.0) * std::pow(q, m) / (1.0 - q);
    EXPECT_LE(gap, tail) << m;
    prev_gap = gap;
  }
}

TEST(OperatorValue, TypeCheck) {
  const double t = type_threshold(0.0);
  EXPECT_NEAR(t, 1.0 / (2.0 * std::exp(1.0)), 1e-16);
  const auto zero = EntireFunctionSpec::zero();
  EXPECT_THROW(theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(t), zero), DomainError);
  EXPECT_THROW(theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(0.2), zero), DomainError);
  EXPECT_NO_THROW(theorem3_value(1.0, 0.0, EntireFunctionSpec::cosine(0.99 * t), zero));
  EXPECT_THROW(theorem3_value(1.0, 1.0, EntireFunctionSpec::cosine(0.05), zero), DomainError);
}

TEST(ConstantMultiplierCheck, ZeroAngle) {
  SummabilityQuery q;
  const auto r = theorem2_check(q);
  EXPECT_NEAR(r.target, kHalfPi, 1e-14);
  EXPECT_TRUE(r.converged);
  ASSERT_EQ(r.errors.size(), 5u);
  for (std::size_t i = 1; i < r.errors.size(); ++i) EXPECT_LT(r.errors[i], r.errors[i - 1]);
}

TEST(ConstantMultiplierCheck, PositiveAngle) {
  SummabilityQuery q;
  q.a = 0.5;
  const auto r = theorem2_check(q, {}, 2);
  EXPECT_NEAR(r.target, 3.01742871247117785124, 1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.errors.back() / r.target, 1e-4);
  EXPECT_NEAR(r.limit_value, r.target, 1e-10);
}

TEST(ConstantMultiplierCheck, MellinExponent) {
  SummabilityQuery q;
  q.a = 0.3;
  q.mellin_s = 1.5;
  const auto r = theorem2_check(q);
  EXPECT_NEAR(r.target, kHalfPi * std::tgamma(1.5) * std::pow(1.0 - std::sin(0.3), -1.5), 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(CosineMultiplierCheck, CosineMultiplier) {
  SummabilityQuery q;
  q.psi1 = EntireFunctionSpec::cosine(0.05);
  const auto r = theorem3_check(q);
  EXPECT_NEAR(r.target, kHalfPi / std::pow(std::cosh(0.05), 2), 1e-10);
  EXPECT_LT(rel(r.limit_value, r.target), 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(FEpsilon, FiniteAndRegularized) {
  SummabilityQuery q;
  const double a = f_epsilon(q, 1e-1);
  const double b = f_epsilon(q, 1e-3);
  EXPECT_TRUE(std::isfinite(a) && std::isfinite(b));
  EXPECT_NE(a, b);
}

TEST(SummabilityQuery, Validation) {
  SummabilityQuery q;
  EXPECT_NO_THROW(q.validate());
  q.a = kHalfPi;
  EXPECT_THROW(q.validate(), DomainError);
  q = {};
  q.mellin_s = 0.0;
  EXPECT_THROW(q.validate(), DomainError);
  q = {};
  q.epsilon_schedule = {};
  EXPECT_THROW(q.validate(), DomainError);
}
