#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "casimir/special_functions.hpp"
#include "oracles.hpp"

namespace casimir {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Polylog, EmptySeriesAtZero) {
  EXPECT_EQ(polylog(2, 0.0), 0.0);
  EXPECT_EQ(polylog(3, 0.0), 0.0);
}

TEST(Polylog, UnitArgumentGivesZetaValues) {
  EXPECT_NEAR(polylog(2, 1.0), kPi * kPi / 6.0, 1e-13);
  EXPECT_NEAR(polylog(3, 1.0), oracle::zeta3(), 1e-13);
}

TEST(Polylog, HalfArgument) {
  // Extended-precision series.
  EXPECT_NEAR(polylog(2, 0.5), 0.58224052646501250590, 1e-13);
  EXPECT_NEAR(polylog(3, 0.5), 0.53721319360804020094, 1e-13);
}

TEST(Polylog, MatchesLongDoubleSeries) {
  for (int s : {2, 3}) {
    for (double x : {0.01, 0.2, 0.45, 0.5, 0.51, 0.6, 0.75, 0.9, 0.99, 0.999}) {
      EXPECT_NEAR(polylog(s, x), oracle::polylog_long_series(s, x), 1e-13)
          << "s=" << s << " x=" << x;
    }
  }
}

TEST(Polylog, NearUnityPathAgreesWithRawSeries) {
  for (int s : {2, 3}) {
    for (double x : {0.1, 0.3, 0.6, 0.7, 0.9, 0.99}) {
      EXPECT_NEAR(polylog_near_unity(s, std::log(x)), polylog_series(s, x), 1e-12)
          << "s=" << s << " x=" << x;
    }
  }
}

TEST(Polylog, MonotoneOnUnitInterval) {
  for (int s : {2, 3}) {
    double prev = polylog(s, 0.0);
    for (int i = 1; i <= 2000; ++i) {
      const double v = polylog(s, i / 2000.0);
      EXPECT_GT(v, prev) << "s=" << s << " i=" << i;
      prev = v;
    }
  }
}

TEST(Polylog, ExpArgumentForm) {
  for (double mu : {-0.3, -0.69, -0.7, -3.0, -40.0}) {
    EXPECT_NEAR(polylog_exp(2, mu), oracle::polylog_long_series(2, std::exp(mu)), 1e-13);
    EXPECT_NEAR(polylog_exp(3, mu), oracle::polylog_long_series(3, std::exp(mu)), 1e-13);
  }
  // The direct series is too slow this close to x = 1; use the leading terms
  // of the expansion about mu = 0 instead.
  EXPECT_NEAR(polylog_exp(2, 0.0), kPi * kPi / 6.0, 1e-13);
  EXPECT_NEAR(polylog_exp(3, 0.0), oracle::zeta3(), 1e-13);
  const double mu = -1e-12;
  EXPECT_NEAR(polylog_exp(2, mu), kPi * kPi / 6.0 + mu * (1.0 - std::log(-mu)), 1e-13);
  EXPECT_NEAR(polylog_exp(3, mu), oracle::zeta3() + kPi * kPi / 6.0 * mu, 1e-13);
}

TEST(Polylog, DomainErrors) {
  EXPECT_THROW(polylog(2, -0.1), DomainError);
  EXPECT_THROW(polylog(2, 1.0001), DomainError);
  EXPECT_THROW(polylog(4, 0.5), DomainError);
  EXPECT_THROW(polylog(2, std::numeric_limits<double>::quiet_NaN()), DomainError);
  EXPECT_THROW(polylog_near_unity(2, 0.1), DomainError);
  EXPECT_THROW(polylog_near_unity(2, -7.0), DomainError);
}

TEST(ZetaValue, TabulatedConstants) {
  EXPECT_EQ(zeta_value(-3), 1.0 / 120.0);
  EXPECT_EQ(zeta_value(-5), -1.0 / 252.0);
  EXPECT_DOUBLE_EQ(zeta_value(4), std::pow(kPi, 4) / 90.0);
  EXPECT_DOUBLE_EQ(zeta_value(6), std::pow(kPi, 6) / 945.0);
  EXPECT_DOUBLE_EQ(zeta_value(2), kPi * kPi / 6.0);
  EXPECT_NEAR(zeta_value(3), oracle::zeta3(), 1e-16);
  EXPECT_NEAR(zeta_value(4), 1.0823232337111382, 1e-15);
}

TEST(ZetaValue, UnsupportedArgument) {
  EXPECT_THROW(zeta_value(0), DomainError);
  EXPECT_THROW(zeta_value(5), DomainError);
  EXPECT_THROW(zeta_value(-1), DomainError);
}

TEST(LogOneMinusExp, Examples) {
  EXPECT_NEAR(log_one_minus_exp(std::numbers::ln2), -std::numbers::ln2, 1e-16);
  EXPECT_NEAR(log_one_minus_exp(1e-8), -18.420680748952365468, 18.42 * 1e-14);
  EXPECT_NEAR(log_one_minus_exp(50.0), -1.9287498479639177830e-22, 1.93e-22 * 1e-14);
}

TEST(LogOneMinusExp, RelativeAccuracyAgainstLongDouble) {
  for (int i = 0; i <= 400; ++i) {
    const double x = std::pow(10.0, -12.0 + i * (std::log10(700.0) + 12.0) / 400.0);
    const long double lx = x;
    const long double ref = x < 0.5 ? std::log(-std::expm1(-lx)) : std::log1p(-std::exp(-lx));
    const double got = log_one_minus_exp(x);
    EXPECT_FALSE(std::isnan(got));
    EXPECT_LE(std::fabs((got - ref) / ref), 1e-14) << "x=" << x;
  }
}

TEST(LogOneMinusExp, ExponentiatesBack) {
  for (int i = 0; i <= 300; ++i) {
    const double x = 0.1 + i * (30.0 - 0.1) / 300.0;
    EXPECT_NEAR(std::exp(log_one_minus_exp(x)) + std::exp(-x), 1.0, 1e-13) << "x=" << x;
  }
}

TEST(LogOneMinusExp, NeverNaNForTinyArguments) {
  for (double x : {1e-300, 1e-200, 5e-324, 1e-30}) {
    const double v = log_one_minus_exp(x);
    EXPECT_TRUE(std::isfinite(v)) << x;
    EXPECT_NEAR(v, std::log(x), 1e-12 * std::fabs(std::log(x)));
  }
  EXPECT_THROW(log_one_minus_exp(0.0), DomainError);
  EXPECT_THROW(log_one_minus_exp(-1.0), DomainError);
}

// Reference values: extended-precision summation.
TEST(CutoffZeta, FrozenValues) {
  EXPECT_NEAR(cutoff_zeta_demo(3, 0.2), 0.0082542453596822357, 1e-14);
  EXPECT_NEAR(cutoff_zeta_demo(3, 0.1), 0.0083135094140865181, 1e-14);
  EXPECT_NEAR(cutoff_zeta_demo(3, 0.05), 0.0083283741007780763, 1e-13);
  EXPECT_NEAR(cutoff_zeta_demo(5, 0.2), -0.0038854238157890003, 1e-12);
  EXPECT_NEAR(cutoff_zeta_demo(5, 0.1), -0.0039474521713023062, 1e-10);
  EXPECT_NEAR(cutoff_zeta_demo(5, 0.05), -0.0039630476073165080, 3e-9);
}

TEST(CutoffZeta, LeadingCorrectionIsMinusDeltaSquaredOver504) {
  for (double d : {0.05, 0.02}) {
    EXPECT_NEAR((cutoff_zeta_demo(3, d) - 1.0 / 120.0) / (d * d), -1.0 / 504.0, 1e-4);
  }
}

TEST(CutoffZeta, ErrorScalesAsDeltaSquared) {
  for (int p : {3, 5}) {
    for (double d : {0.1, 0.08}) {
      const double e1 = cutoff_zeta_demo(p, d) - zeta_value(-p);
      const double e2 = cutoff_zeta_demo(p, d / 2) - zeta_value(-p);
      const double ratio = e1 / e2;
      EXPECT_GE(ratio, 3.5) << "p=" << p << " d=" << d;
      EXPECT_LE(ratio, 4.5) << "p=" << p << " d=" << d;
    }
  }
}

TEST(CutoffZeta, ExtrapolatesToZetaAtNegativeOddIntegers) {
  const std::array<double, 3> deltas = {0.2, 0.1, 0.05};
  EXPECT_NEAR(extrapolate_cutoff_zeta(3, deltas), 1.0 / 120.0, 1e-6);
  EXPECT_NEAR(extrapolate_cutoff_zeta(5, deltas), -1.0 / 252.0, 1e-6);
}

TEST(CutoffZeta, DomainErrors) {
  EXPECT_THROW(cutoff_zeta_demo(4, 0.1), DomainError);
  EXPECT_THROW(cutoff_zeta_demo(3, 0.0), DomainError);
  EXPECT_THROW(cutoff_zeta_demo(3, 0.6), DomainError);
}

TEST(Extrapolation, ExactForPolynomials) {
  // f(t) = 2 - 3t + t^2 sampled at three points extrapolates exactly.
  const std::vector<double> t = {0.04, 0.01, 0.0025};
  std::vector<double> v;
  for (double ti : t) v.push_back(2.0 - 3.0 * ti + ti * ti);
  EXPECT_NEAR(extrapolate_to_zero(t, v), 2.0, 1e-14);
  EXPECT_THROW(extrapolate_to_zero(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}),
               DomainError);
}

}  // namespace
}  // namespace casimir
