#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sgflow/bessel.hpp"
#include "sgflow/error.hpp"

namespace b = sgflow::bessel;

TEST(Bessel, FrozenValuesAtOne) {
  EXPECT_NEAR(b::i0(1.0), 1.2660658777520083, 1e-15);
  EXPECT_NEAR(b::k0(1.0), 0.42102443824070834, 1e-15);
  EXPECT_NEAR(b::i1(1.0), 0.56515910399248503, 1e-15);
  EXPECT_NEAR(b::k1(1.0), 0.60190723019723458, 1e-15);
}

TEST(Bessel, ValuesAtZero) {
  EXPECT_EQ(b::i0(0.0), 1.0);
  EXPECT_EQ(b::i1(0.0), 0.0);
  EXPECT_EQ(b::i1_prime(0.0), 0.5);
  EXPECT_THROW(b::k0(0.0), sgflow::DomainError);
  EXPECT_THROW(b::k1_scaled(0.0), sgflow::DomainError);
}

TEST(Bessel, RejectsBadArguments) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  for (double z : {-1.0, -1e-300, nan, inf}) {
    EXPECT_THROW(b::i0(z), sgflow::DomainError) << z;
    EXPECT_THROW(b::i1_scaled(z), sgflow::DomainError) << z;
    EXPECT_THROW(b::k1(z), sgflow::DomainError) << z;
  }
  EXPECT_THROW(b::i_over_power_scaled(4, 1.0), sgflow::DomainError);
}

TEST(Bessel, MatchesSeriesOracle) {
  for (double z : oracle::log_uniform(400, 1e-3, 30.0, 11)) {
    EXPECT_LE(oracle::rel_err(b::i0(z), oracle::i_value(0, z)), 1e-12) << z;
    EXPECT_LE(oracle::rel_err(b::i1(z), oracle::i_value(1, z)), 1e-12) << z;
    EXPECT_LE(oracle::rel_err(b::k0(z), oracle::k_value(0, z)), 1e-12) << z;
    EXPECT_LE(oracle::rel_err(b::k1(z), oracle::k_value(1, z)), 1e-12) << z;
  }
}

TEST(Bessel, ScaledMatchOracleForLargeArguments) {
  for (double z : oracle::log_uniform(60, 20.0, 700.0, 12)) {
    EXPECT_LE(oracle::rel_err(b::i0_scaled(z), oracle::i_scaled(0, z)), 1e-10) << z;
    EXPECT_LE(oracle::rel_err(b::i1_scaled(z), oracle::i_scaled(1, z)), 1e-10) << z;
    EXPECT_LE(oracle::rel_err(b::k0_scaled(z), oracle::k_scaled(0, z)), 1e-10) << z;
    EXPECT_LE(oracle::rel_err(b::k1_scaled(z), oracle::k_scaled(1, z)), 1e-10) << z;
  }
}

TEST(Bessel, ScaledValuesStayFiniteBeyondOverflow) {
  EXPECT_TRUE(std::isinf(b::i0(800.0)));
  EXPECT_TRUE(std::isfinite(b::i0_scaled(800.0)));
  EXPECT_NEAR(b::i0_scaled(1e6) * std::sqrt(2.0 * M_PI * 1e6), 1.0, 1e-6);
  EXPECT_NEAR(b::k0_scaled(1e6) * std::sqrt(2.0 * 1e6 / M_PI), 1.0, 1e-6);
}

TEST(Bessel, ContinuousAcrossSeriesSwitch) {
  const double below = std::nextafter(20.0, 0.0);
  const double above = std::nextafter(20.0, 40.0);
  EXPECT_LE(oracle::rel_err(b::i0_scaled(below), b::i0_scaled(above)), 1e-14);
  EXPECT_LE(oracle::rel_err(b::i1_scaled(below), b::i1_scaled(above)), 1e-14);
  EXPECT_LE(oracle::rel_err(b::k0_scaled(below), b::k0_scaled(above)), 1e-14);
  EXPECT_LE(oracle::rel_err(b::k1_scaled(below), b::k1_scaled(above)), 1e-14);
}

TEST(Bessel, WronskianHolds) {
  // I0 K1 + I1 K0 = 1/z
  for (double z : oracle::log_uniform(500, 1e-3, 700.0, 13)) {
    const double w = z * (b::i0_scaled(z) * b::k1_scaled(z) + b::i1_scaled(z) * b::k0_scaled(z));
    EXPECT_LE(std::fabs(w - 1.0), 1e-11) << z;
  }
}

TEST(Bessel, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double z = 0.1; z <= 20.0; z += 0.37) {
    const double fd0 = (b::i0(z + h) - b::i0(z - h)) / (2.0 * h);
    const double fd1 = (b::i1(z + h) - b::i1(z - h)) / (2.0 * h);
    EXPECT_LE(oracle::rel_err(b::i0_prime(z), fd0), 1e-7) << z;
    EXPECT_LE(oracle::rel_err(b::i1_prime(z), fd1), 1e-7) << z;
  }
}

TEST(Bessel, SecondDerivativeOfI0) {
  // I0'' = I0 - I1 / z
  EXPECT_NEAR(b::i0_second(1.0), oracle::i_value(0, 1.0) - oracle::i_value(1, 1.0), 1e-15);
  EXPECT_NEAR(b::i0_second(1.0), 0.700906774, 1e-9);
  for (double z : {0.5, 5.0, 19.0, 21.0, 100.0}) {
    const double want = oracle::i_scaled(0, z) - oracle::i_scaled(1, z) / z;
    EXPECT_LE(oracle::rel_err(b::i1_prime_scaled(z), want), 1e-12) << z;
  }
}

TEST(Bessel, OverPowerScaled) {
  for (int n = 0; n <= 3; ++n) {
    for (double z : {0.0, 1e-8, 0.5, 5.0, 19.99, 20.01, 50.0, 700.0}) {
      EXPECT_LE(oracle::rel_err(b::i_over_power_scaled(n, z), oracle::i_over_power_scaled(n, z)),
                1e-12)
          << n << " " << z;
    }
  }
}

TEST(Bessel, EvaluateReportsBothForms) {
  const auto v = b::evaluate(b::Kind::K1, 2.0);
  EXPECT_EQ(v.argument, 2.0);
  EXPECT_NEAR(v.value, oracle::k_value(1, 2.0), 1e-15);
  EXPECT_NEAR(v.scaled_value, v.value * std::exp(2.0), 1e-14);
  const auto w = b::evaluate(b::Kind::I0, 3.0);
  EXPECT_NEAR(w.scaled_value, w.value * std::exp(-3.0), 1e-15);
}

TEST(Bessel, MonotoneOnRandomPairs) {
  // I increasing, K decreasing on (0, inf)
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(1e-3, 50.0);
  for (int i = 0; i < 300; ++i) {
    double a = u(rng), c = u(rng);
    if (a > c) std::swap(a, c);
    if (a == c) continue;
    EXPECT_LE(b::i0(a), b::i0(c));
    EXPECT_LE(b::i1(a), b::i1(c));
    EXPECT_GE(b::k0(a), b::k0(c));
    EXPECT_GE(b::k1(a), b::k1(c));
  }
}
