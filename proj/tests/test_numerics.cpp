#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sgflow/error.hpp"
#include "sgflow/numerics.hpp"

namespace n = sgflow::numerics;

namespace {

std::vector<double> sample(double a, double h, std::size_t count, double (*f)(double)) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = f(a + static_cast<double>(i) * h);
  return out;
}

double quartic(double x) { return 1.0 - 2.0 * x + 0.5 * x * x + 3.0 * x * x * x - x * x * x * x; }
double quartic_d1(double x) { return -2.0 + x + 9.0 * x * x - 4.0 * x * x * x; }
double quartic_d2(double x) { return 1.0 + 18.0 * x - 12.0 * x * x; }

}  // namespace

TEST(AdaptiveQuad, SmoothIntegrands) {
  EXPECT_NEAR(n::adaptive_quad([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12).value, 2.0,
              1e-11);
  EXPECT_NEAR(n::adaptive_quad([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12).value,
              std::exp(1.0) - 1.0, 1e-11);
}

TEST(AdaptiveQuad, EndpointSingularity) {
  const auto r = n::adaptive_quad([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-9);
  EXPECT_GT(r.evaluations, 5u);
}

TEST(AdaptiveQuad, CubicsExactOnRandomIntervals) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const auto f = [&](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
    const auto F = [&](double x) {
      return x * (c0 + x * (c1 / 2.0 + x * (c2 / 3.0 + x * c3 / 4.0)));
    };
    EXPECT_NEAR(n::adaptive_quad(f, a, b, 1e-12).value, F(b) - F(a), 1e-11);
  }
}

TEST(AdaptiveQuad, EmptyAndReversedIntervals) {
  EXPECT_EQ(n::adaptive_quad([](double) { return 1.0; }, 2.0, 2.0, 1e-10).value, 0.0);
  EXPECT_THROW(n::adaptive_quad([](double) { return 1.0; }, 1.0, 0.0, 1e-10),
               sgflow::ValidationError);
}

TEST(AdaptiveQuad, NonFiniteIntegrandIsSolverError) {
  EXPECT_THROW(n::adaptive_quad([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10),
               sgflow::SolverError);
}

TEST(AdaptiveQuad, DepthExhaustionReportsAchievedError) {
  n::QuadratureOptions options;
  options.max_depth = 6;
  try {
    n::adaptive_quad([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, 1e-14, options);
    FAIL() << "expected QuadratureError";
  } catch (const sgflow::QuadratureError& e) {
    EXPECT_GT(e.achieved(), 1e-14);
  }
}

TEST(Tridiagonal, RandomDiagonallyDominantSystems) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> size(3, 300);
  for (int trial = 0; trial < 100; ++trial) {
    const auto count = static_cast<std::size_t>(size(rng));
    n::TridiagonalSystem sys;
    sys.sub.resize(count - 1);
    sys.super.resize(count - 1);
    sys.diag.resize(count);
    sys.rhs.resize(count);
    for (auto& v : sys.sub) v = u(rng);
    for (auto& v : sys.super) v = u(rng);
    for (std::size_t i = 0; i < count; ++i) {
      sys.diag[i] = (u(rng) < 0 ? -1.0 : 1.0) * (2.5 + std::fabs(u(rng)));
      sys.rhs[i] = 10.0 * u(rng);
    }
    const auto x = n::solve_tridiagonal(sys);
    double scale = 0.0;
    for (double r : sys.rhs) scale = std::max(scale, std::fabs(r));
    EXPECT_LE(sys.residual_norm(x), 1e-10 * scale);
  }
}

TEST(Tridiagonal, ZeroPivotAndShapeErrors) {
  n::TridiagonalSystem sys{{1.0, 1.0}, {0.0, 1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0, 1.0}};
  EXPECT_THROW(n::solve_tridiagonal(sys), sgflow::SolverError);
  n::TridiagonalSystem small{{1.0}, {2.0, 2.0}, {1.0}, {1.0, 1.0}};
  EXPECT_THROW(small.validate(), sgflow::ValidationError);
  n::TridiagonalSystem ragged{{1.0}, {2.0, 2.0, 2.0}, {1.0, 1.0}, {1.0, 1.0, 1.0}};
  EXPECT_THROW(n::solve_tridiagonal(ragged), sgflow::ValidationError);
}

TEST(FiniteDifference, ExactOnQuartics) {
  const double h = 0.05;
  const auto u = sample(-0.3, h, 40, quartic);
  const auto d1 = n::fd_derivative(u, h, 1);
  const auto d2 = n::fd_derivative(u, h, 2);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = -0.3 + static_cast<double>(i) * h;
    EXPECT_NEAR(d1[i], quartic_d1(x), 1e-10) << i;
    EXPECT_NEAR(d2[i], quartic_d2(x), 1e-8) << i;
  }
}

TEST(FiniteDifference, FourthOrderOnSine) {
  double previous = 0.0;
  for (int level = 0; level < 3; ++level) {
    const std::size_t count = 41u << level;
    const double h = 2.0 / static_cast<double>(count - 1);
    const auto u = sample(0.0, h, count, [](double x) { return std::sin(3.0 * x); });
    const auto d = n::fd_derivative(u, h, 1);
    double err = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      err = std::max(err, std::fabs(d[i] - 3.0 * std::cos(3.0 * static_cast<double>(i) * h)));
    }
    if (level > 0) EXPECT_GT(previous / err, 12.0);
    previous = err;
  }
}

TEST(FiniteDifference, RejectsShortInputs) {
  EXPECT_THROW(n::fd_derivative(std::vector<double>(4, 1.0), 0.1, 1), sgflow::ValidationError);
  EXPECT_THROW(n::fd_derivative(std::vector<double>(5, 1.0), 0.1, 2), sgflow::ValidationError);
  EXPECT_THROW(n::fd_derivative(std::vector<double>(9, 1.0), 0.1, 3), sgflow::ValidationError);
}

TEST(RadialOperators, PolynomialImages) {
  const double h = 0.01;
  const auto sq = sample(0.0, h, 101, [](double s) { return s * s; });
  for (double v : n::fd_apply_L(sq, 0.0, h, n::RadialOperator::Poiseuille)) EXPECT_NEAR(v, 4.0, 1e-9);

  const auto cube = sample(0.0, h, 101, [](double s) { return s * s * s; });
  const auto lc = n::fd_apply_L(cube, 0.0, h, n::RadialOperator::Couette);
  for (std::size_t i = 0; i < lc.size(); ++i) {
    EXPECT_NEAR(lc[i], 8.0 * static_cast<double>(i) * h, 1e-8) << i;
  }
}

TEST(RadialOperators, SecondGradientOperator) {
  const double h = 1.0 / 400.0;
  const auto u = sample(0.0, h, 401, [](double s) { return 1.0 - s * s; });
  const auto w = n::fd_apply_second_gradient_operator(u, 0.0, h, n::RadialOperator::Poiseuille,
                                                      0.01, 2);
  EXPECT_EQ(w.first, 6u);
  EXPECT_EQ(w.values.size(), 401u - 12u);
  for (double v : w.values) EXPECT_NEAR(v, -4.0, 1e-7);

  // L(s^3) = 8 s and L(8 s) = 0 for the Couette operator; stride 1 sits at the
  // eps lambda^2 / h^4 roundoff floor
  const auto c = sample(0.0, h, 401, [](double s) { return s * s * s; });
  const auto wc =
      n::fd_apply_second_gradient_operator(c, 0.0, h, n::RadialOperator::Couette, 0.04, 1);
  for (std::size_t i = 0; i < wc.values.size(); ++i) {
    EXPECT_NEAR(wc.values[i], 8.0 * static_cast<double>(wc.first + i) * h, 1e-5);
  }
}

TEST(CumulativeIntegral, ExactOnCubics) {
  const auto F = [](double x) { return x + x * x / 2.0 - x * x * x / 3.0 + x * x * x * x / 4.0; };
  for (std::size_t count : {4u, 5u, 8u, 9u, 30u}) {
    const double h = 0.1;
    const auto f = sample(0.2, h, count, [](double x) { return 1.0 + x - x * x + x * x * x; });
    const auto c = n::cumulative_integral(f, h);
    ASSERT_EQ(c.size(), count);
    EXPECT_EQ(c[0], 0.0);
    for (std::size_t i = 0; i < count; ++i) {
      EXPECT_NEAR(c[i], F(0.2 + static_cast<double>(i) * h) - F(0.2), 1e-13) << count << " " << i;
    }
  }
}

TEST(CumulativeIntegral, TrapezoidForFewSamples) {
  const auto c = n::cumulative_integral(std::vector<double>{1.0, 3.0, 5.0}, 0.5);
  EXPECT_DOUBLE_EQ(c[1], 1.0);
  EXPECT_DOUBLE_EQ(c[2], 3.0);
}
