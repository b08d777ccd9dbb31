#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sgflow/error.hpp"
#include "sgflow/poiseuille.hpp"

namespace p = sgflow::poiseuille;
using sgflow::BoundaryCondition;
using sgflow::LambdaSet;
using oracle::Big;

namespace {

constexpr auto kStrong = BoundaryCondition::StrongAdherence;
constexpr auto kWeak = BoundaryCondition::WeakAdherence;

// 1 - s^2 + 2 l (I0(s/l) - I0(1/l)) / I1(1/l)
double strong_oracle(double sigma, double lambda1) {
  const Big s(sigma), l(lambda1);
  const Big z = 1 / l;
  const Big u = 1 - s * s + 2 * l * (oracle::bessel_i(0, s / l) - oracle::bessel_i(0, z)) /
                                oracle::bessel_i(1, z);
  return u.convert_to<double>();
}

// 1 - s^2 + 2 a l^2 (I0(s/l) - I0(1/l)) / (l^2 I0''(1/l) - l b I0'(1/l))
double weak_oracle(double sigma, const LambdaSet& set) {
  const Big s(sigma), l(set.lambda1);
  const Big l2(set.lambda2), l3(set.lambda3), l4(set.lambda4);
  const Big a = l * l - l2 * l2 / 4 - l3 * l3 / 2 + 2 * l4 * l4;
  const Big b = l2 * l2 / 4 + l3 * l3 / 2 - 2 * l4 * l4;
  const Big z = 1 / l;
  const Big i0 = oracle::bessel_i(0, z), i1 = oracle::bessel_i(1, z);
  const Big i0pp = i0 - i1 / z;
  const Big u = 1 - s * s + 2 * a * l * l * (oracle::bessel_i(0, s / l) - i0) /
                                (l * l * i0pp - l * b * i1);
  return u.convert_to<double>();
}

std::vector<LambdaSet> random_weak_sets(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 0.3);
  std::vector<LambdaSet> out;
  while (out.size() < count) {
    const auto set = LambdaSet::from_independent(u(rng), u(rng), u(rng));
    if (set.lambda1 >= 0.02) out.push_back(set);
  }
  return out;
}

// one-sided fourth-order estimate of u'(1)
template <class F>
double wall_slope(F u, double h) {
  return (25.0 * u(1.0) - 48.0 * u(1.0 - h) + 36.0 * u(1.0 - 2.0 * h) - 16.0 * u(1.0 - 3.0 * h) +
          3.0 * u(1.0 - 4.0 * h)) /
         (12.0 * h);
}

}  // namespace

TEST(PoiseuilleStrong, NoSlipIsExact) {
  for (double l : {1e-3, 0.02, 0.1, 0.3, 2.0, 50.0}) {
    EXPECT_EQ(p::u_strong(1.0, l), 0.0) << l;
  }
  EXPECT_EQ(p::u_classical(1.0), 0.0);
  EXPECT_EQ(p::u_classical(0.0), 1.0);
}

TEST(PoiseuilleStrong, AxisValueMatchesOracle) {
  EXPECT_NEAR(p::u_strong(0.0, 0.1), strong_oracle(0.0, 0.1), 1e-10);
  EXPECT_NEAR(p::u_strong(0.0, 0.1), 0.789237816985883, 1e-12);
}

TEST(PoiseuilleStrong, MatchesOracleOnRandomPoints) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> s(0.0, 1.0);
  for (double l : oracle::log_uniform(60, 0.02, 1.0, 32)) {
    const double sigma = s(rng);
    EXPECT_NEAR(p::u_strong(sigma, l), strong_oracle(sigma, l), 1e-12) << sigma << " " << l;
  }
}

TEST(PoiseuilleStrong, WallSlopeVanishes) {
  for (double l : {0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
    const double slope = wall_slope([l](double s) { return p::u_strong(s, l); }, 1e-4);
    EXPECT_LE(std::fabs(slope), 1e-6) << l;
    EXPECT_LE(std::fabs(p::derivatives(1.0, kStrong, LambdaSet::spherical(l)).du), 1e-12) << l;
  }
}

TEST(PoiseuilleStrong, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double l : {0.05, 0.2}) {
    const auto set = LambdaSet::spherical(l);
    for (double s = 0.1; s < 0.95; s += 0.1) {
      const double up = p::u_strong(s + h, l), mid = p::u_strong(s, l), dn = p::u_strong(s - h, l);
      const auto d = p::derivatives(s, kStrong, set);
      EXPECT_NEAR(d.du, (up - dn) / (2.0 * h), 1e-7) << s;
      EXPECT_NEAR(d.d2u, (up - 2.0 * mid + dn) / (h * h), 2e-4 * std::max(1.0, std::fabs(d.d2u)))
          << s;
    }
  }
}

TEST(PoiseuilleStrong, PositiveAndDecreasing) {
  for (double l : {0.02, 0.1, 0.5}) {
    double previous = p::u_strong(0.0, l);
    EXPECT_GT(previous, 0.0);
    for (int i = 1; i < 400; ++i) {
      const double u = p::u_strong(i / 400.0, l);
      EXPECT_GT(u, 0.0);
      EXPECT_LE(u, previous);
      previous = u;
    }
  }
}

TEST(PoiseuilleStrong, TinyLengthStaysFinite) {
  for (double s : {0.0, 0.5, 0.999, 1.0}) {
    const double u = p::u_strong(s, 1e-3);
    EXPECT_TRUE(std::isfinite(u));
    EXPECT_NEAR(u, p::u_classical(s), 3e-3);
  }
  EXPECT_TRUE(std::isfinite(p::phi_strong(1e-3)));
}

TEST(PoiseuilleStrong, RejectsClassicalBranchAndBadSigma) {
  EXPECT_THROW(p::u_strong(0.5, 0.0), sgflow::ValidationError);
  EXPECT_THROW(p::u_strong(0.5, -0.1), sgflow::ValidationError);
  EXPECT_THROW(p::u_strong(1.5, 0.1), sgflow::ValidationError);
  EXPECT_EQ(p::velocity(0.5, kStrong, LambdaSet{}), 0.75);
}

TEST(PoiseuilleWeak, MatchesOracle) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> s(0.0, 1.0);
  for (const auto& set : random_weak_sets(40, 34)) {
    const double sigma = s(rng);
    EXPECT_NEAR(p::u_weak(sigma, set), weak_oracle(sigma, set), 1e-12) << sigma;
    EXPECT_EQ(p::u_weak(1.0, set), 0.0);
  }
}

TEST(PoiseuilleWeak, HypertractionVanishes) {
  for (const auto& set : random_weak_sets(20, 35)) {
    const auto d = p::derivatives(1.0, kWeak, set);
    const double scale = set.lambda1 * set.lambda1 * std::fabs(d.d2u) + 1e-300;
    EXPECT_LE(std::fabs(p::hypertraction_residual(set)) / scale, 1e-8);

    // independent check: extract the profile's Bessel coefficient from u(0)
    // and evaluate the boundary combination in 50 digits
    const Big z = 1 / Big(set.lambda1);
    const Big c = Big(p::u_weak(0.0, set) - 1.0) / (1 - oracle::bessel_i(0, z));
    const Big l(set.lambda1);
    const Big i0 = oracle::bessel_i(0, z), i1 = oracle::bessel_i(1, z);
    const Big du = -2 + c * i1 / l;
    const Big d2u = -2 + c * (i0 - i1 / z) / (l * l);
    const Big b = Big(set.lambda2 * set.lambda2) / 4 + Big(set.lambda3 * set.lambda3) / 2 -
                  2 * Big(set.lambda4 * set.lambda4);
    const Big r = l * l * d2u - b * du;
    EXPECT_LE(abs(r / (l * l * d2u)).convert_to<double>(), 1e-8);
  }
}

TEST(PoiseuilleWeak, SphericalCaseMatchesGeneralFormula) {
  for (double l : {0.02, 0.05, 0.1, 0.2, 0.3, 0.5}) {
    const auto set = LambdaSet::spherical(l);
    EXPECT_DOUBLE_EQ(set.lambda4 * set.lambda4 * 2.0, l * l);
    for (double s = 0.0; s <= 1.0; s += 0.05) {
      EXPECT_NEAR(p::u_weak_spherical(s, l), p::u_weak(s, set), 1e-12) << l << " " << s;
    }
  }
}

TEST(PoiseuilleWeak, RejectsInconsistentSet) {
  LambdaSet bad{0.0, 0.1, 0.1, 0.1, 0.1};
  EXPECT_THROW(p::u_weak(0.5, bad), sgflow::ValidationError);
  EXPECT_THROW(p::phi_weak(bad), sgflow::ValidationError);
}

TEST(PoiseuilleWeak, PositiveBelowWall) {
  for (const auto& set : random_weak_sets(10, 36)) {
    for (int i = 0; i < 100; ++i) EXPECT_GT(p::u_weak(i / 100.0, set), 0.0);
  }
}

TEST(PoiseuilleDischarge, ClosedFormMatchesQuadrature) {
  for (double l : {0.02, 0.05, 0.1, 0.2, 0.3}) {
    const auto set = LambdaSet::spherical(l);
    EXPECT_NEAR(p::phi_strong(l), p::phi_quadrature(kStrong, set), 1e-8) << l;
    EXPECT_NEAR(p::phi_weak(set), p::phi_quadrature(kWeak, set), 1e-8) << l;
  }
  for (const auto& set : random_weak_sets(5, 37)) {
    EXPECT_NEAR(p::phi_weak(set), p::phi_quadrature(kWeak, set), 1e-8);
  }
  EXPECT_DOUBLE_EQ(p::phi(kStrong, LambdaSet{}), 1.0);
}

TEST(PoiseuilleDischarge, ApproachesOneMonotonically) {
  for (auto bc : {kStrong, kWeak}) {
    double previous = 0.0;
    for (double l : {0.5, 0.3, 0.2, 0.1, 0.05, 0.02, 0.01, 1e-3}) {
      const double phi = p::phi(bc, LambdaSet::spherical(l));
      EXPECT_GT(phi, previous) << l;
      EXPECT_LE(phi, 1.0);
      previous = phi;
    }
    EXPECT_LE(std::fabs(p::phi(bc, LambdaSet::spherical(0.02)) - 1.0), 0.2);
    EXPECT_NEAR(p::phi(bc, LambdaSet::spherical(1e-3)), 1.0, 1e-2);
  }
}

TEST(PoiseuilleResidual, ClassicalProfileIsExact) {
  const auto profile = p::sample_profile(kStrong, LambdaSet{}, 401);
  EXPECT_LE(p::ode_residual(profile, 0.0).sup_norm(), 1e-8);
}

TEST(PoiseuilleResidual, ConstantProfileDeviatesByFour) {
  auto profile = p::sample_profile(kStrong, LambdaSet{}, 401);
  for (auto& u : profile.u) u = 1.0;
  for (double r : p::ode_residual(profile, 0.0).residual) EXPECT_NEAR(r, 4.0, 1e-9);
}

TEST(PoiseuilleResidual, SecondGradientProfiles) {
  for (double l : {0.02, 0.05, 0.1, 0.2, 0.3}) {
    const auto set = LambdaSet::spherical(l);
    EXPECT_LE(p::ode_residual(p::sample_profile(kStrong, set, 801), l).sup_norm(), 1e-4) << l;
    EXPECT_LE(p::ode_residual(p::sample_profile(kWeak, set, 801), l).sup_norm(), 1e-4) << l;
  }
  EXPECT_THROW(p::ode_residual(p::sample_profile(kStrong, LambdaSet::spherical(0.1), 101), 0.1),
               sgflow::ValidationError);
}

TEST(PoiseuilleResidual, DetectsWrongLength) {
  const auto profile = p::sample_profile(kStrong, LambdaSet::spherical(0.1), 801);
  EXPECT_GT(p::ode_residual(profile, 0.12).sup_norm(), 1e-2);
}

TEST(PoiseuilleSweep, ConvergesToClassical) {
  const auto sigma = sgflow::uniform_grid(401);
  const std::vector<double> lambdas{0.2, 0.1, 0.05, 0.02};
  for (auto bc : {kStrong, kWeak}) {
    const auto table = p::convergence_sweep(bc, sigma, lambdas);
    ASSERT_EQ(table.rows.size(), 4u);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      EXPECT_LT(table.rows[i].sup_error, table.rows[i - 1].sup_error);
    }
    for (const auto& row : table.rows) {
      EXPECT_EQ(row.pointwise_error.back(), 0.0);
      if (row.lambda1 <= 0.05) EXPECT_LE(row.sup_error, 3.0 * row.lambda1);
    }
  }
  const std::vector<double> rising{0.1, 0.2};
  EXPECT_THROW(p::convergence_sweep(kStrong, sigma, rising), sgflow::ValidationError);
}

TEST(PoiseuilleDimensional, ScalesTheProfile) {
  p::Problem problem;
  problem.R = 2.0;
  problem.beta = 3.0;
  problem.mu = 0.5;
  problem.lengths = sgflow::material::LengthScales::spherical(0.2);
  const double scale = problem.beta * problem.R * problem.R / (4.0 * problem.mu);
  EXPECT_NEAR(p::dimensional_velocity(problem, 0.6), scale * p::u_strong(0.3, 0.1), 1e-13);
  EXPECT_EQ(p::dimensional_velocity(problem, 2.0), 0.0);
  EXPECT_THROW(p::dimensional_velocity(problem, 2.5), sgflow::ValidationError);

  p::Problem classical;
  classical.beta = 4.0;
  EXPECT_DOUBLE_EQ(p::dimensional_velocity(classical, 0.0), 1.0);
}
