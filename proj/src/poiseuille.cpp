#include "sgflow/poiseuille.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgflow/bessel.hpp"
#include "sgflow/error.hpp"
#include "sgflow/numerics.hpp"

namespace sgflow::poiseuille {
namespace {

using bessel::i0_scaled;
using bessel::i1_prime_scaled;
using bessel::i1_scaled;

void require_sigma(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw ValidationError("sigma must lie in [0, 1], got " + std::to_string(sigma));
  }
}

void require_lambda1(double lambda1) {
  if (!std::isfinite(lambda1) || lambda1 < 0.0) {
    throw ValidationError("lambda1 must be finite and >= 0");
  }
  if (lambda1 == 0.0) {
    throw ValidationError("lambda1 = 0 is the classical branch; use u_classical");
  }
}

// exp(-(1 - sigma)/lambda1): the ratio I(sigma/lambda1) / I(1/lambda1) in scaled form.
double decay(double sigma, double lambda1) { return std::exp(-(1.0 - sigma) / lambda1); }

// (lambda1^2 - lambda2^2/4 - lambda3^2/2 + 2 lambda4^2)
double weak_numerator_weight(const LambdaSet& l) {
  return l.lambda1 * l.lambda1 - 0.25 * l.lambda2 * l.lambda2 - 0.5 * l.lambda3 * l.lambda3 +
         2.0 * l.lambda4 * l.lambda4;
}

// (lambda2^2/4 + lambda3^2/2 - 2 lambda4^2)
double weak_slope_weight(const LambdaSet& l) {
  return 0.25 * l.lambda2 * l.lambda2 + 0.5 * l.lambda3 * l.lambda3 -
         2.0 * l.lambda4 * l.lambda4;
}

// Coefficient C of [I0(sigma/lambda1) - I0(1/lambda1)] in the weak profile, with
// both numerator and denominator divided by exp(1/lambda1).
double weak_coefficient(const LambdaSet& l) {
  const double lam = l.lambda1;
  const double z = 1.0 / lam;
  const double denominator = lam * lam * i1_prime_scaled(z) - lam * weak_slope_weight(l) * i1_scaled(z);
  return 2.0 * weak_numerator_weight(l) * lam * lam / denominator;
}

void require_weak_set(const LambdaSet& lambdas) {
  lambdas.validate();
  require_lambda1(lambdas.lambda1);
}

}  // namespace

double u_classical(double sigma) { return 1.0 - sigma * sigma; }

double u_strong(double sigma, double lambda1) {
  require_sigma(sigma);
  require_lambda1(lambda1);
  const double z = 1.0 / lambda1;
  const double bracket = decay(sigma, lambda1) * i0_scaled(sigma / lambda1) - i0_scaled(z);
  return u_classical(sigma) + 2.0 * lambda1 * bracket / i1_scaled(z);
}

double u_weak(double sigma, const LambdaSet& lambdas) {
  require_sigma(sigma);
  require_weak_set(lambdas);
  const double lam = lambdas.lambda1;
  const double bracket = decay(sigma, lam) * i0_scaled(sigma / lam) - i0_scaled(1.0 / lam);
  return u_classical(sigma) + weak_coefficient(lambdas) * bracket;
}

double u_weak_spherical(double sigma, double lambda1) {
  require_sigma(sigma);
  require_lambda1(lambda1);
  const double z = 1.0 / lambda1;
  const double bracket = decay(sigma, lambda1) * i0_scaled(sigma / lambda1) - i0_scaled(z);
  return u_classical(sigma) +
         4.0 * lambda1 * lambda1 * bracket / (i1_prime_scaled(z) + lambda1 * i1_scaled(z));
}

double velocity(double sigma, BoundaryCondition bc, const LambdaSet& lambdas) {
  if (lambdas.lambda1 == 0.0) {
    require_sigma(sigma);
    return u_classical(sigma);
  }
  return bc == BoundaryCondition::StrongAdherence ? u_strong(sigma, lambdas.lambda1)
                                                  : u_weak(sigma, lambdas);
}

Derivatives derivatives(double sigma, BoundaryCondition bc, const LambdaSet& lambdas) {
  require_sigma(sigma);
  const double lam = lambdas.lambda1;
  if (lam == 0.0) return {-2.0 * sigma, -2.0};
  require_lambda1(lam);
  const double x = sigma / lam;
  const double e = decay(sigma, lam);
  // u = 1 - sigma^2 + C (e I0^(x) - I0^(z)); d/dsigma I0(x) = I1(x) / lam
  double c = 0.0;
  if (bc == BoundaryCondition::StrongAdherence) {
    c = 2.0 * lam / i1_scaled(1.0 / lam);
  } else {
    require_weak_set(lambdas);
    c = weak_coefficient(lambdas);
  }
  return {-2.0 * sigma + c / lam * e * i1_scaled(x),
          -2.0 + c / (lam * lam) * e * i1_prime_scaled(x)};
}

double hypertraction_residual(const LambdaSet& lambdas) {
  require_weak_set(lambdas);
  const auto d = derivatives(1.0, BoundaryCondition::WeakAdherence, lambdas);
  return lambdas.lambda1 * lambdas.lambda1 * d.d2u - weak_slope_weight(lambdas) * d.du;
}

double phi_strong(double lambda1) {
  require_lambda1(lambda1);
  const double z = 1.0 / lambda1;
  return 1.0 + 8.0 * lambda1 * lambda1 - 4.0 * lambda1 * i0_scaled(z) / i1_scaled(z);
}

double phi_weak(const LambdaSet& lambdas) {
  require_weak_set(lambdas);
  const double lam = lambdas.lambda1;
  const double z = 1.0 / lam;
  return 1.0 + 4.0 * weak_coefficient(lambdas) * (lam * i1_scaled(z) - 0.5 * i0_scaled(z));
}

double phi(BoundaryCondition bc, const LambdaSet& lambdas) {
  if (lambdas.lambda1 == 0.0) return 1.0;
  return bc == BoundaryCondition::StrongAdherence ? phi_strong(lambdas.lambda1)
                                                  : phi_weak(lambdas);
}

double phi_quadrature(BoundaryCondition bc, const LambdaSet& lambdas, double abs_tol) {
  const auto integrand = [&](double s) { return 4.0 * velocity(s, bc, lambdas) * s; };
  return numerics::adaptive_quad(integrand, 0.0, 1.0, abs_tol).value;
}

double dimensional_velocity(const Problem& problem, double r) {
  if (!(problem.R > 0.0) || !(problem.mu > 0.0)) {
    throw ValidationError("Poiseuille problem needs R > 0 and mu > 0");
  }
  if (!(r >= 0.0 && r <= problem.R)) throw ValidationError("r must lie in [0, R]");
  const auto lambdas = LambdaSet::from_lengths(problem.lengths, problem.R);
  const double sigma = std::min(r / problem.R, 1.0);
  return problem.beta * problem.R * problem.R / (4.0 * problem.mu) *
         velocity(sigma, problem.bc, lambdas);
}

RadialProfile sample_profile(BoundaryCondition bc, const LambdaSet& lambdas, std::size_t n) {
  RadialProfile profile;
  profile.sigma = uniform_grid(n);
  profile.u.reserve(n);
  for (double s : profile.sigma) profile.u.push_back(velocity(s, bc, lambdas));
  profile.meta = {FlowKind::Poiseuille, bc, lambdas, lambdas.lambda1 == 0.0};
  return profile;
}

ResidualProfile ode_residual(const RadialProfile& profile, double lambda1) {
  if (profile.size() < 201) throw ValidationError("ode_residual: grid too coarse (need N >= 201)");
  if (!(lambda1 >= 0.0)) throw ValidationError("lambda1 must be >= 0");
  const double h = profile.uniform_spacing();
  const std::size_t stride = residual_stencil_stride(lambda1, h);
  const auto window = numerics::fd_apply_second_gradient_operator(
      profile.u, profile.sigma.front(), h, numerics::RadialOperator::Poiseuille,
      lambda1 * lambda1, stride);

  ResidualProfile out;
  out.stride = stride;
  for (std::size_t i = 0; i < window.values.size(); ++i) {
    out.sigma.push_back(profile.sigma[window.first + i]);
    out.residual.push_back(window.values[i] + 4.0);
  }
  return out;
}

SweepTable convergence_sweep(BoundaryCondition bc, std::span<const double> sigma,
                             std::span<const double> lambdas, const LengthRatios& ratios) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw ValidationError("sweep lambdas must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
      throw ValidationError("sweep lambdas must be strictly decreasing");
    }
  }
  SweepTable table;
  table.sigma.assign(sigma.begin(), sigma.end());
  for (double lam : lambdas) {
    const auto set = LambdaSet::from_ratios(lam, ratios);
    SweepRow row;
    row.lambda1 = lam;
    row.phi = phi(bc, set);
    row.pointwise_error.reserve(sigma.size());
    for (double s : sigma) {
      const double err = std::fabs(velocity(s, bc, set) - u_classical(s));
      row.pointwise_error.push_back(err);
      row.sup_error = std::max(row.sup_error, err);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sgflow::poiseuille
