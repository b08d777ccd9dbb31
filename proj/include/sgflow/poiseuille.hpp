#pragma once

// Steady Poiseuille flow of the second-gradient fluid in a tube of radius R.
//
// Dimensionless variables: sigma = r / R, u = 4 mu v / (beta R^2), and the
// discharge Phi = 8 mu Q / (pi beta R^4), so that the classical profile is
// 1 - sigma^2 with Phi = 1. Every closed form is evaluated through
// exponentially scaled Bessel functions, so lambda1 can go to 1e-3 and below
// without overflow.

#include <cstddef>
#include <span>
#include <vector>

#include "sgflow/flow.hpp"
#include "sgflow/material.hpp"

namespace sgflow::poiseuille {

struct Problem {
  double R = 1.0;
  double beta = 1.0;  // -dp/dz
  double mu = 1.0;
  material::LengthScales lengths;
  BoundaryCondition bc = BoundaryCondition::StrongAdherence;
};

double u_classical(double sigma);

/// Strong adherence; lambda1 must be > 0.
double u_strong(double sigma, double lambda1);

/// Weak adherence with a consistent lambda set, lambda1 > 0.
double u_weak(double sigma, const LambdaSet& lambdas);

/// Weak adherence in the spherical-part case lambda2 = lambda3 = 0.
double u_weak_spherical(double sigma, double lambda1);

/// Dispatches on the boundary condition; lambda1 == 0 gives the classical profile.
double velocity(double sigma, BoundaryCondition bc, const LambdaSet& lambdas);

struct Derivatives {
  double du = 0.0;
  double d2u = 0.0;
};

/// Analytic u'(sigma) and u''(sigma).
Derivatives derivatives(double sigma, BoundaryCondition bc, const LambdaSet& lambdas);

/// lambda1^2 u''(1) - (lambda2^2/4 + lambda3^2/2 - 2 lambda4^2) u'(1) for the
/// weak-adherence profile; vanishes when the hypertraction does.
double hypertraction_residual(const LambdaSet& lambdas);

double phi_strong(double lambda1);
double phi_weak(const LambdaSet& lambdas);
double phi(BoundaryCondition bc, const LambdaSet& lambdas);

/// 4 * integral_0^1 u(sigma) sigma d sigma by adaptive quadrature.
double phi_quadrature(BoundaryCondition bc, const LambdaSet& lambdas, double abs_tol = 1e-12);

/// v(r) in physical units.
double dimensional_velocity(const Problem& problem, double r);

RadialProfile sample_profile(BoundaryCondition bc, const LambdaSet& lambdas, std::size_t n);

/// L (1 - lambda1^2 L) u + 4 on a uniform grid with at least 201 nodes.
ResidualProfile ode_residual(const RadialProfile& profile, double lambda1);

struct SweepRow {
  double lambda1 = 0.0;
  double sup_error = 0.0;
  double phi = 0.0;
  std::vector<double> pointwise_error;  // |u - u_classical| on the sweep grid
};

struct SweepTable {
  std::vector<double> sigma;
  std::vector<SweepRow> rows;
};

/// Error against the classical profile for a strictly decreasing list of
/// lambda1 values; weak adherence keeps the lambda ratios fixed.
SweepTable convergence_sweep(BoundaryCondition bc, std::span<const double> sigma,
                             std::span<const double> lambdas,
                             const LengthRatios& ratios = LengthRatios::spherical());

}  // namespace sgflow::poiseuille
