#pragma once

// Taylor-Couette flow inside a cylinder of radius R rotating at angular
// velocity Omega: velocity profiles and the radial pressure problem.
//
// Dimensionless variables: sigma = r / R, u = v / (Omega R),
// pi = p / (rho Omega^2 R^2). The pressure gradient w = pi' solves
//
//   w'' + w'/sigma - (1/sigma^2 + 1/lambda1^2) w = phi(sigma),
//   w regular at 0, w(1) = 0,
//
// where phi is the forcing built from the velocity. Two independent solvers
// are provided: variation of parameters with adaptive quadrature over
// I1/K1 kernels, and a finite-difference boundary-value solve.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sgflow/flow.hpp"
#include "sgflow/material.hpp"

namespace sgflow::couette {

struct Problem {
  double R = 1.0;
  double Omega = 1.0;
  double rho = 1.0;
  double mu = 1.0;
  material::LengthScales lengths;
  BoundaryCondition bc = BoundaryCondition::StrongAdherence;
};

/// Strong adherence profile; lambda1 must be > 0. u(0) = 0, u(1) = 1, u'(1) = 0.
double u_strong_tc(double sigma, double lambda1);
/// Weak adherence: rigid rotation, identical to the classical profile.
double u_weak_tc(double sigma);
/// Dispatches on the boundary condition; lambda1 == 0 gives rigid rotation.
double velocity(double sigma, BoundaryCondition bc, double lambda1);

/// v(r) in physical units.
double dimensional_velocity(const Problem& problem, double r);

/// Angular rate q = u / sigma and its first two sigma-derivatives.
///
/// Working with q keeps every expression regular on the axis, where
/// u ~ c sigma makes u/sigma and u^2/sigma finite.
struct AngularRate {
  double q = 1.0;
  double dq = 0.0;
  double d2q = 0.0;
};

AngularRate angular_rate(double sigma, BoundaryCondition bc, double lambda1);

/// Dimensionless forcing
///   phi = (lambda0^2/lambda1^2) d/dsigma [u (u/sigma)' + (u/sigma)^2] - u^2 / (lambda1^2 sigma)
/// expressed through q = u/sigma.
double forcing(double sigma, const AngularRate& rate, double lambda0, double lambda1);
double forcing(double sigma, BoundaryCondition bc, double lambda0, double lambda1);

struct PressureSetup {
  BoundaryCondition bc = BoundaryCondition::StrongAdherence;
  double lambda0 = 0.0;
  double lambda1 = 0.0;

  static PressureSetup from_problem(const Problem& problem);
};

enum class PressureMethod { ClosedFormQuadrature, FiniteDifferenceBVP, ClassicalDirect };

std::string_view to_string(PressureMethod method);

/// Pressure gradient and pressure on a grid; pi is zero at the first node.
struct PressureSolve {
  std::vector<double> sigma;
  std::vector<double> pi_prime;
  std::vector<double> pi;
  PressureMethod method = PressureMethod::ClosedFormQuadrature;
  SolverReport report;
};

inline constexpr double kAxisOffset = 1e-6;

/// Uniform grid of interior_n + 2 nodes on [eps, 1].
std::vector<double> pressure_grid(std::size_t interior_n, double eps = kAxisOffset);

/// Variation-of-parameters solution evaluated on a uniform grid, each kernel
/// integral by adaptive Simpson to abs_tol. Throws SolverError if a quadrature
/// does not converge.
PressureSolve pressure_closed_form(const PressureSetup& setup, std::span<const double> grid,
                                   double abs_tol = 1e-10);

struct FdOptions {
  double eps = kAxisOffset;
  /// Combine the solutions with N and 2N + 1 interior nodes (fourth order).
  bool richardson = true;
};

/// Sampled solution of the pressure-gradient ODE for an arbitrary forcing.
struct PressureOdeSolution {
  std::vector<double> sigma;  // pressure_grid(interior_n, eps)
  std::vector<double> w;      // w(1) = 0, w linear in sigma over the first cell
  double relative_algebraic_residual = 0.0;
};

/// Second-order conservative central differences for
///   (sigma w')' - (1/sigma + sigma/lambda1^2) w = sigma phi,
/// a tridiagonal, diagonally dominant system. N >= 400 interior nodes.
PressureOdeSolution solve_pressure_ode(double lambda1, const std::function<double(double)>& phi,
                                       std::size_t interior_n, FdOptions options = {});

PressureSolve pressure_fd_bvp(const PressureSetup& setup, std::size_t interior_n,
                              FdOptions options = {});

/// pi' = sigma, pi = sigma^2 / 2: the lambda0 = lambda1 = 0 balance.
PressureSolve pressure_classical(std::span<const double> grid);

/// Both second-gradient solvers on the same nodes, with dual_solver_gap filled in.
struct DualPressureSolve {
  PressureSolve closed_form;
  PressureSolve finite_difference;
  double gap = 0.0;  // sup |pi'_closed - pi'_fd|
};

DualPressureSolve solve_pressure_dual(const PressureSetup& setup, std::size_t interior_n,
                                      FdOptions options = {});

RadialProfile sample_profile(BoundaryCondition bc, double lambda1, std::size_t n);

/// L (1 - lambda1^2 L) u with the Couette operator; the profile must start at
/// the axis with u(0) = 0 (regular solutions only).
ResidualProfile tc_ode_residual(const RadialProfile& profile, double lambda1);

struct SweepRow {
  double lambda1 = 0.0;
  double sup_error = 0.0;
  std::vector<double> pointwise_error;  // |u - sigma|
};

struct SweepTable {
  std::vector<double> sigma;
  std::vector<SweepRow> rows;
};

SweepTable tc_convergence_sweep(BoundaryCondition bc, std::span<const double> sigma,
                                std::span<const double> lambdas);

}  // namespace sgflow::couette
