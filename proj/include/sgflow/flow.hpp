#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sgflow/material.hpp"

namespace sgflow {

enum class BoundaryCondition {
  StrongAdherence,  // v = 0 and dv/dn = 0
  WeakAdherence,    // v = 0 and hypertraction = 0
};

enum class FlowKind { Poiseuille, Couette };

std::string_view to_string(BoundaryCondition bc);
std::string_view to_string(FlowKind flow);

/// Tolerance on lambda1^2 = (3/4) lambda2^2 + (1/2) lambda3^2 + 2 lambda4^2.
inline constexpr double kLambdaConsistencyTolerance = 1e-10;

/// Ratios lambda_i / lambda1 (i = 2, 3, 4); they satisfy
/// (3/4) r2^2 + (1/2) r3^2 + 2 r4^2 = 1 so that a sweep over lambda1 keeps the
/// split of the dissipation between its three terms fixed.
struct LengthRatios {
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.70710678118654752;

  static LengthRatios spherical() { return {}; }
  /// Rescale arbitrary nonnegative weights onto the unit ellipsoid.
  static LengthRatios normalized(double w2, double w3, double w4);
};

/// Dimensionless length scales lambda_i = ell_i / R.
struct LambdaSet {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double lambda4 = 0.0;

  /// Builds lambda1 from the three independent ones.
  static LambdaSet from_independent(double lambda2, double lambda3, double lambda4,
                                    double lambda0 = 0.0);
  static LambdaSet from_ratios(double lambda1, const LengthRatios& ratios, double lambda0 = 0.0);
  static LambdaSet spherical(double lambda1, double lambda0 = 0.0);
  static LambdaSet from_lengths(const material::LengthScales& lengths, double radius);

  /// (3/4) lambda2^2 + (1/2) lambda3^2 + 2 lambda4^2 - lambda1^2
  double consistency_gap() const;
  /// Throws ValidationError when the set is not consistent or has negative entries.
  void validate() const;
  LengthRatios ratios() const;
};

struct ProfileMeta {
  FlowKind flow = FlowKind::Poiseuille;
  BoundaryCondition bc = BoundaryCondition::StrongAdherence;
  LambdaSet lambdas;
  bool classical = false;  // lambda1 == 0 branch
};

/// Dimensionless field sampled on a grid of [0, 1] ending at sigma = 1.
struct RadialProfile {
  std::vector<double> sigma;
  std::vector<double> u;
  ProfileMeta meta;

  std::size_t size() const noexcept { return sigma.size(); }
  /// Grid strictly increasing, last node 1, values finite.
  void validate() const;
  /// Spacing if the grid is uniform (relative deviation <= 1e-9), else throws.
  double uniform_spacing() const;
};

/// n nodes uniformly spaced on [0, 1].
std::vector<double> uniform_grid(std::size_t n);

struct SolverReport {
  double sup_residual = 0.0;
  std::map<std::string, double> bc_residuals;
  double dual_solver_gap = -1.0;  // negative until a cross-solver comparison is made
  std::size_t grid_n = 0;
};

/// Residual of a sampled ODE on the nodes where the stencil applies.
struct ResidualProfile {
  std::vector<double> sigma;
  std::vector<double> residual;
  std::size_t stride = 1;

  double sup_norm() const;
};

/// Stencil stride used by the fourth-order residual operators: kh ~ lambda1 / 30
/// balances truncation error against the eps / (kh)^4 roundoff of double samples.
std::size_t residual_stencil_stride(double lambda1, double h);

}  // namespace sgflow
