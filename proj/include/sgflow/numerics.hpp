#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sgflow::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  int min_depth = 4;   // forced bisections before the error test is trusted
  int max_depth = 50;
};

/// Adaptive Simpson quadrature of f on [a, b] to an absolute tolerance.
///
/// Throws QuadratureError when some subinterval reaches max_depth without
/// meeting its share of the tolerance, and SolverError if f returns a
/// non-finite value.
QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, QuadratureOptions options = {});

/// A x = rhs with A given by its three diagonals; sub and super have n - 1 entries.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> super;
  std::vector<double> rhs;

  std::size_t size() const noexcept { return diag.size(); }
  void validate() const;
  /// max_i |(A x - rhs)_i|
  double residual_norm(std::span<const double> x) const;
};

/// Thomas algorithm, no pivoting. Throws SolverError on a zero pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

/// Fourth-order finite-difference derivative (order 1 or 2) on a uniform grid
/// of spacing h. Interior nodes use 5-point central stencils; the two nodes at
/// each end use one-sided stencils of the same order.
std::vector<double> fd_derivative(std::span<const double> samples, double h, int order);

enum class RadialOperator {
  Poiseuille,  // L = d^2/dr^2 + (1/r) d/dr
  Couette,     // L = d^2/dr^2 + (1/r) d/dr - 1/r^2
};

/// Apply L to samples on the uniform grid sigma_i = sigma0 + i h.
///
/// A node at sigma = 0 takes the regular limit: 2 u'' for Poiseuille,
/// (3/2) u'' for Couette.
std::vector<double> fd_apply_L(std::span<const double> samples, double sigma0, double h,
                               RadialOperator op);

/// Values of an operator on the nodes [first, first + values.size()).
struct StencilWindow {
  std::size_t first = 0;
  std::vector<double> values;
};

/// Apply L (1 - lambda_sq L) with fourth-order 7-point central stencils of
/// spacing stride * h. Only nodes at least 3 * stride away from either end
/// and with sigma > 0 are returned.
StencilWindow fd_apply_second_gradient_operator(std::span<const double> samples, double sigma0,
                                                double h, RadialOperator op, double lambda_sq,
                                                std::size_t stride = 1);

/// Running integral of samples on a uniform grid, zero at the first node.
///
/// Simpson's rule on even prefixes, Simpson plus a 3/8 panel on odd ones, and a
/// four-point corrected panel for the first interval; fourth order throughout
/// when at least four samples are given, trapezoid otherwise.
std::vector<double> cumulative_integral(std::span<const double> samples, double h);

}  // namespace sgflow::numerics
