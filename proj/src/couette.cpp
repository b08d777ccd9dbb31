#include "sgflow/couette.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgflow/bessel.hpp"
#include "sgflow/error.hpp"
#include "sgflow/numerics.hpp"

namespace sgflow::couette {
namespace {

using bessel::i1_scaled;
using bessel::i_over_power_scaled;
using bessel::k1_scaled;

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
    throw ValidationError("lambda1 = 0 is the classical branch");
  }
}

void require_setup(const PressureSetup& setup) {
  require_lambda1(setup.lambda1);
  if (!std::isfinite(setup.lambda0) || setup.lambda0 < 0.0) {
    throw ValidationError("lambda0 must be finite and >= 0");
  }
}

double decay(double sigma, double lambda1) { return std::exp(-(1.0 - sigma) / lambda1); }

double sup_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

double grid_spacing(std::span<const double> grid) {
  if (grid.size() < 4) throw ValidationError("pressure grid needs at least four nodes");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::fabs(grid[i] - grid[i - 1] - h) > 1e-9 * h) {
      throw ValidationError("pressure grid must be uniform");
    }
  }
  if (grid.front() < 0.0 || grid.back() != 1.0) {
    throw ValidationError("pressure grid must lie in [0, 1] and end at 1");
  }
  return h;
}

struct Tridiagonal {
  numerics::TridiagonalSystem system;
  std::vector<double> sigma;
};

// Interior rows of (sigma w')' - (1/sigma + sigma/lambda1^2) w = sigma phi on
// [eps, 1]. w(1) = 0; at the axis end a regular solution grows like sigma, so
// w(eps) = (eps / sigma_1) w(sigma_1) is folded into the first row.
Tridiagonal assemble(double lambda1, const std::function<double(double)>& phi, std::size_t n,
                     double eps) {
  Tridiagonal out;
  out.sigma = pressure_grid(n, eps);
  const double h = (1.0 - eps) / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);
  const double inv_lam2 = 1.0 / (lambda1 * lambda1);
  auto& sys = out.system;
  sys.diag.resize(n);
  sys.rhs.resize(n);
  sys.sub.resize(n - 1);
  sys.super.resize(n - 1);
  for (std::size_t j = 1; j <= n; ++j) {
    const double s = out.sigma[j];
    const double s_minus = s - 0.5 * h;
    const double s_plus = s + 0.5 * h;
    const std::size_t row = j - 1;
    sys.diag[row] = -(s_minus + s_plus) * inv_h2 - (1.0 / s + s * inv_lam2);
    sys.rhs[row] = s * phi(s);
    if (row > 0) sys.sub[row - 1] = s_minus * inv_h2;
    if (row + 1 < n) sys.super[row] = s_plus * inv_h2;
  }
  sys.diag[0] += (out.sigma[1] - 0.5 * h) * inv_h2 * out.sigma[0] / out.sigma[1];
  return out;
}

struct RawSolve {
  std::vector<double> w;
  double relative_residual = 0.0;
};

RawSolve solve_raw(double lambda1, const std::function<double(double)>& phi, std::size_t n,
                   double eps) {
  const auto assembled = assemble(lambda1, phi, n, eps);
  const auto interior = numerics::solve_tridiagonal(assembled.system);
  double scale = 0.0;
  for (double r : assembled.system.rhs) scale = std::max(scale, std::fabs(r));
  RawSolve out;
  out.w.assign(n + 2, 0.0);
  std::copy(interior.begin(), interior.end(), out.w.begin() + 1);
  out.w[0] = assembled.sigma[0] / assembled.sigma[1] * out.w[1];
  out.relative_residual =
      assembled.system.residual_norm(interior) / (scale > 0.0 ? scale : 1.0);
  return out;
}

std::function<double(double)> forcing_function(const PressureSetup& setup) {
  return [setup](double s) { return forcing(s, setup.bc, setup.lambda0, setup.lambda1); };
}

}  // namespace

double u_strong_tc(double sigma, double lambda1) {
  require_sigma(sigma);
  require_lambda1(lambda1);
  return sigma * angular_rate(sigma, BoundaryCondition::StrongAdherence, lambda1).q;
}

double u_weak_tc(double sigma) {
  require_sigma(sigma);
  return sigma;
}

double velocity(double sigma, BoundaryCondition bc, double lambda1) {
  if (lambda1 == 0.0 || bc == BoundaryCondition::WeakAdherence) {
    require_sigma(sigma);
    if (lambda1 != 0.0) require_lambda1(lambda1);
    return sigma;
  }
  return u_strong_tc(sigma, lambda1);
}

double dimensional_velocity(const Problem& problem, double r) {
  if (!(problem.R > 0.0)) throw ValidationError("Couette problem needs R > 0");
  if (!(r >= 0.0 && r <= problem.R)) throw ValidationError("r must lie in [0, R]");
  const double sigma = std::min(r / problem.R, 1.0);
  return problem.Omega * problem.R *
         velocity(sigma, problem.bc, problem.lengths.ell1() / problem.R);
}

AngularRate angular_rate(double sigma, BoundaryCondition bc, double lambda1) {
  require_sigma(sigma);
  if (lambda1 == 0.0 || bc == BoundaryCondition::WeakAdherence) {
    if (lambda1 != 0.0) require_lambda1(lambda1);
    return {};
  }
  require_lambda1(lambda1);
  // q = 1 + [g1(z) - g1(x)] / I2(z) with g_n = I_n(x) / x^n, x = sigma/lambda1,
  // z = 1/lambda1, and g_n' = x g_{n+1}. Everything is divided by exp(z).
  const double z = 1.0 / lambda1;
  const double x = sigma / lambda1;
  const double e = decay(sigma, lambda1);
  const double g2z = i_over_power_scaled(2, z);
  const double g2x = i_over_power_scaled(2, x);
  AngularRate r;
  r.q = 1.0 + (i_over_power_scaled(1, z) - e * i_over_power_scaled(1, x)) / (z * z * g2z);
  r.dq = -sigma * e * g2x / g2z;
  r.d2q = -(g2x + x * x * i_over_power_scaled(3, x)) * e / g2z;
  return r;
}

double forcing(double sigma, const AngularRate& rate, double lambda0, double lambda1) {
  require_lambda1(lambda1);
  const double q = rate.q;
  const double dq = rate.dq;
  const double inertia_like = 3.0 * q * dq + sigma * dq * dq + sigma * q * rate.d2q;
  return (lambda0 * lambda0 * inertia_like - sigma * q * q) / (lambda1 * lambda1);
}

double forcing(double sigma, BoundaryCondition bc, double lambda0, double lambda1) {
  return forcing(sigma, angular_rate(sigma, bc, lambda1), lambda0, lambda1);
}

PressureSetup PressureSetup::from_problem(const Problem& problem) {
  if (!(problem.R > 0.0)) throw ValidationError("Couette problem needs R > 0");
  return {problem.bc, problem.lengths.ell0() / problem.R, problem.lengths.ell1() / problem.R};
}

std::string_view to_string(PressureMethod method) {
  switch (method) {
    case PressureMethod::ClosedFormQuadrature: return "closed_form_quadrature";
    case PressureMethod::FiniteDifferenceBVP: return "finite_difference_bvp";
    case PressureMethod::ClassicalDirect: return "classical_direct";
  }
  return "unknown";
}

std::vector<double> pressure_grid(std::size_t interior_n, double eps) {
  if (interior_n < 2) throw ValidationError("pressure grid needs at least two interior nodes");
  if (!(eps > 0.0 && eps < 0.5)) throw ValidationError("axis offset must lie in (0, 0.5)");
  const double h = (1.0 - eps) / static_cast<double>(interior_n + 1);
  std::vector<double> grid(interior_n + 2);
  for (std::size_t j = 0; j < grid.size(); ++j) grid[j] = eps + static_cast<double>(j) * h;
  grid.back() = 1.0;
  return grid;
}

PressureSolve pressure_closed_form(const PressureSetup& setup, std::span<const double> grid,
                                   double abs_tol) {
  require_setup(setup);
  const double h = grid_spacing(grid);
  const double lam = setup.lambda1;
  const double z = 1.0 / lam;
  const double c_hat = k1_scaled(z) / i1_scaled(z);
  const auto phi = forcing_function(setup);

  PressureSolve out;
  out.method = PressureMethod::ClosedFormQuadrature;
  out.sigma.assign(grid.begin(), grid.end());
  out.pi_prime.resize(grid.size());
  double worst_error = 0.0;

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double sigma = grid[i];
    if (sigma == 0.0) {
      out.pi_prime[i] = 0.0;
      continue;
    }
    const double x = sigma / lam;
    const double i1x = i1_scaled(x);
    const double k1x = k1_scaled(x);
    const double e_sigma = decay(sigma, lam);

    // s in [sigma, 1]: G = c I1(x) I1(y) - I1(x) K1(y)
    const auto outer = [&](double s) {
      const double y = s / lam;
      const double g = c_hat * e_sigma * decay(s, lam) * i1_scaled(y) -
                       k1_scaled(y) * std::exp(-(s - sigma) / lam);
      return i1x * g * s * phi(s);
    };
    // s in [0, sigma]: G = c I1(x) I1(y) - K1(x) I1(y)
    const auto inner = [&](double s) {
      const double y = s / lam;
      const double g = c_hat * i1x * e_sigma * decay(s, lam) -
                       k1x * std::exp(-(sigma - s) / lam);
      return g * i1_scaled(y) * s * phi(s);
    };
    const auto a = numerics::adaptive_quad(outer, sigma, 1.0, abs_tol);
    const auto b = numerics::adaptive_quad(inner, 0.0, sigma, abs_tol);
    out.pi_prime[i] = a.value + b.value;
    worst_error = std::max(worst_error, a.abs_error_estimate + b.abs_error_estimate);
  }

  out.pi = numerics::cumulative_integral(out.pi_prime, h);
  out.report.sup_residual = worst_error;
  out.report.bc_residuals["pi_prime_at_wall"] = out.pi_prime.back();
  out.report.bc_residuals["pi_prime_at_axis"] = out.pi_prime.front();
  out.report.grid_n = grid.size();
  return out;
}

PressureOdeSolution solve_pressure_ode(double lambda1, const std::function<double(double)>& phi,
                                       std::size_t interior_n, FdOptions options) {
  require_lambda1(lambda1);
  if (interior_n < 400) throw ValidationError("finite-difference pressure solve needs N >= 400");
  PressureOdeSolution out;
  out.sigma = pressure_grid(interior_n, options.eps);
  auto coarse = solve_raw(lambda1, phi, interior_n, options.eps);
  out.relative_algebraic_residual = coarse.relative_residual;
  if (!options.richardson) {
    out.w = std::move(coarse.w);
    return out;
  }
  // Fine grid halves the spacing, so coarse node j sits at fine node 2j.
  const auto fine = solve_raw(lambda1, phi, 2 * interior_n + 1, options.eps);
  out.relative_algebraic_residual =
      std::max(out.relative_algebraic_residual, fine.relative_residual);
  out.w.resize(coarse.w.size());
  for (std::size_t j = 0; j < coarse.w.size(); ++j) {
    out.w[j] = (4.0 * fine.w[2 * j] - coarse.w[j]) / 3.0;
  }
  return out;
}

PressureSolve pressure_fd_bvp(const PressureSetup& setup, std::size_t interior_n,
                              FdOptions options) {
  require_setup(setup);
  auto solution = solve_pressure_ode(setup.lambda1, forcing_function(setup), interior_n, options);
  const double h = (1.0 - options.eps) / static_cast<double>(interior_n + 1);

  PressureSolve out;
  out.method = PressureMethod::FiniteDifferenceBVP;
  out.sigma = std::move(solution.sigma);
  out.pi_prime = std::move(solution.w);
  out.pi = numerics::cumulative_integral(out.pi_prime, h);
  out.report.sup_residual = solution.relative_algebraic_residual;
  out.report.bc_residuals["pi_prime_at_wall"] = out.pi_prime.back();
  out.report.bc_residuals["pi_prime_at_axis"] = out.pi_prime.front();
  out.report.grid_n = interior_n;
  return out;
}

PressureSolve pressure_classical(std::span<const double> grid) {
  grid_spacing(grid);
  PressureSolve out;
  out.method = PressureMethod::ClassicalDirect;
  out.sigma.assign(grid.begin(), grid.end());
  const double s0 = grid.front();
  for (double s : grid) {
    out.pi_prime.push_back(s);
    out.pi.push_back(0.5 * (s * s - s0 * s0));
  }
  out.report.grid_n = grid.size();
  return out;
}

DualPressureSolve solve_pressure_dual(const PressureSetup& setup, std::size_t interior_n,
                                      FdOptions options) {
  DualPressureSolve out;
  out.finite_difference = pressure_fd_bvp(setup, interior_n, options);
  out.closed_form = pressure_closed_form(setup, out.finite_difference.sigma);
  out.gap = sup_abs_diff(out.closed_form.pi_prime, out.finite_difference.pi_prime);
  out.closed_form.report.dual_solver_gap = out.gap;
  out.finite_difference.report.dual_solver_gap = out.gap;
  return out;
}

RadialProfile sample_profile(BoundaryCondition bc, double lambda1, std::size_t n) {
  RadialProfile profile;
  profile.sigma = uniform_grid(n);
  profile.u.reserve(n);
  for (double s : profile.sigma) profile.u.push_back(velocity(s, bc, lambda1));
  LambdaSet set;
  set.lambda1 = lambda1;
  profile.meta = {FlowKind::Couette, bc, set, lambda1 == 0.0};
  return profile;
}

ResidualProfile tc_ode_residual(const RadialProfile& profile, double lambda1) {
  if (profile.size() < 201) {
    throw ValidationError("tc_ode_residual: grid too coarse (need N >= 201)");
  }
  if (!(lambda1 >= 0.0)) throw ValidationError("lambda1 must be >= 0");
  const double h = profile.uniform_spacing();
  if (profile.sigma.front() != 0.0 || std::fabs(profile.u.front()) > 1e-12) {
    throw ValidationError("tc_ode_residual: profile must start at the axis with u(0) = 0");
  }
  const std::size_t stride = residual_stencil_stride(lambda1, h);
  const auto window = numerics::fd_apply_second_gradient_operator(
      profile.u, 0.0, h, numerics::RadialOperator::Couette, lambda1 * lambda1, stride);

  ResidualProfile out;
  out.stride = stride;
  for (std::size_t i = 0; i < window.values.size(); ++i) {
    out.sigma.push_back(profile.sigma[window.first + i]);
    out.residual.push_back(window.values[i]);
  }
  return out;
}

SweepTable tc_convergence_sweep(BoundaryCondition bc, std::span<const double> sigma,
                                std::span<const double> lambdas) {
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw ValidationError("sweep lambdas must be positive");
    if (i > 0 && !(lambdas[i] < lambdas[i - 1])) {
      throw ValidationError("sweep lambdas must be strictly decreasing");
    }
  }
  SweepTable table;
  table.sigma.assign(sigma.begin(), sigma.end());
  for (double lam : lambdas) {
    SweepRow row;
    row.lambda1 = lam;
    row.pointwise_error.reserve(sigma.size());
    for (double s : sigma) {
      const double err = std::fabs(velocity(s, bc, lam) - s);
      row.pointwise_error.push_back(err);
      row.sup_error = std::max(row.sup_error, err);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace sgflow::couette
