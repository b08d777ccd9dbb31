#include "sgflow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgflow/error.hpp"

namespace sgflow::numerics {
namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  QuadratureOptions options;
  std::size_t evaluations = 0;
  double error = 0.0;
  bool exhausted = false;

  double eval(double x) {
    ++evaluations;
    const double y = f(x);
    if (!std::isfinite(y)) {
      throw SolverError("adaptive_quad: integrand is not finite at x = " + std::to_string(x));
    }
    return y;
  }

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= options.min_depth && std::fabs(delta) <= 15.0 * tol) {
      error += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= options.max_depth) {
      exhausted = true;
      error += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, QuadratureOptions options) {
  if (!(a <= b)) throw ValidationError("adaptive_quad: requires a <= b");
  if (!(abs_tol > 0.0)) throw ValidationError("adaptive_quad: tolerance must be positive");
  if (a == b) return {};

  SimpsonState state{f, options};
  const double fa = state.eval(a);
  const double fm = state.eval(0.5 * (a + b));
  const double fb = state.eval(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = state.refine(a, b, fa, fm, fb, whole, abs_tol, 0);

  if (state.exhausted && state.error > abs_tol) {
    throw QuadratureError("adaptive_quad: maximum depth reached with error estimate " +
                              std::to_string(state.error) + " > " + std::to_string(abs_tol),
                          state.error);
  }
  return {value, state.error, state.evaluations};
}

void TridiagonalSystem::validate() const {
  const std::size_t n = diag.size();
  if (n < 3) throw ValidationError("tridiagonal system must have at least 3 unknowns");
  if (sub.size() != n - 1 || super.size() != n - 1 || rhs.size() != n) {
    throw ValidationError("tridiagonal system: inconsistent array lengths");
  }
}

double TridiagonalSystem::residual_norm(std::span<const double> x) const {
  const std::size_t n = diag.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = diag[i] * x[i];
    if (i > 0) ax += sub[i - 1] * x[i - 1];
    if (i + 1 < n) ax += super[i] * x[i + 1];
    worst = std::max(worst, std::fabs(ax - rhs[i]));
  }
  return worst;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& system) {
  system.validate();
  const std::size_t n = system.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);

  double pivot = system.diag[0];
  if (pivot == 0.0) throw SolverError("solve_tridiagonal: zero pivot at row 0");
  c[0] = system.super[0] / pivot;
  d[0] = system.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = system.diag[i] - system.sub[i - 1] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw SolverError("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    }
    if (i + 1 < n) c[i] = system.super[i] / pivot;
    d[i] = (system.rhs[i] - system.sub[i - 1] * d[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

std::vector<double> fd_derivative(std::span<const double> f, double h, int order) {
  const std::size_t n = f.size();
  if (order != 1 && order != 2) throw ValidationError("fd_derivative: order must be 1 or 2");
  if (!(h > 0.0)) throw ValidationError("fd_derivative: spacing must be positive");
  if (n < (order == 1 ? 5u : 6u)) throw ValidationError("fd_derivative: grid too small");

  std::vector<double> out(n);
  if (order == 1) {
    const double s = 1.0 / (12.0 * h);
    out[0] = s * (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]);
    out[1] = s * (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]);
    for (std::size_t i = 2; i + 2 < n; ++i) {
      out[i] = s * (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]);
    }
    const std::size_t l = n - 1;
    out[l - 1] = -s * (-3 * f[l] - 10 * f[l - 1] + 18 * f[l - 2] - 6 * f[l - 3] + f[l - 4]);
    out[l] = -s * (-25 * f[l] + 48 * f[l - 1] - 36 * f[l - 2] + 16 * f[l - 3] - 3 * f[l - 4]);
  } else {
    const double s = 1.0 / (12.0 * h * h);
    out[0] = s * (45 * f[0] - 154 * f[1] + 214 * f[2] - 156 * f[3] + 61 * f[4] - 10 * f[5]);
    out[1] = s * (10 * f[0] - 15 * f[1] - 4 * f[2] + 14 * f[3] - 6 * f[4] + f[5]);
    for (std::size_t i = 2; i + 2 < n; ++i) {
      out[i] = s * (-f[i - 2] + 16 * f[i - 1] - 30 * f[i] + 16 * f[i + 1] - f[i + 2]);
    }
    const std::size_t l = n - 1;
    out[l - 1] = s * (10 * f[l] - 15 * f[l - 1] - 4 * f[l - 2] + 14 * f[l - 3] - 6 * f[l - 4] +
                      f[l - 5]);
    out[l] = s * (45 * f[l] - 154 * f[l - 1] + 214 * f[l - 2] - 156 * f[l - 3] +
                  61 * f[l - 4] - 10 * f[l - 5]);
  }
  return out;
}

std::vector<double> fd_apply_L(std::span<const double> samples, double sigma0, double h,
                               RadialOperator op) {
  if (sigma0 < 0.0) throw ValidationError("fd_apply_L: grid must lie in sigma >= 0");
  const auto d1 = fd_derivative(samples, h, 1);
  const auto d2 = fd_derivative(samples, h, 2);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double s = sigma0 + static_cast<double>(i) * h;
    if (s == 0.0) {
      out[i] = (op == RadialOperator::Poiseuille ? 2.0 : 1.5) * d2[i];
      continue;
    }
    out[i] = d2[i] + d1[i] / s;
    if (op == RadialOperator::Couette) out[i] -= samples[i] / (s * s);
  }
  return out;
}

StencilWindow fd_apply_second_gradient_operator(std::span<const double> f, double sigma0,
                                                double h, RadialOperator op, double lambda_sq,
                                                std::size_t stride) {
  if (stride == 0) throw ValidationError("stencil stride must be positive");
  const std::size_t n = f.size();
  const std::size_t band = 3 * stride;
  if (n < 2 * band + 1) throw ValidationError("grid too small for the 7-point stencil");
  if (sigma0 < 0.0) throw ValidationError("grid must lie in sigma >= 0");

  const double H = h * static_cast<double>(stride);
  const double H2 = H * H;
  const double H3 = H2 * H;
  const double H4 = H2 * H2;
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(stride);

  StencilWindow window;
  std::size_t first = band;
  if (sigma0 + static_cast<double>(first) * h <= 0.0) ++first;
  window.first = first;
  for (std::size_t i = first; i + band < n; ++i) {
    const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(i);
    auto u = [&](std::ptrdiff_t j) { return f[static_cast<std::size_t>(c + j * k)]; };
    const double d1 = (u(-2) - 8 * u(-1) + 8 * u(1) - u(2)) / (12 * H);
    const double d2 = (-u(-2) + 16 * u(-1) - 30 * u(0) + 16 * u(1) - u(2)) / (12 * H2);
    const double d3 = (u(-3) - 8 * u(-2) + 13 * u(-1) - 13 * u(1) + 8 * u(2) - u(3)) / (8 * H3);
    const double d4 = (-u(-3) + 12 * u(-2) - 39 * u(-1) + 56 * u(0) - 39 * u(1) + 12 * u(2) -
                       u(3)) /
                      (6 * H4);
    const double s = sigma0 + static_cast<double>(i) * h;
    const double s2 = s * s;
    double Lu = d2 + d1 / s;
    double LLu = d4 + 2 * d3 / s - d2 / s2 + d1 / (s2 * s);
    if (op == RadialOperator::Couette) {
      Lu -= u(0) / s2;
      LLu += -2 * d2 / s2 + 2 * d1 / (s2 * s) - 3 * u(0) / (s2 * s2);
    }
    window.values.push_back(Lu - lambda_sq * LLu);
  }
  return window;
}

std::vector<double> cumulative_integral(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
  }
  // Simpson on even prefixes.
  for (std::size_t i = 2; i < n; i += 2) {
    out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  }
  out[1] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
  for (std::size_t i = 3; i < n; i += 2) {
    out[i] = out[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
  }
  return out;
}

}  // namespace sgflow::numerics
