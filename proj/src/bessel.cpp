#include "sgflow/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sgflow/error.hpp"

namespace sgflow::bessel {
namespace {

// Below this the power series converges without cancellation for I; above it
// the smallest asymptotic term is ~exp(-2z) < 1e-17.
constexpr double kSeriesLimit = 20.0;
// Trapezoid step for the K integral. The error is ~exp(-pi^2 / h) from the
// strip of analyticity, and ~exp(-2 pi^2 / (z h^2)) once the peak narrows to
// width 1/sqrt(z); both stay near exp(-40).
constexpr double kTrapezoidStep = 0.25;

double trapezoid_step(double z) {
  return std::min(kTrapezoidStep, std::numbers::pi / std::sqrt(20.0 * z));
}

void require_nonnegative(double z, const char* name) {
  if (!std::isfinite(z) || z < 0.0) {
    throw DomainError(std::string(name) + ": argument must be finite and >= 0, got " +
                      std::to_string(z));
  }
}

void require_positive(double z, const char* name) {
  if (!std::isfinite(z) || z <= 0.0) {
    throw DomainError(std::string(name) + ": argument must be finite and > 0, got " +
                      std::to_string(z));
  }
}

// sum_k (z^2/4)^k / (2^n k! (k+n)!)  ==  I_n(z) / z^n
double power_series_over_power(int n, double z) {
  double term = 1.0;
  for (int j = 1; j <= n; ++j) term /= 2.0 * j;
  const double q = 0.25 * z * z;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// Hankel expansion: sum_k s^k a_k(n) / z^k with a_k(n) = prod_{j<=k} (4n^2 - (2j-1)^2) / (k! 8^k).
// sign = -1 gives the I series, +1 the K series.
double hankel_sum(int n, double z, double sign) {
  const double mu = 4.0 * n * n;
  double term = 1.0;
  double sum = 1.0;
  double previous = INFINITY;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= sign * (mu - odd * odd) / (8.0 * k * z);
    const double magnitude = std::fabs(term);
    if (magnitude == 0.0) break;
    if (magnitude > previous) break;  // asymptotic series started diverging
    sum += term;
    if (magnitude < 1e-17 * std::fabs(sum)) break;
    previous = magnitude;
  }
  return sum;
}

double i_asymptotic_scaled(int n, double z) {
  return hankel_sum(n, z, -1.0) / std::sqrt(2.0 * std::numbers::pi * z);
}

double k_asymptotic_scaled(int n, double z) {
  return std::sqrt(std::numbers::pi / (2.0 * z)) * hankel_sum(n, z, 1.0);
}

// exp(z) K_n(z) = int_0^inf exp(-z (cosh t - 1)) cosh(n t) dt
double k_integral_scaled(int n, double z) {
  const double h = trapezoid_step(z);
  double sum = 0.5;  // f(0) = 1 with trapezoid weight 1/2
  for (int j = 1; j < 4000; ++j) {
    const double t = j * h;
    const double half_sinh = std::sinh(0.5 * t);
    const double term = std::exp(-2.0 * z * half_sinh * half_sinh) * std::cosh(n * t);
    sum += term;
    const bool past_peak = z * std::sinh(t) >= n;
    if (past_peak && term < 1e-18 * sum) break;
  }
  return h * sum;
}

double i_scaled(int n, double z) {
  if (z <= kSeriesLimit) return std::exp(-z) * std::pow(z, n) * power_series_over_power(n, z);
  return i_asymptotic_scaled(n, z);
}

double i_unscaled(int n, double z) {
  if (z <= kSeriesLimit) return std::pow(z, n) * power_series_over_power(n, z);
  return std::exp(z) * i_asymptotic_scaled(n, z);
}

double k_scaled(int n, double z) {
  if (z < kSeriesLimit) return k_integral_scaled(n, z);
  return k_asymptotic_scaled(n, z);
}

}  // namespace

double i0(double z) {
  require_nonnegative(z, "i0");
  return i_unscaled(0, z);
}

double i1(double z) {
  require_nonnegative(z, "i1");
  return i_unscaled(1, z);
}

double k0(double z) {
  require_positive(z, "k0");
  return std::exp(-z) * k_scaled(0, z);
}

double k1(double z) {
  require_positive(z, "k1");
  return std::exp(-z) * k_scaled(1, z);
}

double i0_scaled(double z) {
  require_nonnegative(z, "i0_scaled");
  return i_scaled(0, z);
}

double i1_scaled(double z) {
  require_nonnegative(z, "i1_scaled");
  return i_scaled(1, z);
}

double k0_scaled(double z) {
  require_positive(z, "k0_scaled");
  return k_scaled(0, z);
}

double k1_scaled(double z) {
  require_positive(z, "k1_scaled");
  return k_scaled(1, z);
}

double i0_prime(double z) {
  require_nonnegative(z, "i0_prime");
  return i_unscaled(1, z);
}

namespace {

// I1'(z) = sum_k (2k+1)/2 (z/2)^{2k} / (k! (k+1)!)
double i1_prime_series(double z) {
  const double q = 0.25 * z * z;
  double base = 0.5;  // (z/2)^{2k} / (2 k! (k+1)!)
  double sum = 0.5;
  for (int k = 1; k < 500; ++k) {
    base *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    const double term = (2.0 * k + 1.0) * base;
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

}  // namespace

double i1_prime(double z) {
  require_nonnegative(z, "i1_prime");
  if (z <= kSeriesLimit) return i1_prime_series(z);
  return std::exp(z) * (i_asymptotic_scaled(0, z) - i_asymptotic_scaled(1, z) / z);
}

double i0_second(double z) {
  require_nonnegative(z, "i0_second");
  return i1_prime(z);
}

double i1_prime_scaled(double z) {
  require_nonnegative(z, "i1_prime_scaled");
  if (z <= kSeriesLimit) return std::exp(-z) * i1_prime_series(z);
  return i_asymptotic_scaled(0, z) - i_asymptotic_scaled(1, z) / z;
}

double i_over_power_scaled(int n, double z) {
  require_nonnegative(z, "i_over_power_scaled");
  if (n < 0 || n > 3) throw DomainError("i_over_power_scaled: order must be in [0, 3]");
  if (z <= kSeriesLimit) return std::exp(-z) * power_series_over_power(n, z);
  return i_asymptotic_scaled(n, z) / std::pow(z, n);
}

BesselValue evaluate(Kind kind, double z) {
  switch (kind) {
    case Kind::I0: {
      const double s = i0_scaled(z);
      return {z <= kSeriesLimit ? i_unscaled(0, z) : s * std::exp(z), s, z};
    }
    case Kind::I1: {
      const double s = i1_scaled(z);
      return {z <= kSeriesLimit ? i_unscaled(1, z) : s * std::exp(z), s, z};
    }
    case Kind::K0: {
      const double s = k0_scaled(z);
      return {s * std::exp(-z), s, z};
    }
    case Kind::K1: {
      const double s = k1_scaled(z);
      return {s * std::exp(-z), s, z};
    }
  }
  throw DomainError("evaluate: unknown Bessel kind");
}

}  // namespace sgflow::bessel
