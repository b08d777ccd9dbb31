#pragma once

// Reference values computed independently of the library: 50-digit power
// series for the modified Bessel functions, multiprecision Boost.Math for the
// large-argument regime, and small helpers shared by the unit and acceptance
// tests.

#include <cmath>
#include <cstdint>
#include <random>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_50;

/// I_n(z) = sum_k (z/2)^{2k+n} / (k! (k+n)!)
inline Big bessel_i(int n, const Big& z) {
  const Big half = z / 2;
  const Big q = half * half;
  Big term = 1;
  for (int k = 1; k <= n; ++k) term *= half / k;
  Big sum = term;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (Big(k) * (k + n));
    sum += term;
    if (term < sum * Big("1e-52")) break;
  }
  return sum;
}

/// K0(z) = -(ln(z/2) + gamma) I0(z) + sum_{k>=1} H_k (z^2/4)^k / (k!)^2
inline Big bessel_k0(const Big& z) {
  const Big q = z * z / 4;
  Big term = 1;
  Big harmonic = 0;
  Big sum = 0;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (Big(k) * k);
    harmonic += Big(1) / k;
    const Big add = term * harmonic;
    sum += add;
    if (add < sum * Big("1e-52")) break;
  }
  const Big gamma = boost::math::constants::euler<Big>();
  return -(log(z / 2) + gamma) * bessel_i(0, z) + sum;
}

/// K1(z) = 1/z + ln(z/2) I1(z) - (z/4) sum_{k>=0} (psi(k+1) + psi(k+2)) (z^2/4)^k / (k! (k+1)!)
inline Big bessel_k1(const Big& z) {
  const Big gamma = boost::math::constants::euler<Big>();
  const Big q = z * z / 4;
  Big term = 1;  // (z^2/4)^k / (k! (k+1)!)
  Big h_k = 0;   // H_k
  Big sum = (-gamma) + (1 - gamma);
  for (int k = 1; k < 100000; ++k) {
    term *= q / (Big(k) * (k + 1));
    h_k += Big(1) / k;
    const Big psi_sum = (h_k - gamma) + (h_k + Big(1) / (k + 1) - gamma);
    const Big add = term * psi_sum;
    sum += add;
    if (abs(add) < abs(sum) * Big("1e-52")) break;
  }
  return 1 / z + log(z / 2) * bessel_i(1, z) - z / 4 * sum;
}

inline double i_value(int n, double z) { return bessel_i(n, Big(z)).convert_to<double>(); }

inline double k_value(int n, double z) {
  return (n == 0 ? bessel_k0(Big(z)) : bessel_k1(Big(z))).convert_to<double>();
}

/// exp(-z) I_n(z) from the series; exact in 50 digits for any z.
inline double i_scaled(int n, double z) {
  const Big bz(z);
  return (bessel_i(n, bz) * exp(-bz)).convert_to<double>();
}

/// exp(z) K_n(z) by multiprecision Boost.Math (the series cancels for large z).
inline double k_scaled(int n, double z) {
  const Big bz(z);
  return (boost::math::cyl_bessel_k(n, bz) * exp(bz)).convert_to<double>();
}

/// exp(-z) I_n(z) / z^n
inline double i_over_power_scaled(int n, double z) {
  if (z == 0.0) {
    double f = 1.0;
    for (int k = 1; k <= n; ++k) f *= 2.0 * k;
    return 1.0 / f;
  }
  const Big bz(z);
  return (bessel_i(n, bz) * exp(-bz) / pow(bz, n)).convert_to<double>();
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

/// Log-uniform samples on [lo, hi] from a fixed seed.
inline std::vector<double> log_uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  std::vector<double> out(n);
  for (auto& z : out) z = std::exp(u(rng));
  return out;
}

}  // namespace oracle
