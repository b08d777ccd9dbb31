#pragma once

// Modified Bessel functions of integer order 0 and 1 on the nonnegative real axis.
//
// Every function has an exponentially scaled companion:
//   i*_scaled(z) = exp(-z) I(z)      k*_scaled(z) = exp(z) K(z)
// The scaled forms stay O(1/sqrt(z)) for large z and are what the flow
// formulas use; the unscaled values overflow past z ~ 713.
//
// I0, I1: power series for z <= 20, Hankel asymptotic series above.
// K0, K1: trapezoid rule on exp(-z cosh t) cosh(nt) for z < 20, asymptotic above.
//
// All functions throw sgflow::DomainError for negative or non-finite z, and the
// K functions also for z == 0.

namespace sgflow::bessel {

double i0(double z);
double i1(double z);
double k0(double z);
double k1(double z);

double i0_scaled(double z);
double i1_scaled(double z);
double k0_scaled(double z);
double k1_scaled(double z);

/// I0'(z) = I1(z).
double i0_prime(double z);
/// I1'(z) = I0(z) - I1(z)/z, with the series limit 1/2 at z = 0.
double i1_prime(double z);
/// I0''(z) = I1'(z).
double i0_second(double z);

/// exp(-z) I1'(z).
double i1_prime_scaled(double z);

/// exp(-z) I_n(z) / z^n for n in {0, 1, 2, 3}.
///
/// Regular at the origin (value 1 / (2^n n!)); used where ratios such as
/// I1(x)/x appear in velocity profiles near the axis.
double i_over_power_scaled(int n, double z);

enum class Kind { I0, I1, K0, K1 };

struct BesselValue {
  double value;         // may be +inf for I beyond the double range
  double scaled_value;  // value * exp(-z) for I, value * exp(z) for K
  double argument;
};

BesselValue evaluate(Kind kind, double z);

}  // namespace sgflow::bessel
