#include "sgflow/material.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgflow/error.hpp"

namespace sgflow::material {
namespace {

void require_length(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ValidationError(std::string(name) + " must be finite and >= 0");
  }
}

constexpr const char* kFirstInequality = "eta1 >= 2|eta2|";
constexpr const char* kSecondInequality = "(3 eta1 - 10 eta2 - 32 eta3)/8 >= 0";

}  // namespace

LengthScales::LengthScales(double ell0, double ell2, double ell3, double ell4)
    : ell0_(ell0), ell2_(ell2), ell3_(ell3), ell4_(ell4) {
  require_length(ell0, "ell0");
  require_length(ell2, "ell2");
  require_length(ell3, "ell3");
  require_length(ell4, "ell4");
  ell1_ = std::sqrt(0.75 * ell2 * ell2 + 0.5 * ell3 * ell3 + 2.0 * ell4 * ell4);
}

LengthScales LengthScales::spherical(double ell1, double ell0) {
  require_length(ell1, "ell1");
  return LengthScales(ell0, 0.0, 0.0, ell1 / std::numbers::sqrt2);
}

LengthScales LengthScales::scaled_by(double length) const {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError("reference length must be positive");
  }
  return LengthScales(ell0_ / length, ell2_ / length, ell3_ / length, ell4_ / length);
}

DissipativityCheck check_dissipativity(double eta1, double eta2, double eta3, double tolerance) {
  DissipativityCheck check;
  check.margins = {eta1 - 2.0 * std::fabs(eta2), (3.0 * eta1 - 10.0 * eta2 - 32.0 * eta3) / 8.0};
  if (check.margins[0] < -tolerance) {
    check.violated = kFirstInequality;
  } else if (check.margins[1] < -tolerance) {
    check.violated = kSecondInequality;
  }
  check.satisfied = check.violated.empty();
  return check;
}

LengthScales lengths_from_etas(const ViscosityCoefficients& c, double ell0, double tolerance) {
  if (!(c.mu > 0.0)) throw ValidationError("mu must be positive");
  const double two_mu = 2.0 * c.mu;
  const double sq2 = (c.eta1 + 2.0 * c.eta2) / two_mu;
  const double sq3 = (c.eta1 - 2.0 * c.eta2) / two_mu;
  const double sq4 = (3.0 * c.eta1 - 10.0 * c.eta2 - 32.0 * c.eta3) / (16.0 * c.mu);
  if (sq2 < -tolerance || sq3 < -tolerance) {
    throw ConstraintViolation(std::string("dissipation constraint violated: ") + kFirstInequality);
  }
  if (sq4 < -tolerance) {
    throw ConstraintViolation(std::string("dissipation constraint violated: ") + kSecondInequality);
  }
  return LengthScales(ell0, std::sqrt(std::max(sq2, 0.0)), std::sqrt(std::max(sq3, 0.0)),
                      std::sqrt(std::max(sq4, 0.0)));
}

ViscosityCoefficients etas_from_lengths(double mu, const LengthScales& l) {
  const double s2 = l.ell2() * l.ell2();
  const double s3 = l.ell3() * l.ell3();
  const double s4 = l.ell4() * l.ell4();
  return {mu, mu * (s2 + s3), 0.5 * mu * (s2 - s3), mu * (-s2 / 16.0 + s3 / 4.0 - s4 / 2.0)};
}

DissipationRate dissipation_rate(double mu, const LengthScales& l, const DissipationInputs& in) {
  const double s2 = l.ell2() * l.ell2();
  const double s3 = l.ell3() * l.ell3();
  const double s4 = l.ell4() * l.ell4();
  DissipationRate rate;
  rate.xi_ell_form =
      2.0 * mu * (in.d_sq + s2 * in.hat_grad_d_sq + s3 * in.hat_grad_w_sq + s4 * in.lap_v_sq);
  rate.xi_eta_form = dissipation_rate_eta(etas_from_lengths(mu, l), in);
  return rate;
}

double dissipation_rate_eta(const ViscosityCoefficients& c, const DissipationInputs& in) {
  // Spherical parts of grad D and grad W are fixed by the Laplacian under div v = 0.
  const double grad_d_sq = in.hat_grad_d_sq + in.lap_v_sq / 8.0;
  const double grad_w_sq = in.hat_grad_w_sq + in.lap_v_sq / 4.0;
  return 2.0 * c.mu * in.d_sq + (c.eta1 + 2.0 * c.eta2) * grad_d_sq +
         (c.eta1 - 2.0 * c.eta2) * grad_w_sq - (c.eta2 + 4.0 * c.eta3) * in.lap_v_sq;
}

std::optional<DissipationInputs> find_dissipation_witness(const ViscosityCoefficients& c) {
  const std::array<DissipationInputs, 3> axes{{
      {0.0, 1.0, 0.0, 0.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 0.0, 0.0, 1.0},
  }};
  for (const auto& in : axes) {
    if (dissipation_rate_eta(c, in) < 0.0) return in;
  }
  return std::nullopt;
}

double hyperpressure_coefficient(const LengthScales& lengths) {
  return lengths.ell1() * lengths.ell1();
}

double barus_mu(const BarusViscosity& law, double p) {
  const double value = law.mu0 * std::exp(law.alpha * (p - law.p0));
  if (!std::isfinite(value)) throw SaturationError("Barus viscosity overflows at this pressure");
  return value;
}

double barus_mu_prime(const BarusViscosity& law, double p) {
  const double value = law.alpha * barus_mu(law, p);
  if (!std::isfinite(value)) throw SaturationError("Barus viscosity derivative overflows");
  return value;
}

std::array<double, 3> symmetric_eigenvalues(const Matrix3& a) {
  const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  std::array<double, 3> ev{};
  if (off == 0.0) {
    ev = {a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  // Trigonometric solution of the characteristic cubic of the shifted matrix B = (A - qI)/p.
  const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
  const double d0 = a[0][0] - q;
  const double d1 = a[1][1] - q;
  const double d2 = a[2][2] - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  const double det_b =
      (d0 * (d1 * d2 - a[1][2] * a[1][2]) - a[0][1] * (a[0][1] * d2 - a[1][2] * a[0][2]) +
       a[0][2] * (a[0][1] * a[1][2] - d1 * a[0][2])) /
      (p * p * p);
  const double r = std::clamp(0.5 * det_b, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double largest = q + 2.0 * p * std::cos(phi);
  const double smallest = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  ev = {smallest, 3.0 * q - largest - smallest, largest};
  std::sort(ev.begin(), ev.end());
  return ev;
}

EllipticityReport ellipticity_indicator(const BarusViscosity& law, double p, const Matrix3& D,
                                        double ell1) {
  double scale = 1.0;
  for (const auto& row : D) {
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("stretching tensor has non-finite entries");
      scale = std::max(scale, std::fabs(v));
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::fabs(D[i][j] - D[j][i]) > 1e-10 * scale) {
        throw ValidationError("stretching tensor must be symmetric");
      }
    }
  }
  if (std::fabs(D[0][0] + D[1][1] + D[2][2]) > 1e-10) {
    throw ValidationError("stretching tensor must be traceless (incompressible flow)");
  }
  if (!(ell1 >= 0.0)) throw ValidationError("ell1 must be >= 0");

  const double slope = barus_mu_prime(law, p);
  Matrix3 a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // Symmetrize so the eigen-solve sees an exactly symmetric matrix.
      a[i][j] = (i == j ? 1.0 : 0.0) - slope * (D[i][j] + D[j][i]);
    }
  }
  EllipticityReport report;
  report.min_eigenvalue = symmetric_eigenvalues(a)[0];
  report.classical_elliptic = report.min_eigenvalue > 0.0;
  // The ell1^2 biharmonic term dominates the principal part whenever ell1 > 0.
  report.second_gradient_elliptic = ell1 > 0.0 ? true : report.classical_elliptic;
  return report;
}

}  // namespace sgflow::material
