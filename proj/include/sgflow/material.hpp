#pragma once

#include <array>
#include <optional>
#include <string>

namespace sgflow::material {

/// Default absolute tolerance on constraint margins.
inline constexpr double kConstraintTolerance = 1e-12;

/// Intrinsic lengths of the second-gradient model.
///
/// ell2, ell3, ell4 are independent; ell1 is derived from them by
///   ell1^2 = (3/4) ell2^2 + (1/2) ell3^2 + 2 ell4^2.
/// ell0 weights the inertial gradient term and only enters the Couette
/// pressure forcing.
class LengthScales {
 public:
  LengthScales() = default;
  LengthScales(double ell0, double ell2, double ell3, double ell4);

  /// Spherical-part special case: ell2 = ell3 = 0, ell1^2 = 2 ell4^2.
  static LengthScales spherical(double ell1, double ell0 = 0.0);

  double ell0() const noexcept { return ell0_; }
  double ell1() const noexcept { return ell1_; }
  double ell2() const noexcept { return ell2_; }
  double ell3() const noexcept { return ell3_; }
  double ell4() const noexcept { return ell4_; }

  /// All lengths divided by a reference length (the tube radius).
  LengthScales scaled_by(double length) const;

 private:
  double ell0_ = 0.0;
  double ell1_ = 0.0;
  double ell2_ = 0.0;
  double ell3_ = 0.0;
  double ell4_ = 0.0;
};

struct ViscosityCoefficients {
  double mu = 1.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
};

struct DissipativityCheck {
  bool satisfied = false;
  /// (eta1 - 2|eta2|, (3 eta1 - 10 eta2 - 32 eta3) / 8)
  std::array<double, 2> margins{};
  /// Human-readable name of the first violated inequality, empty if none.
  std::string violated;
};

DissipativityCheck check_dissipativity(double eta1, double eta2, double eta3,
                                       double tolerance = kConstraintTolerance);

/// Lengths from hyperviscosities. Throws ConstraintViolation naming the
/// violated inequality when a radicand is negative beyond the tolerance.
LengthScales lengths_from_etas(const ViscosityCoefficients& coefficients, double ell0 = 0.0,
                               double tolerance = kConstraintTolerance);

ViscosityCoefficients etas_from_lengths(double mu, const LengthScales& lengths);

/// Independent magnitudes of the velocity-gradient fields entering the dissipation.
struct DissipationInputs {
  double d_sq = 0.0;           // |D|^2
  double hat_grad_d_sq = 0.0;  // |hat grad D|^2  (deviatoric in indices 1,3)
  double hat_grad_w_sq = 0.0;  // |hat grad W|^2
  double lap_v_sq = 0.0;       // |laplacian v|^2
};

struct DissipationRate {
  double xi_ell_form = 0.0;
  double xi_eta_form = 0.0;
};

/// Dissipation evaluated both in the length-scale form and in the eta form
/// (with |grad D|^2 and |grad W|^2 rebuilt from their deviatoric parts).
DissipationRate dissipation_rate(double mu, const LengthScales& lengths,
                                 const DissipationInputs& inputs);

/// Eta-form dissipation for arbitrary (possibly non-dissipative) coefficients.
double dissipation_rate_eta(const ViscosityCoefficients& coefficients,
                            const DissipationInputs& inputs);

/// Unit input along one of the three independent gradient directions that makes
/// the eta-form dissipation negative, or nullopt if none does (|D| is left 0).
std::optional<DissipationInputs> find_dissipation_witness(const ViscosityCoefficients& coefficients);

/// Coefficient of the hyperpressure closure pi = ell1^2 grad p.
double hyperpressure_coefficient(const LengthScales& lengths);

/// Pressure-dependent viscosity mu(p) = mu0 exp(alpha (p - p0)).
struct BarusViscosity {
  double mu0 = 1.0;
  double alpha = 0.0;
  double p0 = 0.0;
};

double barus_mu(const BarusViscosity& law, double p);
double barus_mu_prime(const BarusViscosity& law, double p);

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Eigenvalues of a symmetric 3x3 matrix in ascending order (closed-form cubic).
std::array<double, 3> symmetric_eigenvalues(const Matrix3& a);

struct EllipticityReport {
  bool classical_elliptic = false;
  bool second_gradient_elliptic = false;
  double min_eigenvalue = 0.0;  // of I - 2 mu'(p) D
};

/// Type check of the pressure equation for the pressure-dependent-viscosity
/// models. D must be symmetric and traceless; throws ValidationError otherwise.
EllipticityReport ellipticity_indicator(const BarusViscosity& law, double p, const Matrix3& D,
                                        double ell1);

}  // namespace sgflow::material
