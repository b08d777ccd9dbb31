#include "sgflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sgflow/error.hpp"

namespace sgflow {

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::StrongAdherence ? "strong" : "weak";
}

std::string_view to_string(FlowKind flow) {
  return flow == FlowKind::Poiseuille ? "poiseuille" : "couette";
}

LengthRatios LengthRatios::normalized(double w2, double w3, double w4) {
  if (w2 < 0.0 || w3 < 0.0 || w4 < 0.0) throw ValidationError("length ratios must be >= 0");
  const double norm = std::sqrt(0.75 * w2 * w2 + 0.5 * w3 * w3 + 2.0 * w4 * w4);
  if (!(norm > 0.0)) throw ValidationError("length ratios must not all vanish");
  return {w2 / norm, w3 / norm, w4 / norm};
}

LambdaSet LambdaSet::from_independent(double lambda2, double lambda3, double lambda4,
                                      double lambda0) {
  LambdaSet set{lambda0, 0.0, lambda2, lambda3, lambda4};
  set.lambda1 = std::sqrt(0.75 * lambda2 * lambda2 + 0.5 * lambda3 * lambda3 +
                          2.0 * lambda4 * lambda4);
  set.validate();
  return set;
}

LambdaSet LambdaSet::from_ratios(double lambda1, const LengthRatios& r, double lambda0) {
  LambdaSet set{lambda0, lambda1, r.r2 * lambda1, r.r3 * lambda1, r.r4 * lambda1};
  set.validate();
  return set;
}

LambdaSet LambdaSet::spherical(double lambda1, double lambda0) {
  return from_ratios(lambda1, LengthRatios::spherical(), lambda0);
}

LambdaSet LambdaSet::from_lengths(const material::LengthScales& l, double radius) {
  const auto s = l.scaled_by(radius);
  return {s.ell0(), s.ell1(), s.ell2(), s.ell3(), s.ell4()};
}

double LambdaSet::consistency_gap() const {
  return 0.75 * lambda2 * lambda2 + 0.5 * lambda3 * lambda3 + 2.0 * lambda4 * lambda4 -
         lambda1 * lambda1;
}

void LambdaSet::validate() const {
  for (double v : {lambda0, lambda1, lambda2, lambda3, lambda4}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ValidationError("dimensionless lengths must be finite and >= 0");
    }
  }
  if (std::fabs(consistency_gap()) > kLambdaConsistencyTolerance * std::max(1.0, lambda1 * lambda1)) {
    throw ValidationError(
        "inconsistent length scales: lambda1^2 must equal (3/4) lambda2^2 + (1/2) lambda3^2 + "
        "2 lambda4^2");
  }
}

LengthRatios LambdaSet::ratios() const {
  if (!(lambda1 > 0.0)) return LengthRatios::spherical();
  return {lambda2 / lambda1, lambda3 / lambda1, lambda4 / lambda1};
}

void RadialProfile::validate() const {
  if (sigma.size() != u.size()) throw ValidationError("profile: sigma and u sizes differ");
  if (sigma.size() < 2) throw ValidationError("profile: need at least two nodes");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (!std::isfinite(u[i])) throw ValidationError("profile: non-finite value");
    if (i > 0 && !(sigma[i] > sigma[i - 1])) {
      throw ValidationError("profile: grid must be strictly increasing");
    }
  }
  if (sigma.front() < 0.0 || sigma.back() != 1.0) {
    throw ValidationError("profile: grid must lie in [0, 1] and end at 1");
  }
}

double RadialProfile::uniform_spacing() const {
  validate();
  const double h = (sigma.back() - sigma.front()) / static_cast<double>(sigma.size() - 1);
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    if (std::fabs(sigma[i] - sigma[i - 1] - h) > 1e-9 * h) {
      throw ValidationError("profile: grid is not uniform");
    }
  }
  return h;
}

std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) throw ValidationError("grid needs at least two nodes");
  std::vector<double> grid(n);
  const double h = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * h;
  grid.back() = 1.0;
  return grid;
}

double ResidualProfile::sup_norm() const {
  double worst = 0.0;
  for (double r : residual) worst = std::max(worst, std::fabs(r));
  return worst;
}

std::size_t residual_stencil_stride(double lambda1, double h) {
  if (!(lambda1 > 0.0)) return 1;
  const double k = std::floor(lambda1 / (30.0 * h));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

}  // namespace sgflow
