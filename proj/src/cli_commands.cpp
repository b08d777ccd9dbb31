#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "sgflow/cli.hpp"
#include "sgflow/couette.hpp"
#include "sgflow/io.hpp"
#include "sgflow/poiseuille.hpp"

namespace sgflow::cli {
namespace {

constexpr double kWallTolerance = 1e-12;
constexpr double kSlopeTolerance = 1e-9;
constexpr double kHypertractionTolerance = 1e-8;
constexpr double kProfileResidualTolerance = 1e-3;
constexpr double kDischargeGapTolerance = 1e-8;
constexpr double kPressureWallTolerance = 1e-8;
constexpr double kDualGapTolerance = 1e-6;

using nlohmann::json;

std::string tag(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

const char* extension(OutputFormat format) { return format == OutputFormat::Csv ? ".csv" : ".json"; }

void require_flow(const RunConfig& config, FlowKind flow, const char* command) {
  if (config.flow != flow) {
    throw ConfigError(std::string(command) + " is defined for " + std::string(to_string(flow)) +
                      " flow only");
  }
}

void require_sweep(const RunConfig& config) {
  if (config.sweep.empty()) throw ConfigError("sweep list is empty");
  for (double l : config.sweep) {
    if (!(l > 0.0)) throw ConfigError("sweep values must be positive");
  }
}

json parameters(const RunConfig& config, const LambdaSet& lambdas) {
  return {{"flow", to_string(config.flow)},
          {"bc", to_string(config.bc)},
          {"lambdas", io::to_json(lambdas)},
          {"grid_n", config.grid_n}};
}

double classical_velocity(FlowKind flow, double sigma) {
  return flow == FlowKind::Poiseuille ? poiseuille::u_classical(sigma) : sigma;
}

RadialProfile sample(const RunConfig& config, const LambdaSet& lambdas) {
  if (config.flow == FlowKind::Poiseuille) {
    return poiseuille::sample_profile(config.bc, lambdas, config.grid_n);
  }
  auto profile = couette::sample_profile(config.bc, lambdas.lambda1, config.grid_n);
  profile.meta.lambdas = lambdas;
  return profile;
}

void require_below(double value, double tolerance, const std::string& what) {
  if (!(std::fabs(value) <= tolerance)) {
    throw SolverError(what + " = " + io::format_double(value) + " exceeds " +
                      io::format_double(tolerance));
  }
}

// Boundary and ODE residuals of a sampled profile; throws SolverError when a check fails.
SolverReport check_profile(const RadialProfile& profile, FlowKind flow, BoundaryCondition bc,
                           const LambdaSet& lambdas) {
  SolverReport report;
  report.grid_n = profile.size();
  const double lam = lambdas.lambda1;
  const bool strong = bc == BoundaryCondition::StrongAdherence;

  if (flow == FlowKind::Poiseuille) {
    report.bc_residuals["u_at_wall"] = profile.u.back();
    if (lam > 0.0 && strong) {
      report.bc_residuals["du_at_wall"] = poiseuille::derivatives(1.0, bc, lambdas).du;
    } else if (lam > 0.0) {
      const double d2u = poiseuille::derivatives(1.0, bc, lambdas).d2u;
      report.bc_residuals["hypertraction"] =
          poiseuille::hypertraction_residual(lambdas) / (lam * lam * std::fabs(d2u) + 1e-300);
    }
  } else {
    report.bc_residuals["u_at_wall"] = profile.u.back() - 1.0;
    if (lam > 0.0 && strong) {
      const auto rate = couette::angular_rate(1.0, bc, lam);
      report.bc_residuals["du_at_wall"] = rate.q + rate.dq;
    }
  }
  require_below(report.bc_residuals["u_at_wall"], kWallTolerance, "wall velocity residual");
  if (report.bc_residuals.contains("du_at_wall")) {
    require_below(report.bc_residuals["du_at_wall"], kSlopeTolerance, "wall slope residual");
  }
  if (report.bc_residuals.contains("hypertraction")) {
    require_below(report.bc_residuals["hypertraction"], kHypertractionTolerance,
                  "hypertraction residual");
  }

  if (profile.size() >= 201) {
    const auto residual = flow == FlowKind::Poiseuille ? poiseuille::ode_residual(profile, lam)
                                                       : couette::tc_ode_residual(profile, lam);
    report.sup_residual = residual.sup_norm();
    // Only gate when the boundary layer spans enough nodes for the stencil.
    const double h = 1.0 / static_cast<double>(profile.size() - 1);
    if (lam == 0.0 || lam >= 20.0 * h) {
      require_below(report.sup_residual, kProfileResidualTolerance, "ODE residual");
    }
  }
  return report;
}

std::string profile_text(const RadialProfile& profile, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    io::write_profile_csv(out, profile);
  } else {
    out << json{{"sigma", profile.sigma}, {"u", profile.u}}.dump(1) << '\n';
  }
  return out.str();
}

std::string plot_stub(const std::string& data, const std::string& xlabel,
                      const std::string& ylabel, int ycol) {
  std::ostringstream out;
  io::write_gnuplot_stub(out, data, xlabel, ylabel, 1, ycol);
  return out.str();
}

std::string pressure_text(std::span<const couette::PressureSolve> solves, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    io::write_pressure_csv(out, solves);
  } else {
    json all = json::array();
    for (const auto& s : solves) {
      all.push_back({{"method", couette::to_string(s.method)},
                     {"sigma", s.sigma},
                     {"pi_prime", s.pi_prime},
                     {"pi", s.pi}});
    }
    out << all.dump(1) << '\n';
  }
  return out.str();
}

struct PressureRun {
  std::vector<couette::PressureSolve> solves;
  json report;
  double gap = -1.0;
  double pi_deviation = 0.0;  // sup |pi - sigma^2 / 2|
};

PressureRun run_pressure(const RunConfig& config, const LambdaSet& lambdas) {
  PressureRun run;
  if (lambdas.lambda1 == 0.0) {
    if (lambdas.lambda0 != 0.0) throw ConfigError("lambda0 > 0 needs lambda1 > 0");
    auto solve = couette::pressure_classical(uniform_grid(config.grid_n + 2));
    run.report = io::to_json(solve.report);
    run.solves.push_back(std::move(solve));
    return run;
  }
  const couette::PressureSetup setup{config.bc, lambdas.lambda0, lambdas.lambda1};
  auto dual = couette::solve_pressure_dual(setup, config.grid_n);
  for (const auto* s : {&dual.closed_form, &dual.finite_difference}) {
    require_below(s->pi_prime.back(), kPressureWallTolerance,
                  std::string(couette::to_string(s->method)) + " wall pressure gradient");
  }
  run.gap = dual.gap;
  run.report = io::to_json(dual.finite_difference.report);
  run.report["closed_form"] = io::to_json(dual.closed_form.report);
  const auto& fd = dual.finite_difference;
  for (std::size_t i = 0; i < fd.sigma.size(); ++i) {
    run.pi_deviation =
        std::max(run.pi_deviation, std::fabs(fd.pi[i] - 0.5 * fd.sigma[i] * fd.sigma[i]));
  }
  run.solves.push_back(std::move(dual.closed_form));
  run.solves.push_back(std::move(dual.finite_difference));
  return run;
}

}  // namespace

int cmd_profile(const RunConfig& config, std::ostream& out) {
  const auto base = config.lambdas();
  const auto ext = extension(config.format);
  auto meta = parameters(config, base);
  meta["command"] = "profile";

  if (config.sweep.empty()) {
    const auto profile = sample(config, base);
    const auto report = check_profile(profile, config.flow, config.bc, base);
    const std::string name = std::string("profile") + ext;
    io::write_file(config.out_dir / name, profile_text(profile, config.format));
    io::write_file(config.out_dir / "profile.plt", plot_stub(name, "sigma", "u", 2));
    meta["report"] = io::to_json(report);
    io::write_file(config.out_dir / "meta.json", meta.dump(2) + "\n");
    out << "wrote " << (config.out_dir / name).string() << " (" << profile.size() << " nodes)\n";
    return 0;
  }

  require_sweep(config);
  std::vector<io::SweepSummaryRow> rows(config.sweep.size());
  std::vector<json> reports(config.sweep.size());
  parallel_for(config.sweep.size(), config.jobs, [&](std::size_t i) {
    const auto lambdas = config.lambdas_for(config.sweep[i]);
    const auto profile = sample(config, lambdas);
    const auto report = check_profile(profile, config.flow, config.bc, lambdas);
    auto& row = rows[i];
    row.lambda1 = lambdas.lambda1;
    row.residual = report.sup_residual;
    if (config.flow == FlowKind::Poiseuille) row.phi = poiseuille::phi(config.bc, lambdas);
    row.file = "profile_lambda1_" + tag(lambdas.lambda1) + ext;
    for (std::size_t k = 0; k < profile.size(); ++k) {
      row.sup_error = std::max(
          row.sup_error, std::fabs(profile.u[k] - classical_velocity(config.flow, profile.sigma[k])));
    }
    io::write_file(config.out_dir / row.file, profile_text(profile, config.format));
    reports[i] = {{"lambda1", lambdas.lambda1}, {"file", row.file}, {"report", io::to_json(report)}};
  });

  std::ostringstream summary;
  io::write_sweep_summary_csv(summary, rows);
  io::write_file(config.out_dir / "sweep_summary.csv", summary.str());
  io::write_file(config.out_dir / "sweep_summary.plt",
                 plot_stub("sweep_summary.csv", "lambda1", "sup error", 2));
  meta["sweep"] = reports;
  io::write_file(config.out_dir / "meta.json", meta.dump(2) + "\n");
  out << "wrote " << rows.size() << " profiles and sweep_summary.csv to "
      << config.out_dir.string() << "\n";
  return 0;
}

int cmd_discharge(const RunConfig& config, std::ostream& out) {
  require_flow(config, FlowKind::Poiseuille, "discharge");
  require_sweep(config);
  config.lambdas();

  std::vector<io::PhiRow> rows(config.sweep.size());
  parallel_for(config.sweep.size(), config.jobs, [&](std::size_t i) {
    const auto lambdas = config.lambdas_for(config.sweep[i]);
    auto& row = rows[i];
    row.lambda1 = lambdas.lambda1;
    row.phi_closed = poiseuille::phi(config.bc, lambdas);
    row.phi_quadrature = poiseuille::phi_quadrature(config.bc, lambdas);
    row.gap = std::fabs(row.phi_closed - row.phi_quadrature);
  });

  std::ostringstream text;
  if (config.format == OutputFormat::Csv) {
    io::write_phi_csv(text, rows);
  } else {
    json all = json::array();
    for (const auto& r : rows) {
      all.push_back({{"lambda1", r.lambda1},
                     {"phi_closed", r.phi_closed},
                     {"phi_quadrature", r.phi_quadrature},
                     {"gap", r.gap}});
    }
    text << all.dump(1) << '\n';
  }
  const std::string name = std::string("phi") + extension(config.format);
  io::write_file(config.out_dir / name, text.str());
  io::write_file(config.out_dir / "phi.plt", plot_stub(name, "lambda1", "Phi", 2));

  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.gap);
  out << "wrote " << (config.out_dir / name).string() << "; max gap " << io::format_double(worst)
      << "\n";
  if (!(worst <= kDischargeGapTolerance)) {
    throw CrossCheckError("discharge closed form and quadrature differ by " +
                          io::format_double(worst));
  }
  return 0;
}

int cmd_pressure(const RunConfig& config, std::ostream& out) {
  require_flow(config, FlowKind::Couette, "pressure");
  const auto base = config.lambdas();
  const auto ext = extension(config.format);

  if (config.sweep.empty()) {
    const auto run = run_pressure(config, base);
    const std::string name = std::string("pressure") + ext;
    io::write_file(config.out_dir / name, pressure_text(run.solves, config.format));
    io::write_file(config.out_dir / "pressure.plt", plot_stub(name, "sigma", "pi", 3));
    auto report = run.report;
    report["parameters"] = parameters(config, base);
    io::write_file(config.out_dir / "report.json", report.dump(2) + "\n");
    out << "wrote " << (config.out_dir / name).string();
    if (run.gap >= 0.0) out << "; dual solver gap " << io::format_double(run.gap);
    out << "\n";
    if (run.gap > kDualGapTolerance) {
      throw CrossCheckError("pressure solvers differ by " + io::format_double(run.gap));
    }
    return 0;
  }

  require_sweep(config);
  std::vector<PressureRun> runs(config.sweep.size());
  std::vector<std::string> files(config.sweep.size());
  parallel_for(config.sweep.size(), config.jobs, [&](std::size_t i) {
    const auto lambdas = config.lambdas_for(config.sweep[i]);
    runs[i] = run_pressure(config, lambdas);
    files[i] = "pressure_lambda1_" + tag(lambdas.lambda1) + ext;
    io::write_file(config.out_dir / files[i], pressure_text(runs[i].solves, config.format));
    auto report = runs[i].report;
    report["parameters"] = parameters(config, lambdas);
    io::write_file(config.out_dir / ("report_lambda1_" + tag(lambdas.lambda1) + ".json"),
                   report.dump(2) + "\n");
  });

  std::ostringstream summary;
  summary << "lambda1,dual_solver_gap,sup_pi_deviation,file\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    summary << io::format_double(config.sweep[i]) << ',' << io::format_double(runs[i].gap) << ','
            << io::format_double(runs[i].pi_deviation) << ',' << files[i] << '\n';
    worst = std::max(worst, runs[i].gap);
  }
  io::write_file(config.out_dir / "sweep_summary.csv", summary.str());
  out << "wrote " << runs.size() << " pressure solves and sweep_summary.csv to "
      << config.out_dir.string() << "; max dual solver gap " << io::format_double(worst) << "\n";
  if (worst > kDualGapTolerance) {
    throw CrossCheckError("pressure solvers differ by " + io::format_double(worst));
  }
  return 0;
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const material::ViscosityCoefficients coeffs{config.mu, config.eta1.value_or(0.0),
                                               config.eta2.value_or(0.0),
                                               config.eta3.value_or(0.0)};
  if (!(coeffs.mu > 0.0)) throw ConfigError("mu must be positive");
  const bool etas_given = config.eta1 || config.eta2 || config.eta3;
  const bool lengths_given = config.lambda[2] || config.lambda[3] || config.lambda[4];
  if (etas_given && lengths_given) {
    throw ConfigError("give either eta1..eta3 or lambda2..lambda4, not both");
  }
  bool ok = true;

  const auto check = material::check_dissipativity(coeffs.eta1, coeffs.eta2, coeffs.eta3);
  out << "dissipativity: " << (check.satisfied ? "satisfied" : "violated") << "\n"
      << "  margin eta1 - 2|eta2| = " << io::format_double(check.margins[0]) << "\n"
      << "  margin (3 eta1 - 10 eta2 - 32 eta3)/8 = " << io::format_double(check.margins[1])
      << "\n";

  double ell1 = config.lambda[1].value_or(0.0);
  if (check.satisfied) {
    const auto lengths = material::lengths_from_etas(coeffs, config.lambda[0].value_or(0.0));
    out << "lengths: ell1 = " << io::format_double(lengths.ell1())
        << ", ell2 = " << io::format_double(lengths.ell2())
        << ", ell3 = " << io::format_double(lengths.ell3())
        << ", ell4 = " << io::format_double(lengths.ell4()) << "\n";
    if (etas_given) ell1 = lengths.ell1();
  } else {
    ok = false;
    err << "constraint violated: " << check.violated << "\n";
    if (const auto witness = material::find_dissipation_witness(coeffs)) {
      out << "  witness: |hat grad D|^2 = " << witness->hat_grad_d_sq
          << ", |hat grad W|^2 = " << witness->hat_grad_w_sq
          << ", |lap v|^2 = " << witness->lap_v_sq << " gives xi = "
          << io::format_double(material::dissipation_rate_eta(coeffs, *witness)) << "\n";
    }
  }

  if (lengths_given) {
    LambdaSet set{config.lambda[0].value_or(0.0), config.lambda[1].value_or(0.0),
                  config.lambda[2].value_or(0.0), config.lambda[3].value_or(0.0),
                  config.lambda[4].value_or(0.0)};
    // With lambda1 = 0 the gap is the derived lambda1^2.
    if (!config.lambda[1]) set.lambda1 = std::sqrt(set.consistency_gap());
    const double gap = set.consistency_gap();
    const bool consistent =
        std::fabs(gap) <= kLambdaConsistencyTolerance * std::max(1.0, set.lambda1 * set.lambda1);
    out << "lambda consistency: " << (consistent ? "ok" : "violated")
        << " (gap " << io::format_double(gap) << ")\n";
    if (!consistent) {
      ok = false;
      err << "constraint violated: lambda1^2 = (3/4) lambda2^2 + (1/2) lambda3^2 + 2 lambda4^2\n";
    }
    ell1 = set.lambda1;
  }

  if (config.barus) {
    const auto& law = *config.barus;
    const double p = config.pressure.value_or(law.p0);
    material::Matrix3 d{};
    d[0][1] = d[1][0] = 0.5 * config.shear_rate;
    const auto e = material::ellipticity_indicator(law, p, d, ell1);
    out << "ellipticity: mu'(p) gamma = "
        << io::format_double(material::barus_mu_prime(law, p) * config.shear_rate) << "\n"
        << "  classical_elliptic = " << (e.classical_elliptic ? "true" : "false") << "\n"
        << "  second_gradient_elliptic = " << (e.second_gradient_elliptic ? "true" : "false")
        << "\n"
        << "  min_eigenvalue = " << io::format_double(e.min_eigenvalue) << "\n";
  }
  return ok ? 0 : static_cast<int>(ExitCode::Constraint);
}

}  // namespace sgflow::cli
