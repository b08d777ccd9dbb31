#pragma once

// CSV and JSON emission. Numbers are written with 17 significant digits so
// that a CSV round trip reproduces every double exactly.

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgflow/couette.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/poiseuille.hpp"

namespace sgflow::io {

std::string format_double(double value);

/// `sigma,u`
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

/// `sigma,pi_prime,pi,method`, one block of rows per solve.
void write_pressure_csv(std::ostream& out, std::span<const couette::PressureSolve> solves);

struct PhiRow {
  double lambda1 = 0.0;
  double phi_closed = 0.0;
  double phi_quadrature = 0.0;
  double gap = 0.0;
};

/// `lambda1,phi_closed,phi_quadrature,gap`
void write_phi_csv(std::ostream& out, std::span<const PhiRow> rows);

struct SweepSummaryRow {
  double lambda1 = 0.0;
  double sup_error = 0.0;     // against the classical profile
  std::optional<double> phi;  // discharge, Poiseuille only
  double residual = 0.0;      // sup of the ODE residual, or -1 when not evaluated
  std::string file;
};

/// `lambda1,sup_error,phi,residual,file`; phi is empty for Couette rows
void write_sweep_summary_csv(std::ostream& out, std::span<const SweepSummaryRow> rows);

/// `{sup_residual, bc_residuals, dual_solver_gap, grid_n}`
nlohmann::json to_json(const SolverReport& report);
nlohmann::json to_json(const LambdaSet& lambdas);

/// Gnuplot script plotting column y against column x of a CSV next to it.
void write_gnuplot_stub(std::ostream& out, const std::string& csv_name, const std::string& xlabel,
                        const std::string& ylabel, int xcol, int ycol);

/// Writes text to path, creating parent directories. Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace sgflow::io
