#include "sgflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sgflow::io {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "sigma,u\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out << format_double(profile.sigma[i]) << ',' << format_double(profile.u[i]) << '\n';
  }
}

void write_pressure_csv(std::ostream& out, std::span<const couette::PressureSolve> solves) {
  out << "sigma,pi_prime,pi,method\n";
  for (const auto& solve : solves) {
    const auto method = couette::to_string(solve.method);
    for (std::size_t i = 0; i < solve.sigma.size(); ++i) {
      out << format_double(solve.sigma[i]) << ',' << format_double(solve.pi_prime[i]) << ','
          << format_double(solve.pi[i]) << ',' << method << '\n';
    }
  }
}

void write_phi_csv(std::ostream& out, std::span<const PhiRow> rows) {
  out << "lambda1,phi_closed,phi_quadrature,gap\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda1) << ',' << format_double(r.phi_closed) << ','
        << format_double(r.phi_quadrature) << ',' << format_double(r.gap) << '\n';
  }
}

void write_sweep_summary_csv(std::ostream& out, std::span<const SweepSummaryRow> rows) {
  out << "lambda1,sup_error,phi,residual,file\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda1) << ',' << format_double(r.sup_error) << ','
        << (r.phi ? format_double(*r.phi) : std::string()) << ',' << format_double(r.residual)
        << ',' << r.file << '\n';
  }
}

nlohmann::json to_json(const SolverReport& report) {
  nlohmann::json bc = nlohmann::json::object();
  for (const auto& [name, value] : report.bc_residuals) bc[name] = value;
  nlohmann::json j;
  j["sup_residual"] = report.sup_residual;
  j["bc_residuals"] = bc;
  if (report.dual_solver_gap >= 0.0) {
    j["dual_solver_gap"] = report.dual_solver_gap;
  } else {
    j["dual_solver_gap"] = nullptr;
  }
  j["grid_n"] = report.grid_n;
  return j;
}

nlohmann::json to_json(const LambdaSet& l) {
  return {{"lambda0", l.lambda0},
          {"lambda1", l.lambda1},
          {"lambda2", l.lambda2},
          {"lambda3", l.lambda3},
          {"lambda4", l.lambda4}};
}

void write_gnuplot_stub(std::ostream& out, const std::string& csv_name, const std::string& xlabel,
                        const std::string& ylabel, int xcol, int ycol) {
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel '" << xlabel << "'\n"
      << "set ylabel '" << ylabel << "'\n"
      << "plot '" << csv_name << "' using " << xcol << ':' << ycol << " with lines\n";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << contents;
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace sgflow::io
