#pragma once

// Command-line front end: `profile`, `discharge`, `pressure`, `validate`.
//
// Settings come from built-in defaults, then SGFLOW_OUT_DIR, then a flat
// `key = value` config file (--config), then flags; later sources win.

#include <array>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sgflow/error.hpp"
#include "sgflow/flow.hpp"
#include "sgflow/material.hpp"

namespace sgflow::cli {

enum class ExitCode : int {
  Ok = 0,
  Config = 2,
  Solver = 3,
  CrossCheck = 4,
  Constraint = 5,
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Two independent evaluations of the same quantity disagree.
class CrossCheckError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { Csv, Json };

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment, dashes in keys become
/// underscores. Throws ConfigError on malformed lines or repeated keys.
KeyValues parse_key_values(std::istream& in);

struct RunConfig {
  FlowKind flow = FlowKind::Poiseuille;
  BoundaryCondition bc = BoundaryCondition::StrongAdherence;
  std::array<std::optional<double>, 5> lambda{};  // lambda0 .. lambda4 as given
  std::size_t grid_n = 401;
  std::vector<double> sweep;
  OutputFormat format = OutputFormat::Csv;
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;

  // validate
  double mu = 1.0;
  std::optional<double> eta1, eta2, eta3;
  std::optional<material::BarusViscosity> barus;
  std::optional<double> pressure;
  double shear_rate = 0.0;

  /// Applies one source of settings; unknown keys and bad values throw ConfigError.
  void apply(const KeyValues& values);

  /// Resolved, consistency-checked lengths. When only lambda1 is given the
  /// ratios default to the spherical case lambda2 = lambda3 = 0.
  LambdaSet lambdas() const;

  /// lambdas() with lambda1 replaced, keeping lambda0 and the ratios.
  LambdaSet lambdas_for(double lambda1) const;
};

int cmd_profile(const RunConfig& config, std::ostream& out);
int cmd_discharge(const RunConfig& config, std::ostream& out);
int cmd_pressure(const RunConfig& config, std::ostream& out);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Runs fn(0) .. fn(count - 1) on up to `jobs` threads (0 = hardware
/// concurrency). Rethrows the exception of the lowest failing index after all
/// workers have joined.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Full program: parses argv, dispatches, and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sgflow::cli
