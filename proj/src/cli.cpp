#include "sgflow/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>

#include <CLI11.hpp>

namespace sgflow::cli {
namespace {

struct Flag {
  CLI::Option* option = nullptr;
  std::string key;
  std::string value;
};

class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {}

  void add(const std::string& key, const std::string& help) {
    auto& flag = flags_.emplace_back();
    flag.key = key;
    std::string name = "--" + key;
    std::replace(name.begin(), name.end(), '_', '-');
    flag.option = app_->add_option(name, flag.value, help);
  }

  void add_run_flags() {
    add("flow", "poiseuille | couette");
    add("bc", "strong | weak");
    for (int i = 0; i <= 4; ++i) {
      add("lambda" + std::to_string(i), "dimensionless length ell" + std::to_string(i) + " / R");
    }
    add("grid_n", "number of grid nodes (interior nodes for pressure)");
    add("sweep", "comma-separated lambda1 values");
    add("out_dir", "output directory (default: $SGFLOW_OUT_DIR or .)");
    add("jobs", "concurrent sweep entries (0 = all cores)");
    add("format", "csv | json");
  }

  KeyValues given() const {
    KeyValues values;
    for (const auto& f : flags_) {
      if (f.option->count() > 0) values[f.key] = f.value;
    }
    return values;
  }

 private:
  CLI::App* app_;
  std::deque<Flag> flags_;
};

RunConfig load(const std::string& config_path, const FlagSet& flags) {
  RunConfig config;
  if (const char* env = std::getenv("SGFLOW_OUT_DIR"); env != nullptr && *env != '\0') {
    config.out_dir = env;
  }
  if (!config_path.empty()) {
    std::ifstream file(config_path);
    if (!file) throw ConfigError("cannot read config file " + config_path);
    config.apply(parse_key_values(file));
  }
  config.apply(flags.given());
  return config;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form flows of a second-gradient fluid in a cylinder", "sgflow"};
  app.require_subcommand(1);

  std::string config_path;
  auto* profile = app.add_subcommand("profile", "velocity profile u(sigma), optionally swept over lambda1");
  auto* discharge = app.add_subcommand("discharge", "Poiseuille discharge Phi, closed form vs quadrature");
  auto* pressure = app.add_subcommand("pressure", "Taylor-Couette pressure by two independent solvers");
  auto* validate = app.add_subcommand("validate", "material constraints and ellipticity report");

  std::deque<FlagSet> flag_sets;
  for (auto* sub : {profile, discharge, pressure, validate}) {
    sub->add_option("--config", config_path, "flat key = value settings file");
    auto& flags = flag_sets.emplace_back(sub);
    if (sub == validate) {
      for (int i = 0; i <= 4; ++i) flags.add("lambda" + std::to_string(i), "dimensionless length");
      flags.add("mu", "shear viscosity");
      for (const char* eta : {"eta1", "eta2", "eta3"}) flags.add(eta, "hyperviscosity");
      flags.add("barus_mu0", "Barus reference viscosity");
      flags.add("barus_alpha", "Barus pressure coefficient");
      flags.add("barus_p0", "Barus reference pressure");
      flags.add("pressure", "pressure at which the ellipticity is checked");
      flags.add("shear_rate", "shear rate gamma of the tested state");
    } else {
      flags.add_run_flags();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "sgflow: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Config);
  }

  try {
    if (profile->parsed()) return cmd_profile(load(config_path, flag_sets[0]), out);
    if (discharge->parsed()) return cmd_discharge(load(config_path, flag_sets[1]), out);
    if (pressure->parsed()) return cmd_pressure(load(config_path, flag_sets[2]), out);
    return cmd_validate(load(config_path, flag_sets[3]), out, err);
  } catch (const ConfigError& e) {
    err << "sgflow: config error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Config);
  } catch (const ValidationError& e) {
    err << "sgflow: invalid input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Config);
  } catch (const DomainError& e) {
    err << "sgflow: invalid input: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Config);
  } catch (const CrossCheckError& e) {
    err << "sgflow: cross-check failed: " << e.what() << "\n";
    return static_cast<int>(ExitCode::CrossCheck);
  } catch (const ConstraintViolation& e) {
    err << "sgflow: constraint violated: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Constraint);
  } catch (const std::exception& e) {
    err << "sgflow: solver failure: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Solver);
  }
}

}  // namespace sgflow::cli
