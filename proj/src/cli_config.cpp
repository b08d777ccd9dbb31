#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

#include "sgflow/cli.hpp"

namespace sgflow::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key + ": not a finite number: '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": not a nonnegative integer: '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string::npos ? std::string::npos
                                                                        : comma - start));
    if (!item.empty()) out.push_back(parse_double(key, item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

material::BarusViscosity& barus_block(std::optional<material::BarusViscosity>& b) {
  if (!b) b.emplace();
  return *b;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const auto key = normalize_key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    if (!values.emplace(key, value).second) {
      throw ConfigError("config line " + std::to_string(number) + ": repeated key " + key);
    }
  }
  return values;
}

void RunConfig::apply(const KeyValues& values) {
  for (const auto& [raw_key, value] : values) {
    const auto key = normalize_key(raw_key);
    if (key == "flow") {
      if (value == "poiseuille") flow = FlowKind::Poiseuille;
      else if (value == "couette") flow = FlowKind::Couette;
      else throw ConfigError("flow must be poiseuille or couette, got '" + value + "'");
    } else if (key == "bc") {
      if (value == "strong") bc = BoundaryCondition::StrongAdherence;
      else if (value == "weak") bc = BoundaryCondition::WeakAdherence;
      else throw ConfigError("bc must be strong or weak, got '" + value + "'");
    } else if (key.size() == 7 && key.starts_with("lambda") && key[6] >= '0' && key[6] <= '4') {
      const double v = parse_double(key, value);
      if (v < 0.0) throw ConfigError(key + " must be >= 0");
      lambda[static_cast<std::size_t>(key[6] - '0')] = v;
    } else if (key == "grid_n") {
      grid_n = parse_count(key, value);
    } else if (key == "sweep") {
      sweep = parse_list(key, value);
    } else if (key == "out_dir") {
      if (value.empty()) throw ConfigError("out_dir must not be empty");
      out_dir = value;
    } else if (key == "jobs") {
      jobs = static_cast<unsigned>(parse_count(key, value));
    } else if (key == "format") {
      if (value == "csv") format = OutputFormat::Csv;
      else if (value == "json") format = OutputFormat::Json;
      else throw ConfigError("format must be csv or json, got '" + value + "'");
    } else if (key == "mu") {
      mu = parse_double(key, value);
    } else if (key == "eta1") {
      eta1 = parse_double(key, value);
    } else if (key == "eta2") {
      eta2 = parse_double(key, value);
    } else if (key == "eta3") {
      eta3 = parse_double(key, value);
    } else if (key == "barus_mu0") {
      barus_block(barus).mu0 = parse_double(key, value);
    } else if (key == "barus_alpha") {
      barus_block(barus).alpha = parse_double(key, value);
    } else if (key == "barus_p0") {
      barus_block(barus).p0 = parse_double(key, value);
    } else if (key == "pressure") {
      pressure = parse_double(key, value);
    } else if (key == "shear_rate") {
      shear_rate = parse_double(key, value);
    } else {
      throw ConfigError("unknown setting '" + raw_key + "'");
    }
  }
}

LambdaSet RunConfig::lambdas() const {
  const double l0 = lambda[0].value_or(0.0);
  const bool independent = lambda[2] || lambda[3] || lambda[4];
  try {
    if (!independent) return LambdaSet::spherical(lambda[1].value_or(0.0), l0);
    auto set = LambdaSet::from_independent(lambda[2].value_or(0.0), lambda[3].value_or(0.0),
                                           lambda[4].value_or(0.0), l0);
    if (lambda[1]) {
      const double given = *lambda[1];
      if (std::fabs(given * given - set.lambda1 * set.lambda1) >
          kLambdaConsistencyTolerance * std::max(1.0, given * given)) {
        throw ConfigError(
            "inconsistent lengths: lambda1^2 must equal (3/4) lambda2^2 + (1/2) lambda3^2 + "
            "2 lambda4^2");
      }
    }
    return set;
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

LambdaSet RunConfig::lambdas_for(double lambda1) const {
  const auto base = lambdas();
  try {
    return LambdaSet::from_ratios(lambda1, base.ratios(), base.lambda0);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(jobs, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sgflow::cli
