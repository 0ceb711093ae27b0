#pragma once

// Flat key=value run configuration with '#' comments.
//
//   w = 1
//   utility = linear        # linear | power
//   cost = quadratic        # quadratic | shannon | tsallis | tabulated
//   reward_spacing = geometric

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "inatt/errors.hpp"
#include "inatt/grid.hpp"
#include "inatt/io/csv.hpp"
#include "inatt/model.hpp"

namespace inatt::io {

/// Malformed configuration text or an unknown key/value.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

using KeyValues = std::map<std::string, std::string>;

inline KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = value;
  }
  return out;
}

inline KeyValues read_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_key_values(in);
}

struct RunConfig {
  double w = 1.0;
  std::string utility = "linear";
  double beta = 1.0;
  double gamma = 1.0;
  double x0 = 0.0;

  std::string cost = "quadratic";
  double sigma = 2.0;
  std::string cost_file;

  std::optional<double> reward_min;  // defaults to x0
  std::optional<double> reward_max;  // defaults to x0 + 20
  std::size_t reward_count = 41;
  std::string reward_spacing = "geometric";

  std::size_t posterior_n = 4001;
  std::uint64_t seed = 42;
  std::string output_dir = ".";
  unsigned threads = 1;

  void validate() const {
    if (utility != "linear" && utility != "power") throw ConfigError("utility must be linear or power");
    if (cost != "quadratic" && cost != "shannon" && cost != "tsallis" && cost != "tabulated") {
      throw ConfigError("cost must be one of quadratic, shannon, tsallis, tabulated");
    }
    if (cost == "tabulated" && cost_file.empty()) throw ConfigError("cost = tabulated needs cost_file");
    if (reward_count == 0) throw ConfigError("reward_count must be positive");
    if (reward_spacing != "linear" && reward_spacing != "geometric") {
      throw ConfigError("reward_spacing must be linear or geometric");
    }
    if (posterior_n < 101 || posterior_n % 2 == 0) throw ConfigError("posterior_n must be odd and >= 101");
    if (threads == 0) throw ConfigError("threads must be >= 1");
  }

  [[nodiscard]] Agent agent() const {
    if (utility == "power") return Agent(w, PowerUtility{gamma}, x0);
    return Agent(w, LinearUtility{beta}, x0);
  }

  [[nodiscard]] CostSpec cost_spec() const {
    if (cost == "shannon") return CostSpec::shannon();
    if (cost == "tsallis") return CostSpec::tsallis(sigma);
    if (cost == "tabulated") {
      std::filesystem::path p(cost_file);
      return read_tabulated_cost(p.string());
    }
    return CostSpec::quadratic();
  }

  [[nodiscard]] std::vector<double> reward_grid() const {
    const double lo = reward_min.value_or(x0);
    const double hi = reward_max.value_or(x0 + 20.0);
    if (lo < x0) throw ConfigError("reward_min below x0");
    return inatt::reward_grid(lo, hi, reward_count,
                              reward_spacing == "linear" ? Spacing::Linear : Spacing::Geometric);
  }
};

namespace detail {

inline double to_real(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("config key " + key + ": '" + v + "' is not a number");
}

inline std::uint64_t to_count(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto out = std::stoull(v, &used);
    if (used == v.size() && v.find('-') == std::string::npos) return out;
  } catch (const std::logic_error&) {
  }
  throw ConfigError("config key " + key + ": '" + v + "' is not a non-negative integer");
}

}  // namespace detail

/// Overlay key=value entries onto a configuration. Unknown keys are errors.
inline void apply(RunConfig& cfg, const KeyValues& kv) {
  for (const auto& [key, v] : kv) {
    if (key == "w") cfg.w = detail::to_real(key, v);
    else if (key == "utility") cfg.utility = v;
    else if (key == "beta") cfg.beta = detail::to_real(key, v);
    else if (key == "gamma") cfg.gamma = detail::to_real(key, v);
    else if (key == "x0") cfg.x0 = detail::to_real(key, v);
    else if (key == "cost") cfg.cost = v;
    else if (key == "sigma") cfg.sigma = detail::to_real(key, v);
    else if (key == "cost_file") cfg.cost_file = v;
    else if (key == "reward_min") cfg.reward_min = detail::to_real(key, v);
    else if (key == "reward_max") cfg.reward_max = detail::to_real(key, v);
    else if (key == "reward_count") cfg.reward_count = detail::to_count(key, v);
    else if (key == "reward_spacing") cfg.reward_spacing = v;
    else if (key == "posterior_n") cfg.posterior_n = detail::to_count(key, v);
    else if (key == "seed") cfg.seed = detail::to_count(key, v);
    else if (key == "output_dir") cfg.output_dir = v;
    else if (key == "threads") cfg.threads = static_cast<unsigned>(detail::to_count(key, v));
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

}  // namespace inatt::io
