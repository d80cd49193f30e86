#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ceps/operators.hpp"
#include "ceps/rational.hpp"

namespace ceps {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One requested check with its parameters. Unknown parameters are rejected at
// parse time so typos fail loudly.
struct CheckSpec {
  std::string name;  // birkhoff | ergodic | projections | mixing | independence
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> subset_cap;
  std::optional<std::string> epsilon;  // rational string
  std::optional<std::uint64_t> seed;
  std::optional<bool> exhaustive;

  bool operator==(const CheckSpec&) const = default;
};

// Declarative description of a system plus the checks to run on it.
struct SystemConfig {
  std::vector<std::string> atoms;
  std::vector<std::string> weights;               // rational strings
  std::vector<std::vector<std::string>> partition;  // blocks of labels
  std::map<std::string, std::string> tau;           // label -> label
  std::vector<CheckSpec> checks;

  bool operator==(const SystemConfig&) const = default;
};

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const std::string& field) {
  if (!j.contains(field))
    throw ConfigError("config is missing required field \"" + field + "\"");
  return j.at(field);
}

inline std::vector<std::string> string_list(const nlohmann::json& j,
                                            const std::string& field) {
  if (!j.is_array())
    throw ConfigError("field \"" + field + "\" must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : j) {
    if (!item.is_string())
      throw ConfigError("field \"" + field + "\" must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline SystemConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SystemConfig config;
  config.atoms = detail::string_list(detail::require_field(j, "atoms"), "atoms");
  if (config.atoms.empty()) throw ConfigError("field \"atoms\" must be nonempty");
  {
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < config.atoms.size(); ++i)
      if (!seen.emplace(config.atoms[i], i).second)
        throw ConfigError("duplicate atom label \"" + config.atoms[i] + "\"");
  }
  config.weights =
      detail::string_list(detail::require_field(j, "weights"), "weights");
  const auto& partition = detail::require_field(j, "partition");
  if (!partition.is_array())
    throw ConfigError("field \"partition\" must be an array of label arrays");
  for (const auto& block : partition)
    config.partition.push_back(detail::string_list(block, "partition"));
  const auto& tau = detail::require_field(j, "tau");
  if (!tau.is_object())
    throw ConfigError("field \"tau\" must map atom labels to atom labels");
  for (const auto& [from, to] : tau.items()) {
    if (!to.is_string())
      throw ConfigError("field \"tau\" must map atom labels to atom labels");
    config.tau[from] = to.get<std::string>();
  }
  if (j.contains("checks")) {
    const auto& checks = j.at("checks");
    if (!checks.is_array())
      throw ConfigError("field \"checks\" must be an array");
    for (const auto& c : checks) {
      if (!c.is_object() || !c.contains("name") || !c.at("name").is_string())
        throw ConfigError("each check needs a string \"name\"");
      CheckSpec spec;
      spec.name = c.at("name").get<std::string>();
      for (const auto& [key, value] : c.items()) {
        if (key == "name") continue;
        if (key == "horizon") spec.horizon = value.get<std::size_t>();
        else if (key == "subset_cap") spec.subset_cap = value.get<std::size_t>();
        else if (key == "epsilon") spec.epsilon = value.get<std::string>();
        else if (key == "seed") spec.seed = value.get<std::uint64_t>();
        else if (key == "exhaustive") spec.exhaustive = value.get<bool>();
        else
          throw ConfigError("unknown parameter \"" + key + "\" for check \"" +
                            spec.name + "\"");
      }
      config.checks.push_back(std::move(spec));
    }
  }
  return config;
}

inline SystemConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }
  return parse_config(j);
}

inline nlohmann::json serialize_config(const SystemConfig& config) {
  nlohmann::json j;
  j["atoms"] = config.atoms;
  j["weights"] = config.weights;
  j["partition"] = config.partition;
  j["tau"] = config.tau;
  if (!config.checks.empty()) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckSpec& spec : config.checks) {
      nlohmann::json c;
      c["name"] = spec.name;
      if (spec.horizon) c["horizon"] = *spec.horizon;
      if (spec.subset_cap) c["subset_cap"] = *spec.subset_cap;
      if (spec.epsilon) c["epsilon"] = *spec.epsilon;
      if (spec.seed) c["seed"] = *spec.seed;
      if (spec.exhaustive) c["exhaustive"] = *spec.exhaustive;
      checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
  }
  return j;
}

// Builds the exact system the config describes, with the config's field
// names in every diagnostic.
inline CEPSystem build_system(const SystemConfig& config) {
  const std::size_t n = config.atoms.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[config.atoms[i]] = i;

  if (config.weights.size() != n)
    throw ConfigError("field \"weights\" must list one weight per atom");
  std::vector<Rational> weights;
  weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational w;
    try {
      w = parse_rational(config.weights[i]);
    } catch (const std::invalid_argument& err) {
      throw ConfigError("field \"weights\", entry " + std::to_string(i + 1) +
                        ": " + err.what());
    }
    if (w <= 0)
      throw ConfigError("field \"weights\", entry " + std::to_string(i + 1) +
                        ": weight must be positive");
    weights.push_back(std::move(w));
  }
  {
    Rational total(0);
    for (const Rational& w : weights) total += w;
    if (total != 1)
      throw ConfigError("field \"weights\": weights must sum to 1, got " +
                        to_string(total));
  }

  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& block : config.partition) {
    std::vector<std::size_t> atoms;
    for (const std::string& label : block) {
      auto it = index.find(label);
      if (it == index.end())
        throw ConfigError("field \"partition\" references unknown atom \"" +
                          label + "\"");
      atoms.push_back(it->second);
    }
    blocks.push_back(std::move(atoms));
  }

  std::vector<std::size_t> tau(n, 0);
  std::vector<bool> assigned(n, false);
  for (const auto& [from, to] : config.tau) {
    auto fit = index.find(from);
    if (fit == index.end())
      throw ConfigError("field \"tau\" references unknown atom \"" + from +
                        "\"");
    auto tit = index.find(to);
    if (tit == index.end())
      throw ConfigError("field \"tau\" maps \"" + from +
                        "\" to unknown atom \"" + to + "\"");
    tau[fit->second] = tit->second;
    assigned[fit->second] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!assigned[i])
      throw ConfigError("field \"tau\" has no image for atom \"" +
                        config.atoms[i] + "\"");

  try {
    return CEPSystem(AtomicMeasureSpace(std::move(weights), config.atoms),
                     Partition(n, std::move(blocks)), std::move(tau));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("invalid system description: ") + err.what());
  }
}

}  // namespace ceps
