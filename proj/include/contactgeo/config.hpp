#pragma once

// Run configuration shared by the CLI and the suite runner. A config file
// uses the key = value format of keyvalue.hpp, e.g.
//
//   n = 2
//   m = 1
//   metric = "lambda"
//   lambda = "q*p"
//   lambda.2 = "q2^3*p2^3"
//   seed = 7
//   suite = ["table1", "einstein"]

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "contactgeo/equilibrium.hpp"
#include "contactgeo/hamiltonian.hpp"
#include "contactgeo/keyvalue.hpp"
#include "contactgeo/metrics.hpp"
#include "contactgeo/parser.hpp"
#include "contactgeo/structures.hpp"

namespace contactgeo {

struct RunConfig {
  int n = 2;
  int m = 1;
  std::optional<std::vector<int>> subset;  // overrides m where a subset is used
  std::string metric = "acs";
  std::string lambda_template = "q*p";
  std::map<int, std::string> lambda_components;  // lambda.<a> entries
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t points = 50;
  std::vector<std::string> suites{"all"};
  std::string catalog_path;
  bool timing = false;

  [[nodiscard]] IndexSubset index_subset() const {
    return subset ? IndexSubset(*subset, n) : IndexSubset::first(m, n);
  }

  [[nodiscard]] LambdaFamily lambda(const PhaseSpace& s) const {
    LambdaFamily f;
    try {
      f = LambdaFamily::from_template(parse(lambda_template), s);
      for (const auto& [a, text] : lambda_components) {
        if (a < 1 || a > s.n()) throw ConfigError("lambda." + std::to_string(a) + " is out of range");
        f.components[static_cast<std::size_t>(a - 1)] = parse(text);
      }
    } catch (const ParseError& e) {
      throw ConfigError(std::string("lambda: ") + e.what());
    }
    return f;
  }
};

namespace detail {

inline long long json_integer(const KeyValue& kv) {
  if (kv.value.is_number_integer()) return kv.value.get<long long>();
  if (kv.value.is_string()) {
    const auto& s = kv.value.get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("'" + kv.key + "' must be an integer", kv.line);
}

inline std::string json_string(const KeyValue& kv) {
  if (!kv.value.is_string()) throw ConfigError("'" + kv.key + "' must be a quoted string", kv.line);
  return kv.value.get<std::string>();
}

}  // namespace detail

/// Applies every entry of a config file on top of `cfg`.
inline void apply_config_text(RunConfig& cfg, const std::string& text) {
  for (const auto& block : parse_key_value_blocks(text)) {
    for (const auto& kv : block) {
      if (kv.key == "n") {
        cfg.n = static_cast<int>(detail::json_integer(kv));
      } else if (kv.key == "m") {
        cfg.m = static_cast<int>(detail::json_integer(kv));
      } else if (kv.key == "subset") {
        if (!kv.value.is_array()) throw ConfigError("'subset' must be a list of indices", kv.line);
        std::vector<int> idx;
        for (const auto& v : kv.value) {
          if (!v.is_number_integer()) throw ConfigError("'subset' must be a list of indices", kv.line);
          idx.push_back(v.get<int>());
        }
        cfg.subset = idx;
      } else if (kv.key == "metric") {
        cfg.metric = detail::json_string(kv);
      } else if (kv.key == "lambda") {
        cfg.lambda_template = detail::json_string(kv);
      } else if (kv.key.rfind("lambda.", 0) == 0) {
        KeyValue index{kv.key, kv.key.substr(7), kv.line};
        cfg.lambda_components[static_cast<int>(detail::json_integer(index))] = detail::json_string(kv);
      } else if (kv.key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(detail::json_integer(kv));
        cfg.seed_given = true;
      } else if (kv.key == "points") {
        const long long p = detail::json_integer(kv);
        if (p < 1) throw ConfigError("'points' must be positive", kv.line);
        cfg.points = static_cast<std::size_t>(p);
      } else if (kv.key == "suite") {
        cfg.suites.clear();
        if (kv.value.is_array()) {
          for (const auto& v : kv.value) cfg.suites.push_back(v.get<std::string>());
        } else {
          cfg.suites.push_back(detail::json_string(kv));
        }
      } else if (kv.key == "catalog") {
        cfg.catalog_path = detail::json_string(kv);
      } else {
        throw ConfigError("unknown key '" + kv.key + "'", kv.line);
      }
    }
  }
}

/// Checks the module preconditions the config feeds into.
inline void validate(const RunConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  if (cfg.m < 1 || cfg.m > cfg.n) throw ConfigError("m must satisfy 1 <= m <= n");
  if (cfg.points < 1) throw ConfigError("points must be positive");
  if (!parse_metric_kind(cfg.metric)) throw ConfigError("unknown metric '" + cfg.metric + "'");
  try {
    (void)cfg.index_subset();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("subset: ") + e.what());
  }
  (void)cfg.lambda(PhaseSpace(cfg.n));
}

}  // namespace contactgeo
