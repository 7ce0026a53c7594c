// Copyright 2026 The twistlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "twistlab/errors.hpp"
#include "twistlab/experiments.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab::cli {
namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"system",
       {"seed", "seeds", "cases", "shapes", "kmin", "kmax", "dmax", "grid", "min_good", "K_slack", "sandwich_kmin",
        "xgrid", "window", "gap_fit_factor", "chat_ratio", "pieces", "density_fit_factor", "singularity_kmax",
        "slope_max", "margin_fraction", "margin_qmax", "contrast_alpha", "gap", "floor", "time_limit"}},
      {"alpha", {"spec"}},
      {"psi", {"spec"}},
      {"curve", {"spec"}},
      {"scales", {"spec", "kmin", "kmax"}},
      {"budget", {"enumeration"}},
      {"game", {"games", "rounds", "betas", "bobs", "precision", "qcheck", "eps_qmax", "first_radius", "seed"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::defaults(const std::string& experiment) {
  Config c;
  auto d = [&c](const std::string& s, const std::string& k, const std::string& v) { c.set(s, k, v, "default"); };
  d("budget", "enumeration", std::to_string(enumeration_budget()));
  d("system", "seed", "1");
  if (experiment == "dirichlet") {
    d("system", "seeds", "50");
    d("system", "shapes", "2x1,3x1,2x2");
    d("system", "kmax", "12");
    d("system", "time_limit", "60");
  } else if (experiment == "minima") {
    d("system", "cases", "100");
    d("system", "kmax", "10");
    d("system", "dmax", "4");
    d("system", "time_limit", "120");
  } else if (experiment == "theorem1") {
    d("alpha", "spec", "cubic");
    d("curve", "spec", "veronese:m=2");
    d("psi", "spec", "dirichlet:c=0.1");
    d("scales", "spec", "thm3:eps=0.1,Delta=1,C1=0.1");
    d("scales", "kmin", "6");
    d("scales", "kmax", "14");
    d("system", "grid", "200");
    d("system", "min_good", "100");
    d("system", "K_slack", "2");
    d("system", "sandwich_kmin", "8");
    d("system", "xgrid", "1000");
    d("system", "time_limit", "300");
  } else if (experiment == "theorem2") {
    d("alpha", "spec", "cubic");
    d("curve", "spec", "veronese:m=2");
    d("psi", "spec", "hardy_h:i=1");
    d("scales", "spec", "thm2:beta=5,C1=0.01");
    d("scales", "kmin", "8");
    d("scales", "kmax", "13");
    d("system", "window", "3");
    d("system", "gap_fit_factor", "0.5");
    d("system", "chat_ratio", "2");
    d("system", "time_limit", "600");
  } else if (experiment == "theorem3") {
    d("alpha", "spec", "cubic");
    d("curve", "spec", "veronese:m=2");
    d("psi", "spec", "dirichlet:c=0.5");
    d("scales", "kmin", "8");
    d("scales", "kmax", "13");
    d("system", "pieces", "20");
    d("system", "density_fit_factor", "0.5");
    d("system", "singularity_kmax", "16");
  } else if (experiment == "theorem5") {
    d("alpha", "spec", "rational");
    d("curve", "spec", "veronese:m=2");
    d("psi", "spec", "dirichlet:c=1");
    d("scales", "kmin", "6");
    d("scales", "kmax", "14");
    d("system", "grid", "1000");
    d("system", "slope_max", "-0.2");
    d("system", "margin_fraction", "0.95");
    d("system", "margin_qmax", "4096");
  } else if (experiment == "kurzweil") {
    d("alpha", "spec", "cubic");
    d("system", "contrast_alpha", "liouville");
    d("curve", "spec", "veronese:m=2");
    d("psi", "spec", "dirichlet:c=1");
    d("scales", "kmin", "10");
    d("scales", "kmax", "12");
    d("system", "grid", "1000");
    d("system", "gap", "0.2");
  } else if (experiment == "dani") {
    d("alpha", "spec", "cubic");
    d("system", "contrast_alpha", "liouville");
    d("system", "kmin", "1");
    d("system", "kmax", "16");
    d("system", "slope_max", "-0.1");
    d("system", "floor", "0.25");
    d("system", "time_limit", "120");
  } else if (experiment == "game-suite") {
    d("alpha", "spec", "cubic:bits=512");
    d("game", "games", "200");
    d("game", "rounds", "60");
    d("game", "betas", "1/3,1/5");
    d("game", "bobs", "random,greedy");
    d("game", "precision", "512");
    d("game", "qcheck", "1000");
    d("game", "eps_qmax", "100000");
    d("game", "first_radius", "0.1");
    d("game", "seed", "1");
    d("system", "time_limit", "600");
  }
  return c;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value,
                 const std::string& provenance) {
  values_[section][key] = value;
  provenance_[section + "." + key] = provenance;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = values_.find(section);
  return it != values_.end() && it->second.count(key);
}

std::string Config::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ConfigError("missing setting " + section + "." + key);
  return values_.at(section).at(key);
}

double Config::number(const std::string& section, const std::string& key) const {
  std::string v = get(section, key);
  auto slash = v.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      double a = std::stod(v.substr(0, slash), &used);
      double b = std::stod(v.substr(slash + 1));
      return a / b;
    }
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(section + "." + key + " is not a number: '" + v + "'");
  }
}

long long Config::integer(const std::string& section, const std::string& key) const {
  double x = number(section, key);
  if (x != static_cast<double>(static_cast<long long>(x))) {
    throw ConfigError(section + "." + key + " is not an integer");
  }
  return static_cast<long long>(x);
}

std::vector<std::string> Config::list(const std::string& section, const std::string& key) const {
  std::vector<std::string> out;
  std::stringstream ss(get(section, key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string Config::to_text() const {
  std::ostringstream os;
  for (const auto& [section, kv] : values_) {
    os << "[" << section << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  }
  return os.str();
}

Config parse_config(const std::string& text, const std::string& origin, Config base) {
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("malformed section header '" + line + "'", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) throw ConfigError("unknown section [" + section + "]", lineno);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + line + "'", lineno);
    if (section.empty()) throw ConfigError("setting before any [section]", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (!known_keys().at(section).count(key)) {
      base.warn(origin + ":" + std::to_string(lineno) + ": unknown key " + section + "." + key);
    }
    base.set(section, key, value, "file:" + origin + ":" + std::to_string(lineno));
  }
  return base;
}

Config load_config(const std::string& path, Config base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, std::move(base));
}

void apply_override(Config& cfg, const std::string& assignment) {
  auto eq = assignment.find('=');
  auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw UsageError("override must look like section.key=value: " + assignment);
  }
  std::string section = trim(assignment.substr(0, dot));
  std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  if (!known_keys().count(section)) throw UsageError("unknown section in override: " + section);
  if (!known_keys().at(section).count(key)) cfg.warn("flag: unknown key " + section + "." + key);
  cfg.set(section, key, trim(assignment.substr(eq + 1)), "flag");
}

}  // namespace twistlab::cli
