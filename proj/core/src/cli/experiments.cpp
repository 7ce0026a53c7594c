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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "twistlab/errors.hpp"
#include "twistlab/experiments.hpp"

namespace twistlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ordered_json manifest(const std::string& name, const Config& cfg, const SuiteResult* result,
                      const std::string& error) {
  ordered_json j;
  j["experiment"] = name;
  j["version"] = library_version();
  ordered_json values = ordered_json::object();
  for (const auto& [section, keys] : cfg.values()) {
    for (const auto& [key, value] : keys) values[section][key] = value;
  }
  j["config"] = values;
  ordered_json prov = ordered_json::object();
  for (const auto& [k, v] : cfg.provenance()) prov[k] = v;
  j["provenance"] = prov;
  j["budget"] = cfg.get("budget", "enumeration");
  ordered_json seeds = ordered_json::object();
  if (cfg.has("system", "seed")) seeds["system.seed"] = cfg.get("system", "seed");
  if (cfg.has("game", "seed")) seeds["game.seed"] = cfg.get("game", "seed");
  j["seeds"] = seeds;
  ordered_json fitted = ordered_json::object();
  if (result != nullptr) {
    for (const auto& [k, v] : result->fitted) fitted[k] = fmt(v);
  }
  j["fitted"] = fitted;
  j["warnings"] = cfg.warnings();
  if (!error.empty()) j["error"] = error;
  return j;
}

ordered_json summary(const SuiteResult& r) {
  ordered_json j;
  j["pass"] = r.pass();
  ordered_json crit = ordered_json::array();
  for (const auto& c : r.criteria) crit.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["criteria"] = crit;
  j["seconds"] = r.seconds;
  return j;
}

}  // namespace

const char* library_version() { return "0.1.0"; }

RunInfo run_experiment(const std::string& name, const Config& cfg, const std::string& dir) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown experiment: " + name);
  fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  SuiteResult r;
  try {
    r = run_suite(name, cfg);
  } catch (const BudgetExceeded& e) {
    write_file(out / "manifest.json", manifest(name, cfg, nullptr, e.what()).dump(2) + "\n");
    ordered_json s;
    s["pass"] = false;
    s["error"] = e.what();
    write_file(out / "summary.json", s.dump(2) + "\n");
    throw;
  }
  write_file(out / "manifest.json", manifest(name, cfg, &r, "").dump(2) + "\n");
  write_file(out / "results.csv", r.table.to_csv());
  write_file(out / "summary.json", summary(r).dump(2) + "\n");
  return {dir, r};
}

VerifyReport verify_run(const std::string& dir) {
  fs::path in(dir);
  ordered_json m;
  try {
    m = ordered_json::parse(read_file(in / "manifest.json"));
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("bad manifest: ") + e.what());
  }
  const std::string name = m.at("experiment").get<std::string>();
  Config cfg;
  for (const auto& [section, keys] : m.at("config").items()) {
    for (const auto& [key, value] : keys.items()) cfg.set(section, key, value.get<std::string>(), "manifest");
  }
  SuiteResult r = run_suite(name, cfg);
  VerifyReport rep;
  std::string recorded = read_file(in / "results.csv");
  rep.identical = recorded == r.table.to_csv();
  rep.pass = r.pass();
  std::ostringstream os;
  os << name << ": results.csv " << (rep.identical ? "reproduced" : "differs") << ", criteria "
     << (rep.pass ? "pass" : "fail");
  for (const auto& c : r.criteria) os << "\n  " << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail;
  rep.detail = os.str();
  return rep;
}

}  // namespace twistlab::cli
