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

#ifndef TWISTLAB_EXPERIMENTS_HPP_
#define TWISTLAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twistlab::cli {

// Sectioned key-value configuration. Every value remembers where it came
// from ("default", "file:<path>:<line>" or "flag").
class Config {
 public:
  // Defaults for one experiment, or the common sections for "".
  static Config defaults(const std::string& experiment);

  void set(const std::string& section, const std::string& key, const std::string& value,
           const std::string& provenance);
  bool has(const std::string& section, const std::string& key) const;
  // Throw ConfigError when the key is missing or malformed.
  std::string get(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  long long integer(const std::string& section, const std::string& key) const;
  std::vector<std::string> list(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& values() const { return values_; }
  const std::map<std::string, std::string>& provenance() const { return provenance_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(const std::string& w) { warnings_.push_back(w); }

  // The [section] key = value text form, sorted.
  std::string to_text() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::map<std::string, std::string> provenance_;
  std::vector<std::string> warnings_;
};

// Reads "[section]" headers and "key = value" lines on top of base; '#'
// starts a comment. Unknown sections are errors, unknown keys are warnings.
Config parse_config(const std::string& text, const std::string& origin, Config base);
Config load_config(const std::string& path, Config base);
// "section.key=value" from the command line.
void apply_override(Config& cfg, const std::string& assignment);

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
};

struct SuiteResult {
  Table table;
  std::vector<Criterion> criteria;
  // Every constant fitted or frozen for a pass/fail decision.
  std::map<std::string, double> fitted;
  double seconds = 0;
  bool pass() const;
};

const std::vector<std::string>& experiment_names();
// Runs the computation only; throws UsageError for unknown names.
SuiteResult run_suite(const std::string& name, const Config& cfg);

struct RunInfo {
  std::string dir;
  SuiteResult result;
};
// Writes manifest.json, results.csv and summary.json into dir. Partial
// results are written before a BudgetExceeded is rethrown.
RunInfo run_experiment(const std::string& name, const Config& cfg, const std::string& dir);

struct VerifyReport {
  bool identical = false;  // results.csv reproduced byte for byte
  bool pass = false;       // recomputed summary passes
  std::string detail;
};
// Re-runs the experiment recorded in dir/manifest.json.
VerifyReport verify_run(const std::string& dir);

// Formats a number the way results.csv does.
std::string fmt(double x);

const char* library_version();

}  // namespace twistlab::cli

#endif  // TWISTLAB_EXPERIMENTS_HPP_
