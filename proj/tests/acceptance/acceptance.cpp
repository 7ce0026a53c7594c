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

// Runs every experiment with its default configuration and reports the
// acceptance criteria, one line each. Exits nonzero when any criterion fails.

#include <cstdio>
#include <exception>
#include <map>
#include <string>
#include <vector>

#include "twistlab/experiments.hpp"

using namespace twistlab::cli;

namespace {

struct Item {
  int number;
  std::string label;
  std::string suite;
  std::vector<std::string> criteria;  // all of them must pass
};

const std::vector<Item> kItems = {
    {1, "Dirichlet floor", "dirichlet", {"dirichlet_floor"}},
    {2, "Minkowski second theorem", "minima", {"minkowski_second"}},
    {3, "polar duality", "minima", {"duality"}},
    {4, "local set ratio", "theorem1", {"stilde_ratio"}},
    {5, "sandwich inclusion", "theorem1", {"sandwich"}},
    {6, "S' components and quasi-independence", "theorem2",
     {"component_size", "component_separation", "quasi_independence"}},
    {7, "local density", "theorem3", {"local_density"}},
    {8, "singular decay and twisted margin", "theorem5", {"measure_decay", "twisted_margin"}},
    {9, "Dani correspondence", "dani", {"dani"}},
    {10, "game winning", "game-suite", {"game"}},
    {11, "Kurzweil contrast", "kurzweil", {"kurzweil_contrast"}},
};

}  // namespace

int main() {
  std::map<std::string, SuiteResult> results;
  std::map<std::string, std::string> errors;
  bool all = true;
  for (const Item& item : kItems) {
    if (!results.count(item.suite) && !errors.count(item.suite)) {
      try {
        results[item.suite] = run_suite(item.suite, Config::defaults(item.suite));
      } catch (const std::exception& e) {
        errors[item.suite] = e.what();
      }
    }
    bool pass = true;
    std::string detail;
    if (errors.count(item.suite)) {
      pass = false;
      detail = "error: " + errors[item.suite];
    } else {
      const SuiteResult& r = results[item.suite];
      for (const std::string& name : item.criteria) {
        const Criterion* found = nullptr;
        for (const Criterion& c : r.criteria) {
          if (c.name == name) found = &c;
        }
        if (!detail.empty()) detail += "; ";
        if (!found) {
          pass = false;
          detail += name + " not reported";
          continue;
        }
        pass = pass && found->pass;
        detail += name + " " + (found->pass ? "ok" : "failed") + ": " + found->detail;
      }
    }
    all = all && pass;
    std::printf("criterion %d %s: %s (%s)\n", item.number, item.label.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
