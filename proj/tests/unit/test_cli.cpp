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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "twistlab/errors.hpp"
#include "twistlab/experiments.hpp"

using namespace twistlab;
using namespace twistlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("twistlab_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Config small_dirichlet() {
  Config c = Config::defaults("dirichlet");
  apply_override(c, "system.seeds=3");
  apply_override(c, "system.kmax=6");
  return c;
}

const Criterion* find(const SuiteResult& r, const std::string& name) {
  for (const auto& c : r.criteria) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("configuration") {
  Config c = Config::defaults("theorem1");
  CHECK(c.get("alpha", "spec") == "cubic");
  CHECK(c.provenance().at("alpha.spec") == "default");
  CHECK(c.integer("scales", "kmax") == 14);
  CHECK_THROWS_AS(c.get("alpha", "nope"), ConfigError);
  CHECK_THROWS_AS(c.integer("alpha", "spec"), ConfigError);

  Config f = parse_config("# comment\n[scales]\nkmax = 9\n\n[system]\nmystery = 1\n", "t.ini", c);
  CHECK(f.integer("scales", "kmax") == 9);
  CHECK(f.provenance().at("scales.kmax") == "file:t.ini:3");
  REQUIRE(f.warnings().size() == 1);
  CHECK(f.warnings()[0].find("system.mystery") != std::string::npos);

  try {
    parse_config("[scales]\nkmax 9\n", "t.ini", c);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("[nowhere]\n", "t.ini", c), ConfigError);
  CHECK_THROWS_AS(parse_config("k = 1\n", "t.ini", c), ConfigError);

  apply_override(c, "system.grid=50");
  CHECK(c.integer("system", "grid") == 50);
  CHECK(c.provenance().at("system.grid") == "flag");
  CHECK_THROWS_AS(apply_override(c, "grid=50"), UsageError);
  CHECK_THROWS_AS(apply_override(c, "nowhere.grid=50"), UsageError);
}

TEST_CASE("formatting") {
  CHECK(fmt(0.5) == "0.5");
  CHECK(fmt(1.0 / 3) == "0.3333333333");
  Table t{{"a", "b"}, {{"1", "2"}, {"3", "4"}}};
  CHECK(t.to_csv() == "a,b\n1,2\n3,4\n");
}

TEST_CASE("suites") {
  auto a = run_suite("dirichlet", small_dirichlet());
  auto b = run_suite("dirichlet", small_dirichlet());
  CHECK(a.pass());
  CHECK(a.table.to_csv() == b.table.to_csv());
  CHECK(a.table.rows.size() == 3 * 3 * 7);
  CHECK_THROWS_AS(run_suite("nonsense", small_dirichlet()), UsageError);
  CHECK(experiment_names().size() == 9);

  Config t5 = Config::defaults("theorem5");
  apply_override(t5, "scales.kmax=10");
  apply_override(t5, "system.grid=200");
  auto r5 = run_suite("theorem5", t5);
  const Criterion* decay = find(r5, "measure_decay");
  REQUIRE(decay != nullptr);
  CHECK(decay->pass);
}

TEST_CASE("run and verify") {
  fs::path dir = scratch("run");
  auto info = run_experiment("dirichlet", small_dirichlet(), dir.string());
  CHECK(info.result.pass());
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(slurp(dir / "results.csv") == info.result.table.to_csv());
  CHECK(slurp(dir / "manifest.json").find("\"system.seeds\": \"flag\"") != std::string::npos);
  auto v = verify_run(dir.string());
  CHECK(v.identical);
  CHECK(v.pass);

  // a tampered results file no longer verifies
  std::ofstream(dir / "results.csv", std::ios::app) << "extra\n";
  CHECK_FALSE(verify_run(dir.string()).identical);
  fs::remove_all(dir);
  CHECK_THROWS_AS(run_experiment("nonsense", small_dirichlet(), dir.string()), UsageError);
  CHECK_THROWS(verify_run(dir.string()));
}

}  // TEST_SUITE
