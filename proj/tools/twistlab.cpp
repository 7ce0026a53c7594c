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

#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistlab/approx.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/experiments.hpp"
#include "twistlab/game.hpp"
#include "twistlab/lattice.hpp"

namespace {

using namespace twistlab;

using json = nlohmann::ordered_json;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3 };

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) v.push_back(std::stod(item));
  }
  return v;
}

json record(const Approximation& a) { return {{"dist", a.dist}, {"q", a.q}, {"p", a.p}}; }

int print_result(const cli::SuiteResult& r) {
  for (const auto& c : r.criteria) {
    std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
  }
  return r.pass() ? kPass : kFail;
}

struct RunArgs {
  std::string name;
  std::string config;
  std::vector<std::string> sets;
  std::string out;
};

int do_run(const RunArgs& a) {
  const auto& names = cli::experiment_names();
  if (std::find(names.begin(), names.end(), a.name) == names.end()) {
    throw UsageError("unknown experiment: " + a.name);
  }
  cli::Config cfg = cli::Config::defaults(a.name);
  if (!a.config.empty()) cfg = cli::load_config(a.config, cfg);
  for (const auto& s : a.sets) cli::apply_override(cfg, s);
  for (const auto& w : cfg.warnings()) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::string dir = a.out.empty() ? "runs/" + a.name : a.out;
  auto info = cli::run_experiment(a.name, cfg, dir);
  std::printf("run directory: %s (%.1f s)\n", info.dir.c_str(), info.result.seconds);
  return print_result(info.result);
}

int do_verify(const std::string& dir) {
  auto rep = cli::verify_run(dir);
  std::printf("%s\n", rep.detail.c_str());
  return rep.identical && rep.pass ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twisted Diophantine approximation on curves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::library_version());

  RunArgs run_args;
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("name", run_args.name, "Experiment name")->required();
    cmd->add_option("--config", run_args.config, "Config file");
    cmd->add_option("--set", run_args.sets, "Override, section.key=value");
    cmd->add_option("--out", run_args.out, "Run directory (default runs/NAME)");
  };
  std::string verify_dir;

  auto* cli_cmd = app.add_subcommand("cli", "Experiments and run directories");
  cli_cmd->require_subcommand(1);
  auto* cli_run = cli_cmd->add_subcommand("run", "Run an experiment suite");
  add_run(cli_run);
  auto* cli_verify = cli_cmd->add_subcommand("verify", "Re-run a recorded run and compare");
  cli_verify->add_option("rundir", verify_dir, "Run directory")->required();
  auto* cli_list = cli_cmd->add_subcommand("list", "List experiments");

  auto* run_cmd = app.add_subcommand("run", "Shorthand for 'cli run'");
  add_run(run_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "Shorthand for 'cli verify'");
  verify_cmd->add_option("rundir", verify_dir, "Run directory")->required();

  std::string alpha_spec = "cubic", psi_spec = "dirichlet:c=1", curve_spec = "veronese:m=2", beta_text;
  double qmax = 1024;
  int kmin = 1, kmax = 12;
  bool dual = false;

  auto* approx_cmd = app.add_subcommand("approx", "Best approximations and exponents");
  approx_cmd->require_subcommand(1);
  auto* approx_best = approx_cmd->add_subcommand("best", "Best twisted approximation with |q| <= qmax");
  auto* approx_margin = approx_cmd->add_subcommand("margin", "inf |q|^{n/m} |alpha q + beta + p| up to qmax");
  auto* approx_omega = approx_cmd->add_subcommand("omega", "Exponent of irrationality estimate");
  auto* approx_profile = approx_cmd->add_subcommand("profile", "Dirichlet improvement profile as CSV Q,eps");
  for (auto* c : {approx_best, approx_margin, approx_omega, approx_profile}) {
    c->add_option("--alpha", alpha_spec, "Preset name or matrix file");
  }
  for (auto* c : {approx_best, approx_margin}) c->add_option("--beta", beta_text, "Comma separated shift");
  for (auto* c : {approx_best, approx_margin, approx_omega}) c->add_option("--qmax", qmax, "Largest |q|");
  approx_profile->add_option("--kmin", kmin, "Smallest exponent k of Q = 2^k");
  approx_profile->add_option("--kmax", kmax, "Largest exponent k of Q = 2^k");

  auto* lattice_cmd = app.add_subcommand("lattice", "The lattice Lambda_Q");
  lattice_cmd->require_subcommand(1);
  auto* lattice_minima = lattice_cmd->add_subcommand("minima", "Successive minima for R(1,1)");
  lattice_minima->add_option("--alpha", alpha_spec, "Preset name or matrix file");
  lattice_minima->add_option("-Q,--Q", qmax, "Scale Q");
  lattice_minima->add_flag("--dual", dual, "Polar lattice and region");

  auto* curve_cmd = app.add_subcommand("curve", "Sets on a curve");
  curve_cmd->require_subcommand(1);
  auto* curve_sq = curve_cmd->add_subcommand("sq", "Exact S_Q as a union of intervals");
  curve_sq->add_option("--alpha", alpha_spec, "Preset name or matrix file");
  curve_sq->add_option("--psi", psi_spec, "Approximation function, e.g. hardy_h:i=1");
  curve_sq->add_option("--curve", curve_spec, "Curve, e.g. veronese:m=2");
  curve_sq->add_option("-Q,--Q", qmax, "Scale Q");

  GameConfig gc;
  std::string bob = "random", beta_param;
  double qcheck = 1000, eps_qmax = 1e5;
  auto* game_cmd = app.add_subcommand("game", "Absolute game");
  game_cmd->require_subcommand(1);
  auto* game_play = game_cmd->add_subcommand("play", "Play one game and verify it");
  game_play->add_option("--alpha", alpha_spec, "Preset name or matrix file");
  game_play->add_option("--beta-param", beta_param, "Radius ratio, e.g. 1/3");
  game_play->add_option("--epsilon", gc.epsilon, "Default: estimated from the alpha margin");
  game_play->add_option("--rounds", gc.rounds, "Number of rounds");
  game_play->add_option("--precision", gc.precision_bits, "Working precision in bits");
  game_play->add_option("--seed", gc.seed, "Seed for Bob");
  game_play->add_option("--bob", bob, "random or greedy");
  game_play->add_option("--qcheck", qcheck, "Largest |q| in the outcome check");
  game_play->add_option("--eps-qmax", eps_qmax, "Largest |q| for the epsilon estimate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (cli_list->parsed()) {
      for (const auto& n : cli::experiment_names()) std::printf("%s\n", n.c_str());
      return kPass;
    }
    if (cli_run->parsed() || run_cmd->parsed()) return do_run(run_args);
    if (cli_verify->parsed() || verify_cmd->parsed()) return do_verify(verify_dir);

    if (approx_cmd->parsed()) {
      auto alpha = TargetMatrix::from_spec(alpha_spec);
      std::vector<double> beta = parse_vector(beta_text);
      json out;
      out["inputs"] = {{"alpha", alpha_spec}, {"beta", beta}, {"qmax", qmax}};
      out["budget"] = enumeration_budget();
      if (approx_best->parsed()) {
        auto a = best_twisted(alpha, beta, qmax, beta.empty());
        out["result"] = record(a);
      } else if (approx_margin->parsed()) {
        std::optional<std::vector<double>> b;
        if (!beta.empty()) b = beta;
        auto mg = bad_margin(alpha, b, qmax);
        out["result"] = {{"margin", mg.margin}, {"q", mg.q}};
      } else if (approx_omega->parsed()) {
        auto om = omega_estimate(alpha, qmax, true);
        json trace = json::array();
        for (const auto& a : om.trace) trace.push_back(record(a));
        out["result"] = {{"omega_hat", om.omega_hat}, {"infinite", om.infinite}, {"trace", trace}};
      } else {
        auto prof = singularity_profile(alpha, QGrid::make(kmin, kmax));
        std::printf("Q,eps\n");
        for (std::size_t k = 0; k < prof.Q.size(); ++k) {
          std::printf("%s,%s\n", cli::fmt(prof.Q[k]).c_str(), cli::fmt(prof.eps[k]).c_str());
        }
        std::fprintf(stderr, "slope %s, %s\n", cli::fmt(prof.slope).c_str(), to_string(prof.classification));
        return kPass;
      }
      std::printf("%s\n", out.dump(2).c_str());
      return kPass;
    }
    if (lattice_minima->parsed()) {
      LatticeQ L(TargetMatrix::from_spec(alpha_spec), qmax);
      auto lam = minkowski_minima(L, Region::make(1, 1), dual);
      json out = {{"inputs", {{"alpha", alpha_spec}, {"Q", qmax}, {"dual", dual}}}, {"minima", lam}};
      std::printf("%s\n", out.dump(2).c_str());
      return kPass;
    }
    if (curve_sq->parsed()) {
      auto alpha = TargetMatrix::from_spec(alpha_spec);
      auto curve = Curve::parse(curve_spec);
      auto psi = ApproxFn::parse(psi_spec, alpha.shape());
      auto S = sq_set(curve, curve.I0(), alpha, psi, qmax);
      json parts = json::array();
      for (const auto& I : S.intervals()) parts.push_back({I.lo, I.hi});
      json out = {{"inputs", {{"alpha", alpha_spec}, {"psi", psi_spec}, {"curve", curve_spec}, {"Q", qmax}}},
                  {"measure", S.measure()},
                  {"intervals", parts}};
      std::printf("%s\n", out.dump(2).c_str());
      return kPass;
    }
    if (game_play->parsed()) {
      auto alpha = TargetMatrix::from_spec(alpha_spec);
      if (!beta_param.empty()) {
        cli::Config one;
        one.set("game", "beta", beta_param, "flag");
        gc.beta_param = one.number("game", "beta");
      }
      if (gc.epsilon == 0) gc.epsilon = epsilon_estimate(alpha, eps_qmax);
      auto t = play(alpha, gc, parse_bob(bob));
      auto leg = check_transcript(t);
      auto v = verify_outcome(alpha, t.outcome, qcheck, gc);
      auto vec = [](const RealVec& x) {
        json a = json::array();
        for (const auto& e : x) a.push_back(to_string(e, 40));
        return a;
      };
      json rounds = json::array();
      for (const auto& r : t.rounds) {
        rounds.push_back({{"B", {{"center", vec(r.B.center)}, {"radius", to_string(r.B.radius, 20)}}},
                          {"A", {{"center", vec(r.A.center)}, {"radius", to_string(r.A.radius, 20)}}},
                          {"Q", to_string(r.alice.Q, 20)},
                          {"found", r.alice.found},
                          {"p", vec(r.alice.pair.p)},
                          {"q", vec(r.alice.pair.q)}});
      }
      json out;
      out["inputs"] = {{"alpha", alpha_spec}, {"beta_param", gc.beta_param}, {"epsilon", gc.epsilon},
                       {"rounds", gc.rounds}, {"precision", gc.precision_bits}, {"seed", gc.seed},
                       {"bob", bob}, {"qcheck", qcheck}};
      out["transcript"] = rounds;
      out["outcome"] = vec(t.outcome);
      out["legality"] = {{"ok", leg.ok}, {"round", leg.round}, {"reason", leg.reason}};
      out["verification"] = {{"min_margin", v.min_margin}, {"threshold", v.threshold}, {"pass", v.pass},
                             {"vacuous", v.vacuous}, {"q_at_min", v.q_at_min}};
      std::printf("%s\n", out.dump(2).c_str());
      return leg.ok && v.pass ? kPass : kFail;
    }
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBudget;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
