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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "twistlab/approx.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/experiments.hpp"
#include "twistlab/game.hpp"
#include "twistlab/lattice.hpp"

namespace twistlab::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string yes(bool b) { return b ? "1" : "0"; }

std::uint64_t budget_of(const Config& cfg) {
  long long b = cfg.integer("budget", "enumeration");
  if (b <= 0) throw ConfigError("budget.enumeration must be positive");
  return static_cast<std::uint64_t>(b);
}

// Appends the runtime limit, when configured, to a criterion.
void timed(Criterion& c, const Config& cfg, double seconds) {
  if (!cfg.has("system", "time_limit")) return;
  double limit = cfg.number("system", "time_limit");
  std::ostringstream os;
  os << c.detail << (c.detail.empty() ? "" : "; ") << "runtime " << fmt(seconds) << " s (limit " << fmt(limit)
     << " s)";
  c.detail = os.str();
  if (seconds > limit) c.pass = false;
}

QGrid q_grid(const Config& cfg, const std::string& section) {
  return QGrid::make(static_cast<int>(cfg.integer(section, "kmin")), static_cast<int>(cfg.integer(section, "kmax")));
}

SystemShape parse_shape(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) throw ConfigError("shape must look like MxN: " + s);
  return SystemShape::make(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
}

double factorial(int d) {
  double f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

SuiteResult dirichlet(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  const long long seed0 = cfg.integer("system", "seed");
  const long long seeds = cfg.integer("system", "seeds");
  const int kmax = static_cast<int>(cfg.integer("system", "kmax"));
  std::vector<double> radii;
  for (int k = 0; k <= kmax; ++k) radii.push_back(std::ldexp(1.0, k));
  r.table.header = {"shape", "seed", "Q", "distance", "bound", "pass"};
  std::size_t failures = 0, checks = 0;
  double worst = 0;
  for (const std::string& sh : cfg.list("system", "shapes")) {
    SystemShape shape = parse_shape(sh);
    for (long long s = seed0; s < seed0 + seeds; ++s) {
      auto alpha = TargetMatrix::random_uniform(shape, static_cast<std::uint64_t>(s));
      auto best = best_twisted_profile(alpha, {}, radii, true, budget);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        double bound = std::sqrt(static_cast<double>(shape.m)) * std::pow(radii[k], -shape.ratio());
        bool ok = best[k].dist <= bound;
        ++checks;
        failures += ok ? 0 : 1;
        worst = std::max(worst, best[k].dist / bound);
        r.table.rows.push_back({sh, std::to_string(s), fmt(radii[k]), fmt(best[k].dist), fmt(bound), yes(ok)});
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.fitted["worst_distance_over_bound"] = worst;
  Criterion c{"dirichlet_floor", failures == 0,
              std::to_string(failures) + " failures in " + std::to_string(checks) + " checks; worst ratio " +
                  fmt(worst)};
  timed(c, cfg, r.seconds);
  r.criteria.push_back(c);
  return r;
}

SuiteResult minima(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  const long long seed0 = cfg.integer("system", "seed");
  const long long cases = cfg.integer("system", "cases");
  const int kmax = static_cast<int>(cfg.integer("system", "kmax"));
  const int dmax = static_cast<int>(cfg.integer("system", "dmax"));
  std::vector<SystemShape> shapes;
  for (int d = 2; d <= dmax; ++d) {
    for (int m = 1; m < d; ++m) shapes.push_back(SystemShape::make(m, d - m));
  }
  if (shapes.empty()) throw ConfigError("system.dmax must be at least 2");
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed0));
  r.table.header = {"case", "m", "n", "seed", "Q", "prod_vol", "lower", "upper", "duality_min", "duality_max"};
  std::size_t mink_fail = 0, dual_fail = 0;
  const double tol = 1e-6;
  for (long long c = 0; c < cases; ++c) {
    SystemShape shape = shapes[rng() % shapes.size()];
    int k = static_cast<int>(rng() % static_cast<std::uint64_t>(kmax + 1));
    std::uint64_t seed = rng() % 1000000;
    double Q = std::ldexp(1.0, k);
    auto alpha = TargetMatrix::random_uniform(shape, seed);
    LatticeQ L(alpha, Q);
    Region R = Region::make(1, 1);
    auto lam = minkowski_minima(L, R, false, budget);
    auto dual = minkowski_minima(L, R, true, budget);
    const int d = shape.d();
    double prod = R.volume(shape);
    for (double x : lam) prod *= x;
    double lower = std::pow(2.0, d) / factorial(d), upper = std::pow(2.0, d);
    if (prod < lower * (1 - tol) || prod > upper * (1 + tol)) ++mink_fail;
    double dmin = std::numeric_limits<double>::infinity(), dmx = 0;
    for (int i = 0; i < d; ++i) {
      double v = dual[i] * lam[d - 1 - i];
      dmin = std::min(dmin, v);
      dmx = std::max(dmx, v);
    }
    if (dmin < 1 - tol || dmx > factorial(d) + tol) ++dual_fail;
    r.table.rows.push_back({std::to_string(c), std::to_string(shape.m), std::to_string(shape.n), std::to_string(seed),
                            fmt(Q), fmt(prod), fmt(lower), fmt(upper), fmt(dmin), fmt(dmx)});
  }
  r.seconds = seconds_since(t0);
  Criterion a{"minkowski_second", mink_fail == 0,
              std::to_string(mink_fail) + " of " + std::to_string(cases) + " cases outside [2^d/d!, 2^d]"};
  Criterion b{"duality", dual_fail == 0,
              std::to_string(dual_fail) + " of " + std::to_string(cases) + " cases outside [1, d!]"};
  timed(a, cfg, r.seconds);
  timed(b, cfg, r.seconds);
  r.criteria = {a, b};
  return r;
}

struct CurveScenario {
  TargetMatrix alpha;
  Curve curve;
  ApproxFn psi;
};

CurveScenario scenario(const Config& cfg, const std::string& alpha_spec) {
  auto alpha = TargetMatrix::from_spec(alpha_spec);
  auto curve = Curve::parse(cfg.get("curve", "spec"));
  if (curve.m() != alpha.m()) throw ConfigError("curve dimension does not match alpha");
  auto psi = ApproxFn::parse(cfg.get("psi", "spec"), alpha.shape());
  return {std::move(alpha), std::move(curve), std::move(psi)};
}

// Local machinery: linearised slices on good points and the sandwich
// between S~(1/2), S_Q and S~(3/2).
SuiteResult theorem1(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  auto sc = scenario(cfg, cfg.get("alpha", "spec"));
  auto scfg = ScaleConfig::parse(cfg.get("scales", "spec"));
  const int grid = static_cast<int>(cfg.integer("system", "grid"));
  const long long min_good = cfg.integer("system", "min_good");
  const double slack = cfg.number("system", "K_slack");
  const int sandwich_kmin = static_cast<int>(cfg.integer("system", "sandwich_kmin"));
  const std::size_t xgrid = static_cast<std::size_t>(cfg.integer("system", "xgrid"));
  const Interval I0 = sc.curve.I0();
  const int m = sc.alpha.m();
  r.table.header = {"Q",     "sq_measure", "bq_measure", "stilde_ratio_min", "stilde_ratio_max", "good",
                    "notpsiapprox", "sandwich_checked", "sandwich_violations", "theta", "Theta"};
  double K = 0;
  std::size_t exceptions = 0, violations = 0;
  std::vector<std::string> notes;
  bool sandwich_untested = false;
  const QGrid qg = q_grid(cfg, "scales");
  for (int k = qg.kmin; k <= qg.kmax; ++k) {
    const double Q = std::ldexp(1.0, k);
    ScaleSet s = compute_scales(scfg, sc.psi, Q);
    LatticeQ L(sc.alpha, Q);
    bool npa = check_notpsiapprox(L, sc.psi, budget);
    GoodBad gb(sc.curve, sc.alpha, s, budget);
    std::vector<double> ratios;
    std::size_t checked = 0, viol = 0;
    for (int j = 0; j < grid; ++j) {
      double t = I0.lo + (j + 0.5) / grid * I0.length();
      if (!gb.is_good(t)) continue;
      ratios.push_back(stilde(sc.curve, t, sc.alpha, sc.psi, Q, 1.5, s.theta, budget).measure() /
                       std::pow(s.Psi, m));
      if (k >= sandwich_kmin && t - s.theta >= I0.lo && t + s.theta <= I0.hi) {
        auto rep = sandwich_check(sc.curve, t, sc.alpha, sc.psi, Q, s.theta, xgrid, budget);
        ++checked;
        viol += rep.violations;
      }
    }
    double rmin = ratios.empty() ? 0 : *std::min_element(ratios.begin(), ratios.end());
    double rmax = ratios.empty() ? 0 : *std::max_element(ratios.begin(), ratios.end());
    if (k == qg.kmin) {
      for (double x : ratios) K = std::max(K, std::max(x, 1 / x));
      K *= slack;
      if (ratios.empty()) K = 0;
    }
    std::size_t out = 0;
    for (double x : ratios) out += (x < 1 / K || x > K) ? 1 : 0;
    exceptions += out;
    if (static_cast<long long>(ratios.size()) < min_good) {
      ++exceptions;
      notes.push_back("Q=2^" + std::to_string(k) + " has only " + std::to_string(ratios.size()) + " good points");
    }
    if (!npa) {
      ++exceptions;
      notes.push_back("Q=2^" + std::to_string(k) + " fails the not-psi-approximable check");
    }
    if (k >= sandwich_kmin) {
      violations += viol;
      if (checked == 0) sandwich_untested = true;
    }
    auto bq = bq_measure(sc.curve, I0, sc.alpha, s, 1000, budget);
    r.table.rows.push_back({fmt(Q), fmt(sq_set(sc.curve, I0, sc.alpha, sc.psi, Q, budget).measure()), fmt(bq.exact),
                            fmt(rmin), fmt(rmax), std::to_string(ratios.size()), yes(npa), std::to_string(checked),
                            std::to_string(viol), fmt(s.theta), fmt(s.Theta)});
  }
  r.seconds = seconds_since(t0);
  r.fitted["K"] = K;
  r.fitted["K_slack"] = slack;
  std::string extra;
  for (const auto& n : notes) extra += "; " + n;
  Criterion a{"stilde_ratio", exceptions == 0 && K > 0,
              std::to_string(exceptions) + " exceptions with K = " + fmt(K) + extra};
  timed(a, cfg, r.seconds);
  Criterion b{"sandwich", violations == 0 && !sandwich_untested,
              std::to_string(violations) + " inclusion violations for Q >= 2^" + std::to_string(sandwich_kmin) +
                  (sandwich_untested ? "; some Q had no point with B(s, theta) inside I0" : "")};
  r.criteria = {a, b};
  return r;
}

// Components, separation and overlap sums of S'_Q.
SuiteResult theorem2(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  auto sc = scenario(cfg, cfg.get("alpha", "spec"));
  auto scfg = ScaleConfig::parse(cfg.get("scales", "spec"));
  const int level = (sc.psi.family() == Family::HardyH || sc.psi.family() == Family::HardyPhi) ? sc.psi.level() : 1;
  ApproxFn phi = ApproxFn::hardy_phi(sc.alpha.shape(), level);
  const std::size_t window = static_cast<std::size_t>(cfg.integer("system", "window"));
  const double gap_factor = cfg.number("system", "gap_fit_factor");
  const double chat_ratio = cfg.number("system", "chat_ratio");
  r.table.header = {"Q",          "theta",  "anchors", "components", "min_length", "max_length", "size_lo",
                    "size_hi",    "min_gap", "gap_ratio", "measure"};
  std::vector<IntervalSet> sets;
  std::vector<ComponentReport> reps;
  std::vector<double> Qs;
  const QGrid qg = q_grid(cfg, "scales");
  for (double Q : qg.values()) {
    ScaleSet s = compute_scales(scfg, sc.psi, Q);
    SPrime sp = sprime_build(sc.curve, sc.alpha, sc.psi, s, budget);
    ComponentReport rep = component_stats(sp.set, sc.psi, phi, Q, sc.curve.C2(), 0);
    r.table.rows.push_back({fmt(Q), fmt(s.theta), std::to_string(sp.anchors.size()), std::to_string(rep.components),
                            fmt(rep.min_length), fmt(rep.max_length), fmt(rep.size_lo), fmt(rep.size_hi),
                            fmt(rep.min_gap), fmt(rep.gap_ratio), fmt(sp.set.measure())});
    sets.push_back(sp.set);
    reps.push_back(rep);
    Qs.push_back(Q);
  }
  std::size_t size_bad = 0;
  for (const auto& rep : reps) size_bad += rep.size_pass || rep.components == 0 ? 0 : 1;
  double gap_const = 0;
  std::size_t sep_bad = 0, sep_checked = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i].components < 2) continue;
    if (gap_const == 0) gap_const = gap_factor * reps[i].gap_ratio;
    ++sep_checked;
    if (reps[i].min_gap < gap_const * phi(Qs[i])) ++sep_bad;
  }
  std::vector<double> chats;
  bool bound_ok = true;
  for (std::size_t i = 0; i + window <= sets.size(); ++i) {
    std::vector<IntervalSet> w(sets.begin() + static_cast<long>(i), sets.begin() + static_cast<long>(i + window));
    OverlapSums o = overlap_sums(w, sc.curve.I0());
    chats.push_back(o.C_hat);
    r.fitted["C_hat_window_" + std::to_string(i)] = o.C_hat;
    r.fitted["gdbc_bound_window_" + std::to_string(i)] = o.gdbc_bound;
    if (!(o.gdbc_bound > 0)) bound_ok = false;
  }
  r.seconds = seconds_since(t0);
  r.fitted["gap_constant"] = gap_const;
  double cmin = chats.empty() ? 0 : *std::min_element(chats.begin(), chats.end());
  double cmax = chats.empty() ? 0 : *std::max_element(chats.begin(), chats.end());
  bool stable = !chats.empty() && cmin > 0 && cmax <= chat_ratio * cmin;
  Criterion a{"component_size", size_bad == 0,
              std::to_string(size_bad) + " of " + std::to_string(reps.size()) +
                  " Q values with a component outside [4 C2 psi, 6 C2 psi]"};
  Criterion b{"component_separation", sep_bad == 0 && sep_checked > 0 && gap_const > 0,
              std::to_string(sep_bad) + " of " + std::to_string(sep_checked) + " Q values below " + fmt(gap_const) +
                  " phi(Q)"};
  Criterion c{"quasi_independence", stable && bound_ok,
              "C_hat in [" + fmt(cmin) + ", " + fmt(cmax) + "] over " + std::to_string(chats.size()) +
                  " windows" + (bound_ok ? "" : "; a window has gdbc_bound <= 0")};
  timed(a, cfg, r.seconds);
  timed(b, cfg, r.seconds);
  timed(c, cfg, r.seconds);
  r.criteria = {a, b, c};
  return r;
}

// Local density of S_Q on a cover of I0 by equal pieces.
SuiteResult theorem3(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  auto sc = scenario(cfg, cfg.get("alpha", "spec"));
  const int pieces = static_cast<int>(cfg.integer("system", "pieces"));
  const double factor = cfg.number("system", "density_fit_factor");
  const Interval I0 = sc.curve.I0();
  auto prof = singularity_profile(sc.alpha, QGrid::make(1, static_cast<int>(cfg.integer("system", "singularity_kmax"))),
                                  {}, budget);
  r.table.header = {"Q", "piece", "lo", "hi", "density"};
  const auto Qs = q_grid(cfg, "scales").values();
  std::vector<std::vector<double>> dens(pieces);
  double c = 0;
  for (std::size_t qi = 0; qi < Qs.size(); ++qi) {
    IntervalSet S = sq_set(sc.curve, I0, sc.alpha, sc.psi, Qs[qi], budget);
    double lowest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < pieces; ++j) {
      Interval I{I0.lo + I0.length() * j / pieces, I0.lo + I0.length() * (j + 1) / pieces};
      double dv = S.clip(I).measure() / I.length();
      dens[j].push_back(dv);
      lowest = std::min(lowest, dv);
      r.table.rows.push_back({fmt(Qs[qi]), std::to_string(j), fmt(I.lo), fmt(I.hi), fmt(dv)});
    }
    if (qi == 0) c = factor * lowest;
  }
  std::size_t weak = 0;
  for (const auto& d : dens) {
    std::size_t above = std::count_if(d.begin(), d.end(), [c](double x) { return x >= c; });
    if (2 * above < d.size()) ++weak;
  }
  r.seconds = seconds_since(t0);
  r.fitted["density_constant"] = c;
  r.fitted["singularity_liminf"] = prof.liminf;
  bool nonsingular = prof.classification == Singularity::NonsingularEvidence;
  Criterion a{"local_density", c > 0 && weak == 0 && nonsingular,
              std::to_string(weak) + " of " + std::to_string(pieces) + " pieces below c = " + fmt(c) +
                  " for more than half of the Q values; alpha classified " + to_string(prof.classification)};
  timed(a, cfg, r.seconds);
  r.criteria = {a};
  return r;
}

// |f^{-1}(A_Q)| decay and twisted margins for a very singular alpha.
SuiteResult theorem5(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  auto sc = scenario(cfg, cfg.get("alpha", "spec"));
  const int grid = static_cast<int>(cfg.integer("system", "grid"));
  const double slope_max = cfg.number("system", "slope_max");
  const double fraction = cfg.number("system", "margin_fraction");
  const double qmax = cfg.number("system", "margin_qmax");
  const Interval I0 = sc.curve.I0();
  r.table.header = {"Q", "measure"};
  std::vector<double> lx, ly;
  for (double Q : q_grid(cfg, "scales").values()) {
    double mu = sq_set(sc.curve, I0, sc.alpha, sc.psi, Q, budget).measure();
    r.table.rows.push_back({fmt(Q), fmt(mu)});
    if (mu > 0) {
      lx.push_back(std::log(Q));
      ly.push_back(std::log(mu));
    }
  }
  double slope = lx.size() >= 2 ? fit_line(lx, ly).first : 0;
  std::size_t positive = 0;
  for (int j = 0; j < grid; ++j) {
    double t = I0.lo + (j + 0.5) / grid * I0.length();
    if (bad_margin(sc.alpha, sc.curve.value(t), qmax, budget).margin > 0) ++positive;
  }
  r.seconds = seconds_since(t0);
  double frac = static_cast<double>(positive) / grid;
  r.fitted["measure_slope"] = slope;
  r.fitted["slope_max"] = slope_max;
  r.fitted["margin_positive_fraction"] = frac;
  r.fitted["margin_fraction_required"] = fraction;
  Criterion a{"measure_decay", lx.size() >= 2 && slope <= slope_max,
              "fitted log-log slope " + fmt(slope) + " (need <= " + fmt(slope_max) + ")"};
  Criterion b{"twisted_margin", frac >= fraction,
              fmt(100 * frac) + "% of grid points have positive margin up to |q| <= " + fmt(qmax)};
  r.criteria = {a, b};
  return r;
}

SuiteResult kurzweil(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  const std::size_t grid = static_cast<std::size_t>(cfg.integer("system", "grid"));
  const double gap = cfg.number("system", "gap");
  r.table.header = {"alpha", "Q", "fraction", "cumulative"};
  std::vector<double> fractions;
  for (const std::string& spec : {cfg.get("alpha", "spec"), cfg.get("system", "contrast_alpha")}) {
    auto sc = scenario(cfg, spec);
    std::vector<bool> hit(grid, false);
    for (double Q : q_grid(cfg, "scales").values()) {
      auto h = sq_grid(sc.curve, sc.curve.I0(), sc.alpha, sc.psi, Q, grid, budget);
      std::size_t here = 0, total = 0;
      for (std::size_t j = 0; j < grid; ++j) {
        here += h[j] ? 1 : 0;
        if (h[j]) hit[j] = true;
        total += hit[j] ? 1 : 0;
      }
      r.table.rows.push_back({spec, fmt(Q), fmt(static_cast<double>(here) / grid),
                              fmt(static_cast<double>(total) / grid)});
    }
    fractions.push_back(static_cast<double>(std::count(hit.begin(), hit.end(), true)) / grid);
  }
  r.seconds = seconds_since(t0);
  r.fitted["fraction_main"] = fractions[0];
  r.fitted["fraction_contrast"] = fractions[1];
  r.fitted["gap"] = gap;
  Criterion a{"kurzweil_contrast", fractions[0] >= fractions[1] + gap,
              "hit fraction " + fmt(fractions[0]) + " vs contrast " + fmt(fractions[1]) + " (need gap " + fmt(gap) +
                  ")"};
  r.criteria = {a};
  return r;
}

SuiteResult dani(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  const QGrid qg = q_grid(cfg, "system");
  const double slope_max = cfg.number("system", "slope_max");
  const double floor = cfg.number("system", "floor");
  auto main_alpha = TargetMatrix::from_spec(cfg.get("alpha", "spec"));
  auto contrast = TargetMatrix::from_spec(cfg.get("system", "contrast_alpha"));
  auto pm = dani_profile(main_alpha, qg, budget);
  auto pc = dani_profile(contrast, qg, budget);
  r.table.header = {"alpha", "Q", "lambda1"};
  for (std::size_t k = 0; k < pm.Q.size(); ++k) {
    r.table.rows.push_back({cfg.get("alpha", "spec"), fmt(pm.Q[k]), fmt(pm.lambda1[k])});
  }
  for (std::size_t k = 0; k < pc.Q.size(); ++k) {
    r.table.rows.push_back({cfg.get("system", "contrast_alpha"), fmt(pc.Q[k]), fmt(pc.lambda1[k])});
  }
  double low = *std::min_element(pm.lambda1.begin(), pm.lambda1.end());
  r.seconds = seconds_since(t0);
  r.fitted["contrast_slope"] = pc.slope;
  r.fitted["slope_max"] = slope_max;
  r.fitted["main_min_lambda1"] = low;
  r.fitted["floor"] = floor;
  Criterion a{"dani", pc.slope <= slope_max && slope_max < 0 && low >= floor,
              "contrast slope " + fmt(pc.slope) + " (need <= " + fmt(slope_max) + "), main min lambda1 " + fmt(low) +
                  " (floor " + fmt(floor) + ")"};
  timed(a, cfg, r.seconds);
  r.criteria = {a};
  return r;
}

SuiteResult game_suite(const Config& cfg) {
  SuiteResult r;
  const auto t0 = Clock::now();
  const auto budget = budget_of(cfg);
  auto alpha = TargetMatrix::from_spec(cfg.get("alpha", "spec"));
  const double eps = epsilon_estimate(alpha, cfg.number("game", "eps_qmax"), budget);
  const long long games = cfg.integer("game", "games");
  const double qcheck = cfg.number("game", "qcheck");
  GameConfig base;
  base.epsilon = eps;
  base.rounds = static_cast<int>(cfg.integer("game", "rounds"));
  base.precision_bits = static_cast<int>(cfg.integer("game", "precision"));
  base.first_radius = cfg.number("game", "first_radius");
  const long long seed0 = cfg.integer("game", "seed");
  r.table.header = {"beta_param", "bob", "seed", "legal", "uniqueness_ok", "found_rounds",
                    "min_margin", "threshold", "pass", "vacuous"};
  std::size_t illegal = 0, violations = 0, failures = 0, vacuous = 0, played = 0;
  std::vector<std::string> betas = cfg.list("game", "betas");
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    Config one;
    one.set("x", "b", betas[bi], "");
    const double beta = one.number("x", "b");
    for (const std::string& bob : cfg.list("game", "bobs")) {
      BobKind kind = parse_bob(bob);
      for (long long g = 0; g < games; ++g) {
        GameConfig gc = base;
        gc.beta_param = beta;
        gc.seed = static_cast<std::uint64_t>(seed0 + g);
        ++played;
        try {
          GameTranscript t = play(alpha, gc, kind);
          Legality leg = check_transcript(t);
          Verification v = verify_outcome(alpha, t.outcome, qcheck, gc, budget);
          std::size_t found = 0;
          for (const auto& rd : t.rounds) found += rd.alice.found ? 1 : 0;
          illegal += leg.ok ? 0 : 1;
          failures += v.pass ? 0 : 1;
          vacuous += v.vacuous ? 1 : 0;
          r.table.rows.push_back({betas[bi], bob, std::to_string(gc.seed), yes(leg.ok), "1", std::to_string(found),
                                  fmt(v.min_margin), fmt(v.threshold), yes(v.pass), yes(v.vacuous)});
        } catch (const UniquenessViolation&) {
          ++violations;
          r.table.rows.push_back({betas[bi], bob, std::to_string(gc.seed), "0", "0", "0", "0", "0", "0", "0"});
        }
      }
    }
  }
  r.seconds = seconds_since(t0);
  r.fitted["epsilon"] = eps;
  Criterion a{"game", illegal == 0 && violations == 0 && failures == 0 && played > 0,
              std::to_string(played) + " games: " + std::to_string(illegal) + " illegal transcripts, " +
                  std::to_string(violations) + " uniqueness violations, " + std::to_string(failures) +
                  " failed verifications, " + std::to_string(vacuous) + " vacuous; epsilon = " + fmt(eps)};
  timed(a, cfg, r.seconds);
  r.criteria = {a};
  return r;
}

}  // namespace

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  return os.str();
}

bool SuiteResult::pass() const {
  return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"dirichlet", "minima",   "theorem1",   "theorem2", "theorem3",
                                                 "theorem5",  "kurzweil", "game-suite", "dani"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Config& cfg) {
  if (name == "dirichlet") return dirichlet(cfg);
  if (name == "minima") return minima(cfg);
  if (name == "theorem1") return theorem1(cfg);
  if (name == "theorem2") return theorem2(cfg);
  if (name == "theorem3") return theorem3(cfg);
  if (name == "theorem5") return theorem5(cfg);
  if (name == "kurzweil") return kurzweil(cfg);
  if (name == "game-suite") return game_suite(cfg);
  if (name == "dani") return dani(cfg);
  throw UsageError("unknown experiment: " + name);
}

}  // namespace twistlab::cli
