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

#include "twistlab/game.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "kernels.hpp"
#include "twistlab/approx.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/reduction.hpp"

namespace twistlab {
namespace {

Real norm(const RealVec& v) {
  Real s = 0;
  for (const Real& x : v) s += x * x;
  return sqrt(s);
}

RealVec minus(const RealVec& a, const RealVec& b) {
  RealVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

// alpha q + p.
RealVec apply(const TargetMatrix& alpha, const IntegerPair& pr) {
  RealVec v(alpha.m());
  for (int i = 0; i < alpha.m(); ++i) {
    v[i] = pr.p[i];
    for (int j = 0; j < alpha.n(); ++j) v[i] += alpha(i, j) * pr.q[j];
  }
  return v;
}

std::string describe(const IntegerPair& pr) {
  std::ostringstream os;
  os << "p=(";
  for (std::size_t i = 0; i < pr.p.size(); ++i) os << (i ? "," : "") << to_string(pr.p[i], 0);
  os << ") q=(";
  for (std::size_t i = 0; i < pr.q.size(); ++i) os << (i ? "," : "") << to_string(pr.q[i], 0);
  os << ")";
  return os.str();
}

Real guard_radius(int bits) { return ldexp(Real(1), 32 - bits); }

// A few ulps of a coordinate of size |c|.
Real slack(int bits, const RealVec& c) { return ldexp(Real(1), 8 - bits) * (1 + norm(c)); }

}  // namespace

void GameConfig::validate() const {
  if (!(beta_param > 0 && beta_param < 1)) throw DomainError("beta_param must lie in (0, 1)");
  if (beta_param > 1.0 / 3.0 + 1e-15) throw DomainError("beta_param must be at most 1/3 so that Bob always has a move");
  if (!(epsilon > 0)) throw DomainError("epsilon must be positive; no valid epsilon for this alpha");
  if (!(epsilon < 1)) throw DomainError("epsilon must be below 1");
  if (rounds < 0) throw DomainError("rounds must be nonnegative");
  if (precision_bits < 64) throw DomainError("precision_bits must be at least 64");
  if (!(first_radius > 0)) throw DomainError("first_radius must be positive");
  if (rounds * std::log2(beta_param) < 32.0 - precision_bits) {
    throw PrecisionExhausted("beta_param^rounds is below 2^(32 - precision_bits); raise precision_bits");
  }
}

std::vector<IntegerPair> translates_near(const TargetMatrix& alpha, const RealVec& x, const Real& Qmax,
                                         const Real& r, std::uint64_t budget) {
  const int m = alpha.m(), n = alpha.n(), d = m + n;
  if (static_cast<int>(x.size()) != m) throw ShapeMismatch("x must have m entries");
  if (!(r > 0) || !(Qmax > 0)) throw DomainError("radius and Qmax must be positive");
  const Real s = r / Qmax;
  reduction::Mat<Real> b(d, RealVec(d, Real(0))), u(d, RealVec(d, Real(0)));
  for (int j = 0; j < m; ++j) b[j][j] = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) b[m + i][j] = alpha(j, i);
    b[m + i][m + i] = s;
  }
  for (int k = 0; k < d; ++k) u[k][k] = 1;
  reduction::lll(b, u);
  RealVec target(d, Real(0));
  for (int j = 0; j < m; ++j) target[j] = -x[j];
  Real r2 = 2 * r * r;
  std::vector<IntegerPair> out;
  auto visit = [&](const RealVec& c, const Real&) {
    IntegerPair pr;
    pr.p.assign(m, Real(0));
    pr.q.assign(n, Real(0));
    for (int k = 0; k < d; ++k) {
      if (c[k] == 0) continue;
      for (int j = 0; j < m; ++j) pr.p[j] += c[k] * u[k][j];
      for (int i = 0; i < n; ++i) pr.q[i] += c[k] * u[k][m + i];
    }
    if (norm(pr.q) > Qmax) return;
    RealVec v = apply(alpha, pr);
    for (int j = 0; j < m; ++j) v[j] += x[j];
    if (norm(v) <= r) out.push_back(std::move(pr));
  };
  std::size_t nodes = reduction::fincke_pohst(b, target, r2, visit, budget);
  if (nodes > budget) throw BudgetExceeded(nodes, budget);
  return out;
}

std::optional<IntegerPair> unique_pair(const TargetMatrix& alpha, const RealVec& x, const Real& Q, double eps,
                                       std::uint64_t budget) {
  if (!(Q > 0)) throw DomainError("Q must be positive");
  const double nm = static_cast<double>(alpha.n()) / alpha.m();
  Real r = Real(eps) / 2 * pow(Q, Real(-nm));
  auto found = translates_near(alpha, x, Q / 2, r, budget);
  if (found.empty()) return std::nullopt;
  if (found.size() > 1) {
    throw UniquenessViolation("two pairs within the uniqueness radius at Q=" + to_string(Q, 6) + ": " +
                              describe(found[0]) + " and " + describe(found[1]));
  }
  return found.front();
}

AliceMove alice_move(const TargetMatrix& alpha, const Ball& B, const GameConfig& config) {
  const int m = alpha.m(), n = alpha.n();
  if (static_cast<int>(B.center.size()) != m) throw ShapeMismatch("ball centre must have m entries");
  if (!(B.radius > 0)) throw DomainError("ball radius must be positive");
  if (B.radius < guard_radius(config.precision_bits)) throw PrecisionExhausted("ball radius below precision guard");
  AliceMove mv;
  const Real rho = B.radius;
  mv.record.Q = pow(Real(config.epsilon) / (4 * rho), Real(static_cast<double>(m) / n));
  auto pr = unique_pair(alpha, B.center, mv.record.Q, config.epsilon);
  mv.record.found = pr.has_value();
  if (pr) {
    mv.record.pair = *pr;
    mv.record.y = apply(alpha, *pr);
    for (Real& v : mv.record.y) v = -v;
  } else {
    mv.record.pair.p.assign(m, Real(0));
    mv.record.pair.q.assign(n, Real(0));
    mv.record.y.assign(m, Real(0));
  }
  mv.A.center = mv.record.y;
  mv.A.radius = Real(config.beta_param) * rho;
  return mv;
}

BobKind parse_bob(const std::string& name) {
  if (name == "random") return BobKind::Random;
  if (name == "greedy") return BobKind::Greedy;
  throw UsageError("unknown Bob strategy: " + name);
}

const char* to_string(BobKind kind) { return kind == BobKind::Random ? "random" : "greedy"; }

Bob::Bob(BobKind kind, std::uint64_t seed) : kind_(kind), state_(seed) {}

double Bob::uniform() {
  // splitmix64; fixed across platforms unlike the standard distributions.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

double Bob::normal() {
  double u1 = uniform(), u2 = uniform();
  if (u1 <= 0) u1 = 0x1.0p-53;
  return std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
}

RealVec Bob::random_direction(int m) {
  while (true) {
    RealVec v(m);
    for (Real& x : v) x = normal();
    Real nv = norm(v);
    if (nv > 0) {
      for (Real& x : v) x /= nv;
      return v;
    }
  }
}

Ball Bob::opening(int m, const GameConfig& config) {
  Ball b;
  b.center.resize(m);
  for (Real& x : b.center) x = uniform();
  b.radius = config.first_radius;
  return b;
}

Ball Bob::respond(const TargetMatrix& alpha, const Ball& B, const Ball& A, const GameConfig& config) {
  const int m = static_cast<int>(B.center.size());
  const Real rho = B.radius;
  const Real next = Real(config.beta_param) * rho;
  const Real pad = 4 * slack(config.precision_bits, B.center);
  const Real reach = rho - next - pad;
  const Real clearance = next + A.radius + pad;
  auto legal = [&](const RealVec& c) {
    return norm(minus(c, B.center)) <= reach && norm(minus(c, A.center)) >= clearance;
  };
  auto at = [&](const RealVec& dir, const Real& t) {
    RealVec c = B.center;
    for (int i = 0; i < m; ++i) c[i] += t * dir[i];
    return c;
  };
  // Farthest point of the reachable ball from A's centre; always legal when
  // beta_param <= 1/3.
  auto farthest = [&]() {
    RealVec dir = minus(B.center, A.center);
    Real nd = norm(dir);
    if (nd > 0) {
      for (Real& x : dir) x /= nd;
    } else {
      dir = random_direction(m);
    }
    // No padding here: at beta_param = 1/3 with A concentric this point is
    // exactly on the boundary and only rounding separates it from legality.
    RealVec c = at(dir, rho - next);
    if (norm(minus(c, A.center)) < next + A.radius - pad) throw NoLegalMove("no legal ball inside B minus A");
    return c;
  };

  if (kind_ == BobKind::Greedy) {
    const double mn = static_cast<double>(m) / alpha.n();
    Real Qg = 8 * pow(Real(config.epsilon) / (4 * rho), Real(mn));
    auto near = translates_near(alpha, B.center, Qg, rho);
    const RealVec* best = nullptr;
    std::vector<RealVec> points;
    for (const IntegerPair& pr : near) {
      RealVec z = apply(alpha, pr);
      for (Real& v : z) v = -v;
      if (norm(minus(z, A.center)) < A.radius) continue;  // already deleted
      points.push_back(std::move(z));
    }
    Real best_d = 0;
    for (const RealVec& z : points) {
      Real dz = norm(minus(z, B.center));
      if (!best || dz < best_d) {
        best = &z;
        best_d = dz;
      }
    }
    if (best) {
      RealVec dir = minus(*best, B.center);
      Real t = best_d < reach ? best_d : reach;
      RealVec c = B.center;
      if (best_d > 0) {
        for (Real& v : dir) v /= best_d;
        c = at(dir, t);
      }
      if (legal(c)) return {c, next};
      RealVec pick = farthest();
      Real pick_d = norm(minus(pick, *best));
      for (int k = 0; k < 32; ++k) {
        RealVec cand = at(random_direction(m), reach);
        if (!legal(cand)) continue;
        Real dd = norm(minus(cand, *best));
        if (dd < pick_d) {
          pick = cand;
          pick_d = dd;
        }
      }
      return {pick, next};
    }
  }
  for (int k = 0; k < 64; ++k) {
    RealVec dir = random_direction(m);
    Real t = reach * Real(std::pow(uniform(), 1.0 / m));
    RealVec c = at(dir, t);
    if (legal(c)) return {c, next};
  }
  return {farthest(), next};
}

GameTranscript play(const TargetMatrix& alpha, const GameConfig& config, BobKind bob_kind) {
  config.validate();
  PrecisionScope scope(config.precision_bits);
  if (alpha.precision_bits() < config.precision_bits && !alpha.common_denominator()) {
    throw PrecisionExhausted("alpha carries fewer bits than the game precision");
  }
  GameTranscript t;
  t.config = config;
  t.bob = bob_kind;
  Bob bob(bob_kind, config.seed);
  Ball B = bob.opening(alpha.m(), config);
  for (int k = 0; k < config.rounds; ++k) {
    AliceMove mv = alice_move(alpha, B, config);
    Ball next = bob.respond(alpha, B, mv.A, config);
    t.rounds.push_back({B, mv.A, mv.record});
    B = std::move(next);
  }
  t.final_ball = B;
  t.outcome = B.center;
  return t;
}

Legality check_transcript(const GameTranscript& t) {
  PrecisionScope scope(t.config.precision_bits);
  const int bits = t.config.precision_bits;
  const Real beta = t.config.beta_param;
  Legality out;
  for (std::size_t k = 0; k < t.rounds.size(); ++k) {
    const Ball& B = t.rounds[k].B;
    const Ball& A = t.rounds[k].A;
    const Ball& N = k + 1 < t.rounds.size() ? t.rounds[k + 1].B : t.final_ball;
    auto fail = [&](const std::string& why) {
      out.ok = false;
      out.round = static_cast<int>(k) + 1;
      out.reason = why;
    };
    const Real tol = slack(bits, B.center);
    const Real rtol = ldexp(Real(1), 8 - bits);
    if (A.radius > beta * B.radius * (1 + rtol)) fail("deleted ball larger than beta rho(B)");
    else if (N.radius < beta * B.radius * (1 - rtol)) fail("next ball smaller than beta rho(B)");
    else if (norm(minus(N.center, B.center)) + N.radius > B.radius + tol) fail("next ball leaves B");
    else if (norm(minus(N.center, A.center)) < N.radius + A.radius - tol) fail("next ball meets A");
    if (!out.ok) return out;
  }
  return out;
}

Verification verify_outcome(const TargetMatrix& alpha, const RealVec& x, double Qcheck, const GameConfig& config,
                            std::uint64_t budget) {
  const int m = alpha.m(), n = alpha.n();
  if (static_cast<int>(x.size()) != m) throw ShapeMismatch("x must have m entries");
  const double nm = static_cast<double>(n) / m;
  const double beta = config.beta_param;
  Verification v;
  const double Q1 = std::pow(config.epsilon / (4 * config.first_radius), 1 / nm);
  v.q_low = Q1 / 2;
  const double rho_final = config.first_radius * std::pow(beta, config.rounds);
  v.threshold = 0.25 * config.epsilon * beta * beta * std::pow(2.0, -nm) - 2 * rho_final * std::pow(Qcheck, nm);
  v.min_margin = std::numeric_limits<double>::infinity();
  if (v.q_low > Qcheck) {
    v.vacuous = true;
    v.pass = true;
    return v;
  }
  charge_budget(std::pow(2 * std::floor(Qcheck) + 1, n), budget);
  detail::SplitMatrix split(alpha);
  std::vector<double> xh(m), xl(m);
  {
    PrecisionScope scope(std::max(config.precision_bits, alpha.precision_bits()));
    for (int i = 0; i < m; ++i) {
      Real f = x[i] - floor(x[i]);
      xh[i] = f.convert_to<double>();
      xl[i] = Real(f - xh[i]).convert_to<double>();
    }
  }
  const double qlo2 = v.q_low * v.q_low;
  detail::for_each_in_ball(n, Qcheck * Qcheck, [&](const std::vector<std::int64_t>& q) {
    double q2 = 0;
    for (auto c : q) q2 += static_cast<double>(c) * static_cast<double>(c);
    if (q2 == 0 || q2 < qlo2) return;
    double d2 = 0;
    for (int i = 0; i < m; ++i) {
      detail::Reduced r = split.row(i, q.data());
      double f = r.f + xh[i];
      f -= std::nearbyint(f);
      f += xl[i];
      f -= std::nearbyint(f);
      d2 += f * f;
    }
    double margin = std::pow(q2, nm / 2) * std::sqrt(d2);
    if (margin < v.min_margin) {
      v.min_margin = margin;
      v.q_at_min = q;
    }
  });
  v.pass = v.min_margin >= v.threshold;
  return v;
}

double epsilon_estimate(const TargetMatrix& alpha, double Qmax, std::uint64_t budget) {
  if (alpha.is_zero() || alpha.common_denominator()) return 0;
  return 0.99 * bad_margin(alpha, std::nullopt, Qmax, budget).margin;
}

}  // namespace twistlab
