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

#include <cmath>

#include <doctest.h>

#include "support.hpp"
#include "twistlab/approx.hpp"
#include "twistlab/curve.hpp"
#include "twistlab/errors.hpp"

using namespace twistlab;
using twistlab::testing::Gen;

namespace {

const SystemShape k21 = SystemShape::make(2, 1);

ApproxFn constant(double c) { return ApproxFn::custom(k21, "const", [c](double) { return c; }, 0); }

ScaleConfig thm3(double eps, double Delta, double C1) {
  ScaleConfig c;
  c.mode = ScaleMode::Thm3;
  c.eps = eps;
  c.Delta = Delta;
  c.C1 = C1;
  return c;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("curve basics") {
  auto v2 = Curve::veronese(2);
  CHECK(v2.wronskian(0.3) == doctest::Approx(2));
  CHECK(Curve::veronese(3).wronskian(0.7) == doctest::Approx(12));
  CHECK(v2.value(0.5) == std::vector<double>{0.5, 0.25});
  CHECK(v2.derivative(0.5) == std::vector<double>{1.0, 1.0});
  CHECK(v2.C2() == doctest::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(Curve::parse("poly:t;2*t"), DegenerateInput);
  CHECK_THROWS_AS(Curve::veronese(2, {1, 1}), DomainError);
  auto p = Curve::parse("poly:t;t^2+1@0,2");
  CHECK(p.value(2) == std::vector<double>{2.0, 5.0});
}

TEST_CASE("scales") {
  ScaleConfig c1;
  c1.mode = ScaleMode::Thm1;
  c1.eps = 0.25;
  auto s1 = compute_scales(c1, ApproxFn::hardy_h(k21, 1), 256);
  CHECK(s1.theta == doctest::Approx(std::pow(2.0, -2.5)));
  CHECK(s1.Theta == doctest::Approx(std::pow(2.0, 1.5)));

  ScaleConfig c2;
  c2.mode = ScaleMode::Thm2;
  c2.C1 = 4;
  c2.delta = ApproxFn::power_law(SystemShape::make(1, 2), 1, 1);
  auto s2 = compute_scales(c2, ApproxFn::dirichlet(k21, 0.5), 256);
  CHECK(s2.Psi == doctest::Approx(0.5));
  CHECK(s2.eta == doctest::Approx(2));
  CHECK(s2.Delta == doctest::Approx(1));
  CHECK(s2.Theta == doctest::Approx(4));
  CHECK(s2.theta == doctest::Approx(0.25));

  auto s3 = compute_scales(thm3(0.1, 1, 4), ApproxFn::dirichlet(k21, 0.5), 1024);
  CHECK(s3.eta == doctest::Approx(2));
  CHECK(s3.Theta == doctest::Approx(4));
  CHECK(s3.theta == doctest::Approx(0.125));
  CHECK(s3.theta_above_dirichlet);
  CHECK(s3.Delta_at_most_one);
  CHECK_THROWS_AS(compute_scales(thm3(0.1, 1, 0), ApproxFn::dirichlet(k21, 0.5), 1024), DomainError);
}

TEST_CASE("S_Q membership and measure") {
  auto v2 = Curve::veronese(2);
  auto zero = TargetMatrix::zero(k21);
  ApproxFn d = ApproxFn::dirichlet(k21, 0.5);
  CHECK(sq_contains(v2, 0, zero, d, 4));
  CHECK_FALSE(sq_contains(v2, 0.5, zero, d, 4));
  CHECK_THROWS_AS(sq_contains(v2, 1.5, zero, d, 4), DomainError);
  CHECK(sq_contains(v2, 0.37, TargetMatrix::cubic_veronese(), ApproxFn::hardy_h(k21, 1), 1024));

  auto huge = sq_measure(v2, {0, 1}, zero, constant(10), 16, 1000);
  CHECK(huge.measure == doctest::Approx(1));
  CHECK(huge.hits == 1000);
  auto tiny = sq_measure(v2, {0, 1}, zero, constant(1e-9), 16, 1000);
  CHECK(tiny.measure <= 3 * tiny.resolution);
  CHECK(sq_set(v2, {0, 1}, zero, constant(1e-9), 16).measure() < 1e-8);
}

TEST_CASE("local set S~") {
  // alpha = 0 at s = 0: the condition reads |x theta| <= c psi(Q)
  auto v2 = Curve::veronese(2, {-1, 1});
  auto st = stilde(v2, 0, TargetMatrix::zero(k21), ApproxFn::dirichlet(k21, 0.5), 4, 0.2, 0.1);
  REQUIRE(st.size() == 1);
  CHECK(st.intervals()[0].lo == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(st.intervals()[0].hi == doctest::Approx(0.5).epsilon(1e-12));

  // 50-digit root isolation of every sublevel set
  const std::vector<Interval> expect = {
      {-0.97253345393049161, -0.96120773396679245}, {-0.92133973771004916, -0.91348028805437021},
      {-0.84801518546438367, -0.83900903626103725}, {-0.71510907113867046, -0.70572669092997143},
      {-0.59282167245485391, -0.58129712344192484}, {-0.54397837368899412, -0.53121926007491994},
      {-0.42062997757844062, -0.40785069001361031}, {-0.37058264583248083, -0.35897685962670542},
      {-0.31958240543240195, -0.3110559378939196},  {-0.24618935423757599, -0.23665318504974712},
      {-0.19292595254274965, -0.19099542461170878}, {-0.1127434038654217, -0.10391067576512237},
      {0.0094143106433183995, 0.020648575898000659}, {0.058153731485017712, 0.070830317189166039},
      {0.18143535944908087, 0.19426565539696601},   {0.23138428631761669, 0.24323789066129488},
      {0.28221585815165669, 0.29132748096011958},   {0.35566563203215936, 0.36567351111861534},
      {0.40804128822787589, 0.41221901705576351},   {0.4896590348229798, 0.49786856798457395},
      {0.61166807686169353, 0.62257649211772335},   {0.66029820184722506, 0.6728675292650565},
      {0.78351262172143954, 0.79637007556270515},   {0.83336634936890535, 0.84543751004810404},
      {0.88404758571199796, 0.89367743583787612},   {0.95754581581663405, 0.96797500977223846}};
  auto c = stilde(Curve::veronese(2), 0.3, TargetMatrix::cubic_veronese(), ApproxFn::dirichlet(k21, 0.1), 1024, 1.5,
                  0.625);
  REQUIRE(c.size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK(c.intervals()[k].lo == doctest::Approx(expect[k].lo).epsilon(1e-9));
    CHECK(c.intervals()[k].hi == doctest::Approx(expect[k].hi).epsilon(1e-9));
  }
  CHECK(c.measure() == doctest::Approx(0.26363524459728663).epsilon(1e-9));
}

TEST_CASE("good and bad points") {
  auto v2 = Curve::veronese(2);
  auto cubic = TargetMatrix::cubic_veronese();
  ApproxFn psi = ApproxFn::dirichlet(k21, 0.5);
  // 50-digit evaluation of the polar-lattice condition on s = 0.10, 0.15, ..., 0.90;
  // s = 0.15 and 0.25 are the endpoints of the closed bad interval [0.15, 0.25]
  const std::vector<int> expect = {1, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 1, 1};
  auto sc = compute_scales(thm3(0.1, 1, 0.5), psi, 1024);
  GoodBad gb(v2, cubic, sc);
  CHECK(gb.dual_points() == 12);
  for (std::size_t k = 0; k < expect.size(); ++k) {
    double s = 0.1 + 0.05 * static_cast<double>(k);
    CHECK_MESSAGE(gb.is_good(s) == (expect[k] == 1), "s = ", s);
  }
  auto all_bad = compute_scales(thm3(0.1, 1, 1), psi, 1024);
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK_FALSE(is_good(v2, 0.1 + 0.05 * static_cast<double>(k), cubic, all_bad));
  }
  // alpha = 0: the polar point (Q^{-1/2} e_2, 0) is orthogonal to f'(0)
  CHECK_FALSE(is_good(v2, 0, TargetMatrix::zero(k21), sc));
}

TEST_CASE("bad set measure") {
  auto v2 = Curve::veronese(2);
  ApproxFn psi = ApproxFn::dirichlet(k21, 0.5);
  auto none = bq_measure(v2, {0, 1}, TargetMatrix::cubic_veronese(), compute_scales(thm3(0.1, 1, 0.01), psi, 256),
                         1000);
  CHECK(none.measure == 0);
  CHECK(none.exact == 0);
  auto full = bq_measure(v2, {0, 1}, TargetMatrix::zero(k21), compute_scales(thm3(0.1, 1, 4), psi, 4), 1000);
  CHECK(full.measure == doctest::Approx(1));
  CHECK(full.exact == doctest::Approx(1));
}

TEST_CASE("sandwich") {
  auto v2 = Curve::veronese(2, {-1, 1});
  ApproxFn psi = ApproxFn::dirichlet(k21, 0.5);
  auto r = sandwich_check(v2, 0, TargetMatrix::zero(k21), psi, 1024, 0.01, 500);
  CHECK(r.violations == 0);
  CHECK(r.checked + r.skipped == 500);

  auto cubic = TargetMatrix::cubic_veronese();
  ApproxFn h = ApproxFn::hardy_h(k21, 1);
  double Q = 4096;
  double theta = std::sqrt(h(Q)) / std::log(Q);
  auto c = sandwich_check(Curve::veronese(2), 0.4, cubic, h, Q, theta, 400);
  CHECK(c.violations == c.lower_violations + c.upper_violations);
  CHECK(c.checked + c.skipped == 400);
}

TEST_CASE("S' construction") {
  ApproxFn psi = ApproxFn::dirichlet(k21, 0.5);
  // every point bad: no anchors
  auto bad = compute_scales(thm3(0.1, 1, 1), psi, 1024);
  auto e = sprime_build(Curve::veronese(2), TargetMatrix::cubic_veronese(), psi, bad);
  CHECK(e.anchors.empty());
  CHECK(e.set.empty());

  // A host of (nearly) one point and no polar points: one anchor at 1/2 with
  // E = [1/2 - psi/2, 1/2 + psi/2] dilated by 2 C2 psi.
  auto sc = compute_scales(thm3(0.1, 1, 0.01), psi, 256);
  double th = sc.theta;
  Curve c({Poly({-0.5, 1}), Poly({0.25, -1, 1})}, {0.5 - th, 0.5 + th + 1e-9});
  auto one = sprime_build(c, TargetMatrix::zero(k21), psi, sc);
  REQUIRE(one.anchors.size() == 1);
  CHECK(one.anchors[0] == doctest::Approx(0.5));
  REQUIRE(one.set.size() == 1);
  CHECK(one.set.measure() == doctest::Approx(sc.psi + 4 * c.C2() * sc.psi).epsilon(1e-7));
}

TEST_CASE("S' under thm2 scales") {
  auto v2 = Curve::veronese(2);
  auto cubic = TargetMatrix::cubic_veronese();
  ApproxFn h = ApproxFn::hardy_h(k21, 1);
  ScaleConfig cfg = ScaleConfig::parse("thm2:beta=5,C1=0.01");
  auto sc = compute_scales(cfg, h, 4096);
  auto sp = sprime_build(v2, cubic, h, sc);
  REQUIRE(!sp.anchors.empty());
  GoodBad gb(v2, cubic, sc);
  std::vector<Interval> parts;
  for (std::size_t k = 0; k < sp.anchors.size(); ++k) {
    double a = sp.anchors[k];
    CHECK(a >= sc.theta);
    CHECK(a <= 1 - sc.theta);
    CHECK(gb.is_good(a));
    if (k > 0) CHECK(a - sp.anchors[k - 1] >= 3 * sc.theta * (1 - 1e-12));
    IntervalSet local = stilde(v2, a, cubic, h, 4096, 0.5, sc.theta);
    for (const Interval& iv : local.intervals()) {
      parts.push_back({a + sc.theta * iv.lo, a + sc.theta * iv.hi});
    }
  }
  // maximality: no good point of the host is 3 theta away from every anchor
  for (int k = 0; k <= 2000; ++k) {
    double s = sc.theta + (1 - 2 * sc.theta) * k / 2000.0;
    if (!gb.is_good(s)) continue;
    double nearest = INFINITY;
    for (double a : sp.anchors) nearest = std::min(nearest, std::abs(s - a));
    CHECK(nearest < 3 * sc.theta * (1 + 1e-9));
  }
  IntervalSet rebuilt = IntervalSet(parts).dilate(2 * v2.C2() * sc.psi);
  CHECK(rebuilt.size() == sp.set.size());
  CHECK(rebuilt.measure() == doctest::Approx(sp.set.measure()).epsilon(1e-12));
  CHECK(sp.set.min_length() >= 4 * v2.C2() * sc.psi * (1 - 1e-12));
}

TEST_CASE("component statistics") {
  IntervalSet S({{0, 0.1}, {0.3, 0.35}});
  ApproxFn psi = constant(0.02);
  ApproxFn phi = constant(1);
  auto r = component_stats(S, psi, phi, 100, 1, 0.1);
  CHECK(r.components == 2);
  CHECK(r.size_lo == doctest::Approx(0.08));
  CHECK(r.size_hi == doctest::Approx(0.12));
  CHECK_FALSE(r.size_pass);
  CHECK(r.min_gap == doctest::Approx(0.2));
  CHECK(r.gap_ratio == doctest::Approx(0.2));
  CHECK(r.separation_pass);
  CHECK_FALSE(component_stats(S, psi, phi, 100, 1, 0.3).separation_pass);
  CHECK(component_stats(IntervalSet({{0, 0.1}}), psi, phi, 100, 1, 0.3).size_pass);
  auto empty = component_stats(IntervalSet(), psi, phi, 100, 1, 0.3);
  CHECK(empty.components == 0);
  CHECK((empty.size_pass && empty.separation_pass));
  // two components of length 5 C2 psi with gap 2 phi, C2 = 2
  auto two = component_stats(IntervalSet({{0, 0.2}, {2.2, 2.4}}), psi, phi, 100, 2, 1);
  CHECK(two.size_pass);
  CHECK(two.separation_pass);
}

TEST_CASE("overlap sums") {
  IntervalSet A({{0, 0.5}});
  auto same = overlap_sums({A, A}, {0, 1});
  CHECK(same.c_hat == doctest::Approx(1));
  CHECK(same.pairwise == doctest::Approx(0.5));
  CHECK(same.C_hat == doctest::Approx(0.5));
  CHECK(same.gdbc_bound == doctest::Approx(0.5));
  // N identical sets of measure mu: C_hat = (N - 1) / (2 N mu)
  IntervalSet B({{0.25, 0.5}});
  auto four = overlap_sums({B, B, B, B}, {0, 1});
  CHECK(four.c_hat == doctest::Approx(1));
  CHECK(four.C_hat == doctest::Approx(3.0 / (8 * 0.25)));
  auto apart = overlap_sums({A, IntervalSet({{0.5, 1}})}, {0, 1});
  CHECK(apart.c_hat == doctest::Approx(1));
  CHECK(apart.pairwise == 0);
  CHECK(apart.gdbc_bound == doctest::Approx(1));
}

TEST_CASE("sublevel sets") {
  auto v2 = Curve::veronese(2);
  auto r = sublevel_measure(v2, {0, 1}, 0.1, {0, 1}, 1);
  CHECK(r.measure == doctest::Approx(0.05));
  CHECK(r.bound == doctest::Approx(0.1));
  CHECK(r.pass);
  CHECK(sublevel_measure(v2, {1, 0}, 0.5, {0, 1}, 1).measure == 0);
  CHECK_FALSE(sublevel_measure(v2, {0, 1}, 0.1, {0, 1}, 0.4).pass);
  CHECK_THROWS_AS(sublevel_measure(v2, {0, 0}, 0.1, {0, 1}, 1), ZeroVector);
  CHECK_THROWS_AS(sublevel_measure(v2, {1}, 0.1, {0, 1}, 1), ShapeMismatch);
}

TEST_CASE("property: S~ against direct search") {
  Gen g(41);
  auto v2 = Curve::veronese(2);
  ApproxFn h = ApproxFn::hardy_h(k21, 1);
  for (int t = 0; t < 100; ++t) {
    auto a = t % 4 == 0 ? TargetMatrix::cubic_veronese() : TargetMatrix::random_uniform(k21, g.next() % 100000);
    double s = g.uniform(0, 1), Q = std::ldexp(1.0, static_cast<int>(g.integer(3, 7)));
    double c = g.uniform(0.5, 1.5), theta = g.uniform(0.01, 0.5);
    auto set = stilde(v2, s, a, h, Q, c, theta);
    auto f = v2.value(s), df = v2.derivative(s);
    for (int k = 0; k < 50; ++k) {
      double x = -1 + (k + 0.5) / 25.0;
      if (set.endpoint_distance(x) < 1e-9) continue;
      std::vector<double> y = {f[0] + x * theta * df[0], f[1] + x * theta * df[1]};
      bool direct = best_twisted(a, y, Q, false).dist <= c * h(Q);
      CHECK(direct == set.contains(x));
    }
  }
}

TEST_CASE("property: S_Q grid against exact set") {
  Gen g(42);
  auto v2 = Curve::veronese(2);
  for (int t = 0; t < 15; ++t) {
    auto a = TargetMatrix::random_uniform(k21, g.next() % 100000);
    ApproxFn psi = ApproxFn::dirichlet(k21, g.uniform(0.1, 1));
    double Q = std::ldexp(1.0, static_cast<int>(g.integer(2, 8)));
    Interval I{0.1, 0.9};
    const std::size_t N = 2000;
    auto grid = sq_grid(v2, I, a, psi, Q, N);
    auto exact = sq_set(v2, I, a, psi, Q);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < N; ++k) {
      double s = I.lo + (static_cast<double>(k) + 0.5) * I.length() / N;
      hits += grid[k];
      if (exact.endpoint_distance(s) < 1e-9) continue;
      CHECK(grid[k] == exact.contains(s));
    }
    CHECK(std::abs(static_cast<double>(hits) * I.length() / N - exact.measure()) <=
          2.0 * static_cast<double>(exact.size() + 1) * I.length() / N);
    double s0 = g.uniform(0.1, 0.9);
    if (exact.endpoint_distance(s0) > 1e-9) CHECK(sq_contains(v2, s0, a, psi, Q) == exact.contains(s0));
  }
}

TEST_CASE("property: pointwise goodness against the bad set") {
  Gen g(43);
  auto v2 = Curve::veronese(2);
  ApproxFn psi = ApproxFn::dirichlet(k21, 0.5);
  for (int t = 0; t < 20; ++t) {
    auto a = TargetMatrix::random_uniform(k21, g.next() % 100000);
    auto sc = compute_scales(thm3(0.1, 1, g.uniform(0.2, 2)), psi, std::ldexp(1.0, static_cast<int>(g.integer(4, 10))));
    GoodBad gb(v2, a, sc);
    for (int k = 0; k < 100; ++k) {
      double s = g.uniform(0, 1);
      if (gb.bad_set().endpoint_distance(s) < 1e-9) continue;
      CHECK(gb.is_good(s) == !gb.bad_set().contains(s));
      CHECK(is_good(v2, s, a, sc) == gb.is_good(s));
    }
  }
}

}  // TEST_SUITE
