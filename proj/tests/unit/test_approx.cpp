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
#include <cmath>
#include <map>

#include <doctest.h>

#include "support.hpp"
#include "twistlab/approx.hpp"
#include "twistlab/errors.hpp"

using namespace twistlab;
using twistlab::testing::Gen;

namespace {

const SystemShape k21 = SystemShape::make(2, 1);

// Direct long-double scan of the integer box, no shared kernels.
Approximation brute_best(const TargetMatrix& a, const std::vector<double>& beta, double Qmax, bool exclude_zero) {
  const int m = a.m(), n = a.n();
  const auto R = static_cast<std::int64_t>(std::floor(Qmax));
  Approximation best;
  best.dist = INFINITY;
  IntVec q(n, -R);
  while (true) {
    long double qn2 = 0;
    for (auto v : q) qn2 += static_cast<long double>(v) * v;
    bool zero = std::all_of(q.begin(), q.end(), [](auto v) { return v == 0; });
    if (qn2 <= static_cast<long double>(Qmax) * Qmax && !(zero && exclude_zero)) {
      long double d2 = 0;
      IntVec p(m);
      for (int i = 0; i < m; ++i) {
        long double x = beta.empty() ? 0 : beta[i];
        for (int j = 0; j < n; ++j) x += static_cast<long double>(a.entry_double(i, j)) * q[j];
        long double r = std::nearbyint(x);
        p[i] = -static_cast<std::int64_t>(r);
        d2 += (x - r) * (x - r);
      }
      double d = static_cast<double>(std::sqrt(d2));
      if (d < best.dist - 1e-12) best = {d, p, q};
    }
    int k = n - 1;
    while (k >= 0 && q[k] == R) q[k--] = -R;
    if (k < 0) break;
    ++q[k];
  }
  return best;
}

double qnorm(const IntVec& q) {
  double s = 0;
  for (auto v : q) s += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("best twisted approximation") {
  auto r = TargetMatrix::rational(k21, {{1, 2}, {1, 3}});
  auto a = best_twisted(r, {}, 6, true);
  CHECK(a.dist == 0);
  CHECK(a.q == IntVec{6});
  CHECK(a.p == IntVec{-3, -2});

  auto z = best_twisted(TargetMatrix::zero(k21), {0.5, 0.5}, 5, true);
  CHECK(z.dist == doctest::Approx(std::sqrt(0.5)));
  CHECK(z.q == IntVec{1});
  CHECK(z.p == IntVec{-1, -1});

  // exhaustive scan over |q| <= 10^4 at 50 digits
  auto c = best_twisted(TargetMatrix::cubic_veronese(), {0.3, 0.7}, 1e4, false);
  CHECK(c.dist == doctest::Approx(0.0030407769084195051).epsilon(1e-12));
  CHECK(c.q == IntVec{-7626});
  CHECK(c.p == IntVec{10102, 13382});
  CHECK_THROWS_AS(best_twisted(TargetMatrix::cubic_veronese(), {0.3}, 10, false), ShapeMismatch);
}

TEST_CASE("solutions") {
  ApproxFn pw = ApproxFn::power_law(k21, 0.5, 0.5);
  auto all = solutions(TargetMatrix::zero(k21), {}, pw, 7);
  CHECK(all.size() == 14);
  for (const auto& s : all) {
    CHECK(s.p == IntVec{0, 0});
    CHECK(s.dist == 0);
  }
  CHECK(solutions(TargetMatrix::zero(k21), {0.5, 0.5}, ApproxFn::dirichlet(k21, 0.4), 100).empty());

  // exhaustive scan over |q| <= 10^4 at 50 digits, psi = h_1
  std::map<std::int64_t, std::pair<IntVec, double>> expect = {
      {3, {{-4, -6}, 0.276425704603}},       {-3, {{4, 5}, 0.543801549365}},
      {-4, {{5, 6}, 0.319512656729}},        {-5, {{6, 8}, 0.332030079318}},
      {-10, {{13, 17}, 0.160182693764}},     {11, {{-15, -20}, 0.128154582506}},
      {-13, {{17, 22}, 0.138022383183}},     {27, {{-36, -48}, 0.105901441793}},
      {-38, {{50, 66}, 0.0419248006782}},    {113, {{-150, -199}, 0.00697079420269}},
      {-352, {{466, 617}, 0.0169538547084}}, {-1784, {{2363, 3130}, 0.00361914718362}},
      {-7626, {{10102, 13382}, 0.00304077690842}}};
  auto got = solutions(TargetMatrix::cubic_veronese(), {0.3, 0.7}, ApproxFn::hardy_h(k21, 1), 1e4);
  REQUIRE(got.size() == expect.size());
  for (const auto& s : got) {
    auto it = expect.find(s.q[0]);
    REQUIRE(it != expect.end());
    CHECK(s.p == it->second.first);
    CHECK(s.dist == doctest::Approx(it->second.second).epsilon(1e-10));
  }
  CHECK(std::is_sorted(got.begin(), got.end(),
                       [](const Approximation& x, const Approximation& y) { return qnorm(x.q) < qnorm(y.q); }));
}

TEST_CASE("membership in A_psi_Q") {
  ApproxFn h = ApproxFn::hardy_h(k21, 1);
  CHECK(in_A_psi_Q(TargetMatrix::cubic_veronese(), {0, 0}, h, 100));
  CHECK_FALSE(in_A_psi_Q(TargetMatrix::zero(k21), {0.5, 0.5}, ApproxFn::dirichlet(k21, 1), 4));
  CHECK(in_A_psi_Q(TargetMatrix::cubic_veronese(), {0.3, 0.7}, h, 1024));
}

TEST_CASE("omega estimate") {
  auto rat = TargetMatrix::from_spec("rational");
  CHECK_THROWS_AS(omega_estimate(rat, 100), DegenerateInput);
  auto w = omega_estimate(rat, 100, true);
  CHECK(w.infinite);
  CHECK(std::isinf(w.omega_hat));
  // Same estimator in 50-digit arithmetic. The limit value is 1/2; the
  // finite-range estimate sits above it.
  auto c = omega_estimate(TargetMatrix::cubic_veronese(), 1e5);
  CHECK(c.omega_hat == doctest::Approx(0.64416466028296927).epsilon(1e-10));
  CHECK(c.trace.size() == 14);
  CHECK(std::abs(c.omega_hat - 0.5) < 0.15);
}

TEST_CASE("bad margin") {
  auto rat = TargetMatrix::from_spec("rational");
  CHECK(bad_margin(rat, std::nullopt, 15).margin == 0);
  CHECK(bad_margin(rat, std::nullopt, 14).margin > 0);
  CHECK(bad_margin(TargetMatrix::zero(k21), std::vector<double>{0.5, 0.5}, 1000).margin ==
        doctest::Approx(std::sqrt(0.5)));
  auto c = bad_margin(TargetMatrix::cubic_veronese(), std::nullopt, 1e5);
  CHECK(c.margin == doctest::Approx(0.39041123826948251).epsilon(1e-10));
  CHECK(std::abs(c.q[0]) == 73396);
}

TEST_CASE("singularity profile") {
  auto rat = singularity_profile(TargetMatrix::from_spec("rational"), QGrid::make(1, 12));
  CHECK(rat.classification == Singularity::VerySingularEvidence);
  for (std::size_t k = 0; k < rat.Q.size(); ++k) {
    if (rat.Q[k] >= 15) CHECK(rat.eps[k] == 0);
  }
  auto cubic = singularity_profile(TargetMatrix::cubic_veronese(), QGrid::make(1, 16));
  CHECK(cubic.classification == Singularity::NonsingularEvidence);
  CHECK(cubic.liminf > 0.3);
  auto liou = singularity_profile(TargetMatrix::liouville_column(), QGrid::make(1, 16));
  CHECK(liou.classification == Singularity::VerySingularEvidence);
  CHECK(liou.slope < 0);
}

TEST_CASE("transpose check") {
  SystemShape k12 = SystemShape::make(1, 2);
  auto z = transpose_not_delta_check(TargetMatrix::zero(k21), ApproxFn::power_law(k12, 1, 1), 10);
  REQUIRE(z.has_value());
  CHECK(qnorm(z->p) == 1);
  CHECK(z->dist == 0);
  auto big = transpose_not_delta_check(TargetMatrix::cubic_veronese(), ApproxFn::custom(k12, "one", [](double) { return 1.0; }, 0), 50);
  REQUIRE(big.has_value());
  CHECK(qnorm(big->p) == 1);
  // The cubic transpose has exponent 2; a cubic decay with a small constant
  // admits no witness.
  CHECK_FALSE(transpose_not_delta_check(TargetMatrix::cubic_veronese(), ApproxFn::power_law(k12, 0.01, 3), 300)
                  .has_value());
}

TEST_CASE("property: Dirichlet floor") {
  Gen g(31);
  for (SystemShape sh : {k21, SystemShape::make(3, 1), SystemShape::make(2, 2), SystemShape::make(1, 2)}) {
    for (int t = 0; t < 10; ++t) {
      auto a = TargetMatrix::random_uniform(sh, g.next() % 100000);
      std::vector<double> radii;
      for (int k = 0; k <= 9; ++k) radii.push_back(std::ldexp(1.0, k));
      auto best = best_twisted_profile(a, {}, radii, true);
      for (std::size_t k = 0; k < radii.size(); ++k) {
        CHECK(best[k].dist <= std::sqrt(static_cast<double>(sh.m)) * std::pow(radii[k], -sh.ratio()));
      }
    }
  }
}

TEST_CASE("property: sup-norm Dirichlet by direct search") {
  Gen g(32);
  for (int t = 0; t < 20; ++t) {
    auto a = TargetMatrix::random_uniform(k21, g.next() % 100000);
    for (std::int64_t Q : {4, 16, 64}) {
      bool ok = false;
      for (std::int64_t q = 1; q <= Q && !ok; ++q) {
        double worst = 0;
        for (int i = 0; i < 2; ++i) worst = std::max(worst, frac_dist(a.entry_double(i, 0) * q));
        ok = worst <= std::pow(static_cast<double>(Q), -0.5);
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("property: scan against brute force") {
  Gen g(33);
  for (int t = 0; t < 40; ++t) {
    SystemShape sh = t % 2 ? k21 : SystemShape::make(2, 2);
    auto a = TargetMatrix::random_uniform(sh, g.next() % 100000);
    std::vector<double> beta = {g.uniform(), g.uniform()};
    double Q = g.uniform(1, sh.n == 1 ? 500 : 40);
    auto fast = best_twisted(a, beta, Q, false);
    auto slow = brute_best(a, beta, Q, false);
    CHECK(fast.dist == doctest::Approx(slow.dist).epsilon(1e-12));
    auto h1 = best_twisted(a, {}, Q, true);
    auto h2 = brute_best(a, {}, Q, true);
    CHECK(h1.dist == doctest::Approx(h2.dist).epsilon(1e-12));
  }
}

TEST_CASE("property: lattice enumeration matches the scan for homogeneous approximation") {
  Gen g(34);
  for (int t = 0; t < 30; ++t) {
    SystemShape sh = t % 3 == 0 ? SystemShape::make(2, 2) : (t % 3 == 1 ? k21 : SystemShape::make(1, 2));
    auto a = TargetMatrix::random_uniform(sh, g.next() % 100000);
    double Q = std::ldexp(1.0, static_cast<int>(g.integer(0, sh.n == 1 ? 14 : 8)));
    auto scan = best_twisted(a, {}, Q, true);
    auto lat = best_homogeneous(a, Q);
    CHECK(lat.dist == doctest::Approx(scan.dist).epsilon(1e-12));
    CHECK(lat.q == scan.q);
    CHECK(lat.p == scan.p);
  }
}

TEST_CASE("property: monotone in the radius") {
  Gen g(35);
  ApproxFn h = ApproxFn::hardy_h(k21, 1);
  for (int t = 0; t < 10; ++t) {
    auto a = TargetMatrix::random_uniform(k21, g.next() % 100000);
    std::vector<double> beta = {g.uniform(), g.uniform()};
    std::vector<double> radii = {10, 50, 200, 1000, 5000};
    auto prof = best_twisted_profile(a, beta, radii, false);
    for (std::size_t k = 1; k < radii.size(); ++k) CHECK(prof[k].dist <= prof[k - 1].dist);
    auto small = solutions(a, beta, h, 500), large = solutions(a, beta, h, 5000);
    for (const auto& s : small) {
      bool found = std::any_of(large.begin(), large.end(), [&](const Approximation& l) { return l.q == s.q && l.p == s.p; });
      CHECK(found);
    }
    // a solution with |q| <= Q and dist <= psi(Q) puts beta in A_psi_Q
    for (double Q : {100.0, 1000.0}) {
      bool witness = std::any_of(large.begin(), large.end(),
                                 [&](const Approximation& l) { return qnorm(l.q) <= Q && l.dist <= h(Q); });
      if (witness) CHECK(in_A_psi_Q(a, beta, h, Q));
    }
  }
}

TEST_CASE("transference smoke test") {
  auto a = TargetMatrix::cubic_veronese();
  double w = omega_estimate(a, 1e4).omega_hat;
  double wt = omega_estimate(a.transpose(), 300).omega_hat;
  MESSAGE("omega(alpha) ~ ", w, ", omega(alpha^T) ~ ", wt);
  CHECK(w > 0);
  CHECK(wt > 0);
}

}  // TEST_SUITE
