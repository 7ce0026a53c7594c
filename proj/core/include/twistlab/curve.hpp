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

#ifndef TWISTLAB_CURVE_HPP_
#define TWISTLAB_CURVE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/approxfn.hpp"
#include "twistlab/intervals.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/poly.hpp"

namespace twistlab {

// Polynomial curve f : I0 -> R^m with nonvanishing Wronskian on I0 (up to
// trimmed neighbourhoods of isolated zeros).
class Curve {
 public:
  Curve(std::vector<Poly> coords, Interval I0, double trim = 1e-3);
  // f(t) = (t, t^2, ..., t^m).
  static Curve veronese(int m, Interval I0 = {0.0, 1.0});
  // "veronese:m=2[,a=0,b=1]" or "poly:t;t^2+1[;...][@a,b]" (coordinates
  // separated by ';', polynomials in t).
  static Curve parse(const std::string& spec);

  int m() const { return static_cast<int>(coords_.size()); }
  const Interval& I0() const { return I0_; }
  // max(sup |f'|, 1 / inf |f'|) over I0.
  double C2() const { return C2_; }
  double min_speed() const { return min_speed_; }
  double max_speed() const { return max_speed_; }
  const std::vector<Poly>& coords() const { return coords_; }
  // Subintervals of I0 where the Wronskian is bounded away from zero.
  const std::vector<Interval>& pieces() const { return pieces_; }
  std::string spec() const { return spec_; }

  std::vector<double> value(double s) const;
  // k-th derivative (k >= 1).
  std::vector<double> derivative(double s, int k = 1) const;
  double wronskian(double s) const;

 private:
  std::vector<Poly> coords_;
  std::vector<std::vector<Poly>> derivs_;  // derivs_[k-1][i] = f_i^{(k)}
  Interval I0_;
  double C2_ = 1;
  double min_speed_ = 1;
  double max_speed_ = 1;
  std::vector<Interval> pieces_;
  std::string spec_;
};

enum class ScaleMode { Thm1, Thm2, Thm3 };

struct ScaleConfig {
  ScaleMode mode = ScaleMode::Thm3;
  // Thm1 and Thm3 exponent epsilon.
  double eps = 0.1;
  // Thm1: delta(q) = q^{-gamma}; a nonpositive value selects the gamma that
  // makes Delta(Q) ~ Q^{-(n - 2 eps) / (2 m^2 (m - 1))}.
  double gamma = 0;
  // Thm2: delta(q) = q^{-m/n} Phi_i(q)^beta with phi_i the ladder partner of psi.
  double beta = 5;
  // Thm3: constant Delta.
  double Delta = 1;
  double C1 = 4;
  // Optional explicit delta overriding the mode default (Thm1/Thm2).
  std::optional<ApproxFn> delta;

  // "thm1:eps=0.25", "thm2:beta=5", "thm3:eps=0.1,Delta=1" (C1 and gamma
  // accepted in any mode).
  static ScaleConfig parse(const std::string& spec);
  std::string spec() const;
};

struct ScaleSet {
  double Q = 0;
  ScaleMode mode = ScaleMode::Thm3;
  double theta = 0;
  double Theta = 0;
  double Delta = 0;
  double eta = 0;
  double C1 = 0;
  double psi = 0;  // psi(Q)
  double Psi = 0;  // Psi(Q)
  // Sanity flags; false marks a violated condition at this Q.
  bool theta_above_dirichlet = true;  // Q^{-n/m} <= theta
  bool theta_below_sqrt_psi = true;   // theta <= psi^{1/2} / log Q
  bool Delta_at_most_one = true;
};

// delta used by the mode (Thm1 power law, Thm2 ladder transfer function).
ApproxFn scale_delta(const ScaleConfig& cfg, const ApproxFn& psi);
ScaleSet compute_scales(const ScaleConfig& cfg, const ApproxFn& psi, double Q);

// s in S_Q = f^{-1}(A_{psi,Q}).
bool sq_contains(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                 std::uint64_t budget = enumeration_budget());

struct GridMeasure {
  double measure = 0;
  double resolution = 0;  // |I| / gridsize
  std::size_t hits = 0;
  std::size_t gridsize = 0;
};
// Fraction of the midpoint grid of I lying in S_Q, times |I|.
GridMeasure sq_measure(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                       std::size_t gridsize = 1 << 14, std::uint64_t budget = enumeration_budget());
// Membership of every grid point of I in S_Q (same scan as sq_measure).
std::vector<bool> sq_grid(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi,
                          double Q, std::size_t gridsize, std::uint64_t budget = enumeration_budget());
// S_Q inside I as an exact union of polynomial sublevel sets.
IntervalSet sq_set(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                   std::uint64_t budget = enumeration_budget());

// S~_{Q,s}(c) in x-coordinates: x in [-1, 1] with
// |alpha q + p + f(s) + x theta f'(s)| <= c psi(Q) for some |q| <= Q.
IntervalSet stilde(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                   double c, double theta, std::uint64_t budget = enumeration_budget());

// Bad points at one Q: s is bad when some nonzero polar-lattice point (P, V)
// with |P| <= 2 C1 / Psi(Q), |V| <= C1 has |P . f'(s)| <= C1 / Theta(Q).
class GoodBad {
 public:
  GoodBad(const Curve& curve, const TargetMatrix& alpha, const ScaleSet& scales,
          std::uint64_t budget = enumeration_budget());

  bool is_good(double s) const;
  // The bad set inside I0, exact.
  const IntervalSet& bad_set() const { return bad_; }
  std::size_t dual_points() const { return points_.size(); }

 private:
  const Curve* curve_;
  ScaleSet scales_;
  std::vector<std::vector<double>> points_;  // P parts
  IntervalSet bad_;
};

bool is_good(const Curve& curve, double s, const TargetMatrix& alpha, const ScaleSet& scales,
             std::uint64_t budget = enumeration_budget());

struct BadMeasure {
  double measure = 0;        // grid estimate
  double exact = 0;          // from the exact bad set
  double resolution = 0;
  double bound = 0;          // (1/Delta^m) (Psi/Theta)^{1/(m-1)} Psi^{-m}
};
BadMeasure bq_measure(const Curve& curve, Interval I, const TargetMatrix& alpha, const ScaleSet& scales,
                      std::size_t gridsize = 1 << 14, std::uint64_t budget = enumeration_budget());

struct SandwichReport {
  std::size_t violations = 0;
  std::size_t lower_violations = 0;  // x in S~(1/2) but s + theta x not in S_Q
  std::size_t upper_violations = 0;  // s + theta x in S_Q but x not in S~(3/2)
  std::size_t checked = 0;
  std::size_t skipped = 0;           // grid points within 1e-9 of an endpoint
};
SandwichReport sandwich_check(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi,
                              double Q, double theta, std::size_t xgrid = 1000,
                              std::uint64_t budget = enumeration_budget());

// S'_Q: greedy 3 theta-separated good points A_Q on [a + theta, b - theta],
// E(s) = s + theta S~_{Q,s}(1/2), union dilated by 2 C2 psi(Q).
struct SPrime {
  IntervalSet set;
  std::vector<double> anchors;  // A_Q
  IntervalSet bad;              // B_Q
};
SPrime sprime_build(const Curve& curve, const TargetMatrix& alpha, const ApproxFn& psi, const ScaleSet& scales,
                    std::uint64_t budget = enumeration_budget());

struct ComponentReport {
  std::size_t components = 0;
  double min_length = 0;
  double max_length = 0;
  double min_gap = 0;
  double size_lo = 0;      // 4 C2 psi(Q)
  double size_hi = 0;      // 6 C2 psi(Q)
  double gap_ratio = 0;    // min_gap / phi(Q)
  bool size_pass = true;
  bool separation_pass = true;
};
ComponentReport component_stats(const IntervalSet& S, const ApproxFn& psi, const ApproxFn& phi, double Q,
                                double C2, double gap_constant);

struct OverlapSums {
  double c_hat = 0;     // sum_Q |S'_Q cap I| / |I|
  double pairwise = 0;  // sum_{Q1 < Q2} |S'_Q1 cap S'_Q2 cap I| / |I|
  double C_hat = 0;     // pairwise / c_hat^2
  double gdbc_bound = 0;
};
// Exact interval arithmetic over given sets.
OverlapSums overlap_sums(const std::vector<IntervalSet>& sets, Interval I);
OverlapSums overlap_sums(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi,
                         const std::vector<double>& Qset, const ScaleConfig& cfg,
                         std::uint64_t budget = enumeration_budget());

struct SublevelReport {
  double measure = 0;
  double bound = 0;  // (delta / |p|)^{1/(m-1)}
  bool pass = true;
};
// {s in I : |p . f'(s)| <= delta}, exact; pass when measure <= constant * bound.
SublevelReport sublevel_measure(const Curve& curve, const std::vector<double>& p, double delta, Interval I,
                                double constant);

}  // namespace twistlab

#endif  // TWISTLAB_CURVE_HPP_
