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

#ifndef TWISTLAB_LATTICE_HPP_
#define TWISTLAB_LATTICE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/approxfn.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/real.hpp"

namespace twistlab {

// Maximum number of enumeration candidates, from TWISTLAB_BUDGET or 10^7.
std::uint64_t enumeration_budget();
// Throws BudgetExceeded when required exceeds limit.
void charge_budget(double required, std::uint64_t limit);

// R(a, b) = {(p, q) : |p| <= a, |q| <= b}, Euclidean norms.
struct Region {
  double a = 1;
  double b = 1;
  static Region make(double a, double b);
  double volume(const SystemShape& shape) const;
};

// Convex bodies used for minima: the region R(a, b), its polar
// {(P, V) : a|P| + b|V| <= 1}, and a Euclidean ball.
struct Body {
  enum class Kind { Box, Polar, Ball };
  Kind kind = Kind::Box;
  double a = 1;
  double b = 1;

  static Body box(double a, double b);
  static Body polar(double a, double b);
  static Body ball(double r);
  static Body of(const Region& r, bool polar_body);
  double gauge(const std::vector<double>& x, const SystemShape& shape) const;
  double volume(const SystemShape& shape) const;
};

// Volume of the Euclidean unit ball in R^k.
double unit_ball_volume(int k);

struct LatticePoint {
  IntVec p;
  IntVec q;
  std::vector<double> embedded;
  bool dual = false;
};

// Lambda_Q = g_Q u_alpha Z^{m+n}: (p, q) -> (Q^{n/m}(alpha q + p), q / Q).
// The polar lattice sends (p, q) -> (Q^{-n/m} p, Q (q - alpha^T p)).
class LatticeQ {
 public:
  LatticeQ(TargetMatrix alpha, double Q);

  const TargetMatrix& alpha() const { return alpha_; }
  const SystemShape& shape() const { return alpha_.shape(); }
  double Q() const { return Q_; }
  int d() const { return alpha_.shape().d(); }

  RealVec embed(const IntVec& p, const IntVec& q) const;
  RealVec dual_embed(const IntVec& p, const IntVec& q) const;
  std::vector<double> embed_double(const IntVec& p, const IntVec& q, bool dual) const;
  // Row k is the image of the k-th standard vector, coordinates ordered (p, q).
  std::vector<std::vector<double>> basis(bool dual) const;

 private:
  TargetMatrix alpha_;
  double Q_;
};

// Exactly the lattice points in R, by direct scan of the integer box: primal
// loops over q and the few p near -alpha q, dual loops over p and q near
// alpha^T p. Sorted lexicographically on (q, p).
std::vector<LatticePoint> points_in_region(const LatticeQ& L, const Region& R, bool dual,
                                           std::uint64_t budget = enumeration_budget());

// Every nonzero lattice point in t * body, found by Fincke-Pohst enumeration over an
// LLL-reduced basis of the lattice rescaled so the body sits in a ball.
std::vector<LatticePoint> points_in_body(const LatticeQ& L, const Body& body, double t, bool dual,
                                         std::uint64_t budget = enumeration_budget());

// Successive minima of the body; points come back sorted by gauge, and the
// first d linearly independent ones realise the minima.
struct Minima {
  std::vector<double> lambda;
  std::vector<LatticePoint> realisers;
};
Minima minkowski_minima(const LatticeQ& L, const Body& body, bool dual,
                        std::uint64_t budget = enumeration_budget());
// Region form: the dual flag pairs the polar lattice with the polar region.
std::vector<double> minkowski_minima(const LatticeQ& L, const Region& R, bool dual,
                                     std::uint64_t budget = enumeration_budget());

// Shortest nonzero vector for the Euclidean norm.
struct ShortVector {
  double length = 0;
  LatticePoint point;
};
ShortVector shortest_vector(const LatticeQ& L, bool dual, std::uint64_t budget = enumeration_budget());

struct DaniProfile {
  std::vector<double> Q;
  std::vector<double> lambda1;
  double slope = 0;
  double intercept = 0;
};
DaniProfile dani_profile(const TargetMatrix& alpha, const QGrid& grid,
                         std::uint64_t budget = enumeration_budget());

// Lambda_Q meets R(3 Psi(Q), 2) only at the origin.
bool check_notpsiapprox(const LatticeQ& L, const ApproxFn& psi, std::uint64_t budget = enumeration_budget());
// No nonzero polar-lattice point in R(2 Delta, 2 C1).
bool check_assump1(const LatticeQ& L, double Delta, double C1, std::uint64_t budget = enumeration_budget());

// Least-squares fit y = slope * x + intercept.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Rank of integer vectors (exact, fraction-free elimination).
int integer_rank(const std::vector<IntVec>& rows);

}  // namespace twistlab

#endif  // TWISTLAB_LATTICE_HPP_
