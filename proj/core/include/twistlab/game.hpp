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

#ifndef TWISTLAB_GAME_HPP_
#define TWISTLAB_GAME_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/lattice.hpp"
#include "twistlab/matrix.hpp"
#include "twistlab/real.hpp"

namespace twistlab {

// Closed Euclidean ball in R^m. Deletions A_k are treated as open balls.
struct Ball {
  RealVec center;
  Real radius;
};

struct GameConfig {
  double beta_param = 1.0 / 3.0;
  double epsilon = 0;
  int rounds = 60;
  int precision_bits = 512;
  std::uint64_t seed = 1;
  // Radius of Bob's opening ball; its centre is drawn from [0,1)^m.
  double first_radius = 0.1;

  // Throws DomainError for out-of-range fields and PrecisionExhausted when
  // beta_param^rounds falls below 2^{32 - precision_bits}.
  void validate() const;
};

// An integer pair held exactly in extended precision; entries can exceed
// 64 bits in late rounds.
struct IntegerPair {
  RealVec p;
  RealVec q;
};

// The unique (p, q) with |q| <= Q/2 and |alpha q + p + x| <= eps Q^{-n/m} / 2,
// if there is one. Throws UniquenessViolation when two pairs qualify.
std::optional<IntegerPair> unique_pair(const TargetMatrix& alpha, const RealVec& x, const Real& Q, double eps,
                                       std::uint64_t budget = enumeration_budget());

// Every (p, q) with |q| <= Qmax and |alpha q + p + x| <= r, by CVP enumeration
// in extended precision.
std::vector<IntegerPair> translates_near(const TargetMatrix& alpha, const RealVec& x, const Real& Qmax,
                                         const Real& r, std::uint64_t budget = enumeration_budget());

struct AliceRecord {
  Real Q;
  IntegerPair pair;  // (0, 0) when no pair is within range
  bool found = false;
  RealVec y;
};

struct AliceMove {
  Ball A;
  AliceRecord record;
};
AliceMove alice_move(const TargetMatrix& alpha, const Ball& B, const GameConfig& config);

enum class BobKind { Random, Greedy };
BobKind parse_bob(const std::string& name);
const char* to_string(BobKind kind);

// Bob's moves are deterministic given the seed.
class Bob {
 public:
  Bob(BobKind kind, std::uint64_t seed);
  Ball opening(int m, const GameConfig& config);
  // A ball of radius beta rho(B) inside B and disjoint from the open ball A.
  Ball respond(const TargetMatrix& alpha, const Ball& B, const Ball& A, const GameConfig& config);

 private:
  double uniform();
  double normal();
  RealVec random_direction(int m);

  BobKind kind_;
  std::uint64_t state_;
};

struct GameRound {
  Ball B;
  Ball A;
  AliceRecord alice;
};

struct GameTranscript {
  GameConfig config;
  BobKind bob = BobKind::Random;
  std::vector<GameRound> rounds;
  Ball final_ball;  // B_{rounds+1}
  RealVec outcome;  // its centre
};

GameTranscript play(const TargetMatrix& alpha, const GameConfig& config, BobKind bob);

struct Legality {
  bool ok = true;
  int round = 0;  // first offending round, 1-based
  std::string reason;
};
// Checks B_{k+1} inside B_k minus A_k and both radius constraints.
Legality check_transcript(const GameTranscript& t);

struct Verification {
  double min_margin = 0;
  double threshold = 0;
  bool pass = false;
  bool vacuous = false;
  double q_low = 0;  // Q_1 / 2
  IntVec q_at_min;
};
// min over Q_1/2 <= |q| <= Qcheck of |q|^{n/m} min_p |alpha q + p + x|, against
// eps beta^2 2^{-n/m} / 4 less the slack 2 rho_final Qcheck^{n/m} for using the
// last centre in place of the limit point.
Verification verify_outcome(const TargetMatrix& alpha, const RealVec& x, double Qcheck, const GameConfig& config,
                            std::uint64_t budget = enumeration_budget());

// Desk-scale epsilon: 0.99 times the homogeneous margin up to Qmax.
double epsilon_estimate(const TargetMatrix& alpha, double Qmax, std::uint64_t budget = enumeration_budget());

}  // namespace twistlab

#endif  // TWISTLAB_GAME_HPP_
