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

#ifndef TWISTLAB_APPROX_HPP_
#define TWISTLAB_APPROX_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/approxfn.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/matrix.hpp"

namespace twistlab {

// Distances below this multiple of (1 + |alpha q|) are beyond the resolution
// of the double-double kernels and count as exact zeros.
inline constexpr double kZeroDistance = 1e-26;

struct Approximation {
  double dist = 0;
  IntVec p;
  IntVec q;
};

// min |alpha q + beta + p| over |q| <= Qmax (q != 0 when exclude_zero_q).
// Ties: smaller |q|, then q before -q when q leads with a positive entry,
// then lexicographic q, then lexicographic p.
Approximation best_twisted(const TargetMatrix& alpha, const std::vector<double>& beta, double Qmax,
                           bool exclude_zero_q, std::uint64_t budget = enumeration_budget());

// best_twisted for every radius in one scan; radii need not be sorted. For
// beta = 0, radii whose q-ball holds more than kScanLimit points are handled
// by best_homogeneous instead.
inline constexpr double kScanLimit = 4e6;
std::vector<Approximation> best_twisted_profile(const TargetMatrix& alpha, const std::vector<double>& beta,
                                                const std::vector<double>& radii, bool exclude_zero_q,
                                                std::uint64_t budget = enumeration_budget());

// Homogeneous best approximation (beta = 0, q != 0) by enumerating the
// lattice points of Lambda_Q in boxes R(a, 1) of doubling size, same ties.
Approximation best_homogeneous(const TargetMatrix& alpha, double Qmax,
                               std::uint64_t budget = enumeration_budget());

// All (p, q) with 0 < |q| <= Qmax and |alpha q + beta + p| <= psi(|q|),
// sorted by |q|. Integer vectors with |q| at or below psi's domain threshold
// are skipped.
std::vector<Approximation> solutions(const TargetMatrix& alpha, const std::vector<double>& beta,
                                     const ApproxFn& psi, double Qmax,
                                     std::uint64_t budget = enumeration_budget());

// Membership of beta in A_{psi,Q}: some (p, q) with |q| <= Q (q = 0 allowed)
// and |alpha q + p + beta| <= psi(Q).
bool in_A_psi_Q(const TargetMatrix& alpha, const std::vector<double>& beta, const ApproxFn& psi, double Q,
                std::uint64_t budget = enumeration_budget());

struct OmegaEstimate {
  double omega_hat = 0;
  bool infinite = false;
  std::vector<Approximation> trace;  // successive homogeneous best approximations
};
// omega_hat is the largest log(1/dist)/log|q| over the records with
// |q| >= sqrt(Qmax) and the final record.
// Throws DegenerateInput on an exact zero distance unless allow_zero is set,
// in which case the result is flagged infinite.
OmegaEstimate omega_estimate(const TargetMatrix& alpha, double Qmax, bool allow_zero = false,
                             std::uint64_t budget = enumeration_budget());

struct Margin {
  double margin = 0;
  IntVec q;  // where the infimum is attained
};
// inf over 0 < |q| <= Qmax of |q|^{n/m} min_p |alpha q + p + beta|.
Margin bad_margin(const TargetMatrix& alpha, const std::optional<std::vector<double>>& beta, double Qmax,
                  std::uint64_t budget = enumeration_budget());

enum class Singularity { NonsingularEvidence, SingularEvidence, VerySingularEvidence };
const char* to_string(Singularity s);

struct SingularityOptions {
  // NonsingularEvidence when eps(Q) stays above this on the upper half of the grid.
  double nonsingular_floor = 0.05;
  // VerySingularEvidence when the fitted slope of log eps vs log Q, and
  // log eps(Q) / log Q at every Q of the upper half, are at most -this.
  double slope_threshold = 0.05;
};

struct SingularityProfile {
  std::vector<double> Q;
  std::vector<double> eps;
  double slope = 0;
  double liminf = 0;
  Singularity classification = Singularity::SingularEvidence;
};
SingularityProfile singularity_profile(const TargetMatrix& alpha, const QGrid& grid,
                                       const SingularityOptions& options = {},
                                       std::uint64_t budget = enumeration_budget());

// Searches 0 < |p| <= Qmax for |alpha^T p - q| <= delta(|p|). Returns the
// first witness in order of |p|, or nothing (evidence that alpha^T is not
// delta-approximable).
std::optional<Approximation> transpose_not_delta_check(const TargetMatrix& alpha, const ApproxFn& delta,
                                                       double Qmax,
                                                       std::uint64_t budget = enumeration_budget());

}  // namespace twistlab

#endif  // TWISTLAB_APPROX_HPP_
