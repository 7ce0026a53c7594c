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

#ifndef TWISTLAB_REAL_HPP_
#define TWISTLAB_REAL_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

namespace twistlab {

// Extended-precision real. Precision of newly created values follows the
// process-wide default; use PrecisionScope to change it for a block.
using Real = boost::multiprecision::mpfr_float;
using RealVec = std::vector<Real>;
using IntVec = std::vector<std::int64_t>;

inline constexpr int kDefaultPrecisionBits = 256;

// Sets the default mantissa width for the lifetime of the scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

int current_precision_bits();
unsigned bits_to_digits10(int bits);

// Round-to-nearest integer, ties away from zero.
inline Real round_real(const Real& x) { return boost::multiprecision::round(x); }

// Distance from x to the nearest integer.
inline double frac_dist(double x) { return std::abs(x - std::nearbyint(x)); }

Real parse_real(const std::string& text);
std::string to_string(const Real& x, int digits = 30);

}  // namespace twistlab

#endif  // TWISTLAB_REAL_HPP_
