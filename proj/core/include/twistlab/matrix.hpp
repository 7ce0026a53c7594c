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

#ifndef TWISTLAB_MATRIX_HPP_
#define TWISTLAB_MATRIX_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/approxfn.hpp"
#include "twistlab/real.hpp"

namespace twistlab {

// The fixed m x n real matrix alpha of the system q -> alpha q + beta.
class TargetMatrix {
 public:
  TargetMatrix(SystemShape shape, RealVec entries, int precision_bits, std::string provenance);

  static TargetMatrix zero(SystemShape shape, int precision_bits = kDefaultPrecisionBits);
  // Entries num/den in row-major order.
  static TargetMatrix rational(SystemShape shape,
                               const std::vector<std::pair<std::int64_t, std::int64_t>>& entries,
                               int precision_bits = kDefaultPrecisionBits);
  // Column (t, t^2, ..., t^m) with t the real root of x^3 - x - 1.
  static TargetMatrix cubic_veronese(int m = 2, int precision_bits = kDefaultPrecisionBits);
  // Column with entries sum_j c_ij 2^{-j!}, c_ij = 1 + (j mod i). The shared
  // dyadic denominators make it very singular.
  static TargetMatrix liouville_column(int m = 2, int precision_bits = kDefaultPrecisionBits);
  static TargetMatrix random_uniform(SystemShape shape, std::uint64_t seed,
                                     int precision_bits = kDefaultPrecisionBits);

  // Text format: header "m n precision_bits", then m rows of n entries. Entries
  // are decimals, fractions a/b, sqrt(x), root(poly) or liouville(b). '#'
  // starts a comment.
  static TargetMatrix parse(const std::string& text);
  static TargetMatrix load(const std::string& path);
  // A file path, or one of "cubic", "liouville", "rational[:a/b,c/d,...]",
  // "random:seed=S,m=M,n=N", "zero:m=M,n=N".
  static TargetMatrix from_spec(const std::string& spec);

  const SystemShape& shape() const { return shape_; }
  int m() const { return shape_.m; }
  int n() const { return shape_.n; }
  int precision_bits() const { return precision_bits_; }
  const std::string& provenance() const { return provenance_; }
  const Real& operator()(int i, int j) const { return entries_[i * shape_.n + j]; }
  const RealVec& entries() const { return entries_; }
  double entry_double(int i, int j) const { return entries_d_[i * shape_.n + j]; }
  const std::vector<double>& entries_double() const { return entries_d_; }
  // Least common denominator when every entry is a known rational.
  std::optional<std::int64_t> common_denominator() const { return denominator_; }
  bool is_zero() const;

  TargetMatrix transpose() const;
  std::string to_text() const;

 private:
  SystemShape shape_;
  RealVec entries_;
  std::vector<double> entries_d_;
  int precision_bits_;
  std::string provenance_;
  std::optional<std::int64_t> denominator_;
};

// Evaluates one entry expression of the matrix text format.
Real parse_entry(const std::string& text, int precision_bits);

// Largest real root of the polynomial, refined at the current precision.
Real largest_real_root(const std::string& poly_text);

}  // namespace twistlab

#endif  // TWISTLAB_MATRIX_HPP_
