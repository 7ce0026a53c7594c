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

#ifndef TWISTLAB_POLY_HPP_
#define TWISTLAB_POLY_HPP_

#include <string>
#include <vector>

#include "twistlab/intervals.hpp"

namespace twistlab {

// Real polynomial, coefficient k multiplies x^k.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);

  // "x^3-x-1", "2x^2 + 3*x - 0.5"
  static Poly parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  double operator()(double x) const;
  Poly derivative() const;
  Poly operator+(double k) const;
  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(double k) const;

 private:
  std::vector<double> c_;
};

// Sorted real roots in [a, b], each isolated by splitting at the critical
// points and refined by bisection. Repeated roots are reported once.
std::vector<double> real_roots(const Poly& p, double a, double b);

// {x in [a, b] : p(x) <= 0}.
IntervalSet nonpositive_set(const Poly& p, double a, double b);

// {x in [a, b] : |p(x)| <= delta}.
IntervalSet sublevel_set(const Poly& p, double delta, double a, double b);

}  // namespace twistlab

#endif  // TWISTLAB_POLY_HPP_
