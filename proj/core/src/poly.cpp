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

#include "twistlab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "twistlab/errors.hpp"

namespace twistlab {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  if (c_.empty()) c_.push_back(0.0);
}

Poly Poly::parse(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') s += ch;
  }
  if (s.empty()) throw DomainError("empty polynomial");
  std::vector<double> c;
  std::size_t i = 0;
  while (i < s.size()) {
    double sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
    double coef = start == i ? 1.0 : std::stod(s.substr(start, i - start));
    std::size_t power = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (ps == i) throw DomainError("bad exponent in polynomial: " + text);
        power = std::stoul(s.substr(ps, i - ps));
      }
    } else if (start == i) {
      throw DomainError("bad polynomial term in: " + text);
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw DomainError("bad polynomial: " + text);
    if (c.size() <= power) c.resize(power + 1, 0.0);
    c[power] += sign * coef;
  }
  return Poly(std::move(c));
}

double Poly::operator()(double x) const {
  double v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Poly(std::move(d));
}

Poly Poly::operator+(double k) const {
  std::vector<double> c = c_;
  c[0] += k;
  return Poly(std::move(c));
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  std::vector<double> c(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return Poly(std::move(c));
}

Poly Poly::operator*(double k) const {
  std::vector<double> c = c_;
  for (double& x : c) x *= k;
  return Poly(std::move(c));
}

namespace {

double bisect(const Poly& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = p(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> real_roots(const Poly& p, double a, double b) {
  std::vector<double> roots;
  if (a > b) return roots;
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    double r = -p.coeffs()[0] / p.coeffs()[1];
    if (a <= r && r <= b) roots.push_back(r);
    return roots;
  }
  // p is monotone between consecutive critical points.
  std::vector<double> knots{a};
  for (double r : real_roots(p.derivative(), a, b)) knots.push_back(r);
  knots.push_back(b);
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    double lo = knots[i], hi = knots[i + 1];
    double flo = p(lo), fhi = p(hi);
    double r;
    if (flo == 0) r = lo;
    else if (fhi == 0) r = hi;
    else if ((flo < 0) != (fhi < 0)) r = bisect(p, lo, hi);
    else continue;
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  }
  return roots;
}

IntervalSet nonpositive_set(const Poly& p, double a, double b) {
  std::vector<double> cuts{a, b};
  for (double r : real_roots(p, a, b)) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi > lo && p(0.5 * (lo + hi)) <= 0) parts.push_back({lo, hi});
  }
  return IntervalSet(std::move(parts));
}

IntervalSet sublevel_set(const Poly& p, double delta, double a, double b) {
  if (delta < 0) return IntervalSet();
  std::vector<double> cuts{a, b};
  for (double r : real_roots(p + (-delta), a, b)) cuts.push_back(r);
  for (double r : real_roots(p + delta, a, b)) cuts.push_back(r);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i], hi = cuts[i + 1];
    if (hi <= lo) continue;
    if (std::abs(p(0.5 * (lo + hi))) <= delta) parts.push_back({lo, hi});
  }
  // Isolated touching points (|p| reaches delta at a tangency) have measure zero
  // and are dropped, except when the whole set is a single point.
  if (parts.empty()) {
    for (double x : cuts) {
      if (std::abs(p(x)) <= delta) parts.push_back({x, x});
    }
  }
  return IntervalSet(std::move(parts));
}

}  // namespace twistlab
