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

#include "twistlab/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twistlab {

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const Interval& iv : parts) {
    if (!(iv.lo <= iv.hi)) continue;
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

double IntervalSet::measure() const {
  double s = 0;
  for (const Interval& iv : parts_) s += iv.length();
  return s;
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](double v, const Interval& iv) { return v < iv.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

double IntervalSet::endpoint_distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& iv : parts_) {
    best = std::min({best, std::abs(x - iv.lo), std::abs(x - iv.hi)});
  }
  return best;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  const auto& a = parts_;
  const auto& b = other.parts_;
  while (i < a.size() && j < b.size()) {
    double lo = std::max(a[i].lo, b[j].lo);
    double hi = std::min(a[i].hi, b[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (a[i].hi < b[j].hi) ++i; else ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::clip(Interval host) const { return intersect(IntervalSet({host})); }

IntervalSet IntervalSet::complement(Interval host) const {
  std::vector<Interval> out;
  double cursor = host.lo;
  for (const Interval& iv : parts_) {
    if (iv.hi < host.lo) continue;
    if (iv.lo > host.hi) break;
    if (iv.lo > cursor) out.push_back({cursor, iv.lo});
    cursor = std::max(cursor, iv.hi);
  }
  if (cursor < host.hi) out.push_back({cursor, host.hi});
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::dilate(double r) const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const Interval& iv : parts_) out.push_back({iv.lo - r, iv.hi + r});
  return IntervalSet(std::move(out));
}

double IntervalSet::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < parts_.size(); ++i) g = std::min(g, parts_[i].lo - parts_[i - 1].hi);
  return g;
}

double IntervalSet::min_length() const {
  double g = std::numeric_limits<double>::infinity();
  for (const Interval& iv : parts_) g = std::min(g, iv.length());
  return g;
}

double IntervalSet::max_length() const {
  double g = 0;
  for (const Interval& iv : parts_) g = std::max(g, iv.length());
  return g;
}

}  // namespace twistlab
