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

#ifndef TWISTLAB_INTERVALS_HPP_
#define TWISTLAB_INTERVALS_HPP_

#include <vector>

namespace twistlab {

struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Finite union of closed intervals, kept sorted and disjoint. Intervals that
// touch are merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  const std::vector<Interval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  double measure() const;
  bool contains(double x) const;
  // Distance from x to the nearest endpoint.
  double endpoint_distance(double x) const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet clip(Interval host) const;
  IntervalSet complement(Interval host) const;
  // Closed r-neighbourhood.
  IntervalSet dilate(double r) const;
  // Smallest gap between consecutive components; +inf with fewer than two.
  double min_gap() const;
  double min_length() const;
  double max_length() const;

 private:
  std::vector<Interval> parts_;
};

}  // namespace twistlab

#endif  // TWISTLAB_INTERVALS_HPP_
