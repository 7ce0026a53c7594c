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

#ifndef TWISTLAB_SRC_KERNELS_HPP_
#define TWISTLAB_SRC_KERNELS_HPP_

// Double-double helpers for the scanning loops: alpha is split into hi + lo
// doubles and alpha q is reduced modulo 1 with an error-free product, which
// keeps about 100 bits of the fractional part for |q| < 2^40.

#include <cmath>
#include <cstdint>
#include <vector>

#include "twistlab/matrix.hpp"

namespace twistlab::detail {

struct SplitEntry {
  double hi = 0;
  double lo = 0;
};

// x = k + f with k integral and |f| <= 1/2 (up to rounding of the last step).
struct Reduced {
  double k = 0;
  double f = 0;
};

inline Reduced reduce_product(const SplitEntry& a, double q) {
  double prod = a.hi * q;
  double err = std::fma(a.hi, q, -prod);
  double k = std::nearbyint(prod);
  double f = (prod - k) + err + a.lo * q;
  double k2 = std::nearbyint(f);
  return {k + k2, f - k2};
}

inline Reduced add(Reduced x, Reduced y) {
  double k = x.k + y.k;
  double f = x.f + y.f;
  double k2 = std::nearbyint(f);
  return {k + k2, f - k2};
}

inline Reduced reduce(double x) {
  double k = std::nearbyint(x);
  return {k, x - k};
}

class SplitMatrix {
 public:
  explicit SplitMatrix(const TargetMatrix& alpha) : m_(alpha.m()), n_(alpha.n()) {
    PrecisionScope scope(alpha.precision_bits());
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const Real& x = alpha(i, j);
        double hi = x.convert_to<double>();
        double lo = Real(x - hi).convert_to<double>();
        e_.push_back({hi, lo});
      }
    }
  }

  int m() const { return m_; }
  int n() const { return n_; }
  const SplitEntry& at(int i, int j) const { return e_[i * n_ + j]; }

  // Row i of alpha q.
  Reduced row(int i, const std::int64_t* q) const {
    Reduced r;
    for (int j = 0; j < n_; ++j) {
      if (q[j] != 0) r = add(r, reduce_product(at(i, j), static_cast<double>(q[j])));
    }
    return r;
  }
  // Column j of alpha^T p, i.e. sum_i alpha_ij p_i.
  Reduced col(int j, const std::int64_t* p) const {
    Reduced r;
    for (int i = 0; i < m_; ++i) {
      if (p[i] != 0) r = add(r, reduce_product(at(i, j), static_cast<double>(p[i])));
    }
    return r;
  }

 private:
  int m_, n_;
  std::vector<SplitEntry> e_;
};

// Visits every integer vector v with |v|^2 <= r2 in lexicographic order.
template <class F>
void for_each_in_ball(int dim, double r2, F&& f) {
  std::vector<std::int64_t> v(dim, 0);
  auto rec = [&](auto&& self, int level, double used) -> void {
    double room = r2 - used;
    if (room < 0) return;
    auto hi = static_cast<std::int64_t>(std::floor(std::sqrt(room) + 1e-9));
    while (static_cast<double>(hi) * static_cast<double>(hi) > room) --hi;
    for (std::int64_t x = -hi; x <= hi; ++x) {
      v[level] = x;
      double u = used + static_cast<double>(x) * static_cast<double>(x);
      if (level + 1 == dim) f(v);
      else self(self, level + 1, u);
    }
    v[level] = 0;
  };
  if (dim > 0) rec(rec, 0, 0.0);
}

}  // namespace twistlab::detail

#endif  // TWISTLAB_SRC_KERNELS_HPP_
