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

#ifndef TWISTLAB_REDUCTION_HPP_
#define TWISTLAB_REDUCTION_HPP_

// LLL reduction and Fincke-Pohst enumeration for small dimensions, generic in
// the scalar type (double for desk-scale scans, Real for the game).

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace twistlab::reduction {

template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T round_to_int(const T& x) {
  using std::floor;
  return floor(x + T(0.5));
}

// Gram-Schmidt coefficients mu and squared norms of b*.
template <class T>
void gram_schmidt(const Mat<T>& b, Mat<T>& mu, std::vector<T>& bstar2) {
  const std::size_t d = b.size();
  Mat<T> bs = b;
  mu.assign(d, std::vector<T>(d, T(0)));
  bstar2.assign(d, T(0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      mu[i][j] = dot(b[i], bs[j]) / bstar2[j];
      for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
    }
    bstar2[i] = dot(bs[i], bs[i]);
    mu[i][i] = T(1);
  }
}

// Reduces the rows of b in place; rows of u receive the same integer row
// operations, so b = u * (original b) is maintained.
template <class T>
void lll(Mat<T>& b, Mat<T>& u, double delta = 0.99) {
  const std::size_t d = b.size();
  if (d < 2) return;
  Mat<T> mu;
  std::vector<T> bstar2;
  gram_schmidt(b, mu, bstar2);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < d) {
    if (++guard > 100000) break;
    for (std::size_t jj = k; jj-- > 0;) {
      T r = round_to_int(mu[k][jj]);
      if (r != 0) {
        for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[jj][c];
        for (std::size_t c = 0; c < u[k].size(); ++c) u[k][c] -= r * u[jj][c];
        for (std::size_t c = 0; c <= jj; ++c) mu[k][c] -= r * mu[jj][c];
      }
    }
    T lhs = bstar2[k];
    T rhs = (T(delta) - mu[k][k - 1] * mu[k][k - 1]) * bstar2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt(b, mu, bstar2);
      k = k > 1 ? k - 1 : 1;
    }
  }
}

// Calls visit(x, dist2) for every integer coefficient vector x with
// |sum_i x_i b_i - target|^2 <= r2. visit may lower r2 to prune the search.
// Returns the number of tree nodes visited; aborts once node_limit is hit.
template <class T, class Visit>
std::size_t fincke_pohst(const Mat<T>& b, const std::vector<T>& target, T& r2, Visit&& visit,
                         std::size_t node_limit) {
  const std::size_t d = b.size();
  Mat<T> mu;
  std::vector<T> bstar2;
  gram_schmidt(b, mu, bstar2);
  // Target coordinates in the Gram-Schmidt basis: t_i = <target, b*_i>/|b*_i|^2,
  // computed by the same recursion as the mu.
  std::vector<T> tc(d, T(0));
  {
    Mat<T> bs = b;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      tc[i] = dot(target, bs[i]) / bstar2[i];
    }
  }
  std::vector<T> x(d, T(0));
  std::vector<T> partial(d + 1, T(0));
  std::size_t nodes = 0;
  bool aborted = false;

  auto rec = [&](auto&& self, std::size_t level) -> void {
    if (aborted) return;
    // Centre of the admissible range for x[level].
    T c = tc[level];
    for (std::size_t j = level + 1; j < d; ++j) c -= mu[j][level] * x[j];
    T room = r2 - partial[level + 1];
    if (room < 0) return;
    using std::floor;
    using std::sqrt;
    using std::ceil;
    T half = sqrt(room / bstar2[level]);
    T lo = ceil(c - half), hi = floor(c + half);
    for (T v = lo; v <= hi; v += 1) {
      if (++nodes > node_limit) {
        aborted = true;
        return;
      }
      T diff = v - c;
      partial[level] = partial[level + 1] + diff * diff * bstar2[level];
      if (partial[level] > r2) continue;
      x[level] = v;
      if (level == 0) {
        visit(x, partial[0]);
      } else {
        self(self, level - 1);
        if (aborted) return;
      }
      // r2 may have shrunk; recompute the upper end.
      T room2 = r2 - partial[level + 1];
      if (room2 < 0) break;
      T half2 = sqrt(room2 / bstar2[level]);
      hi = floor(c + half2);
    }
    x[level] = 0;
  };
  if (d > 0) rec(rec, d - 1);
  return aborted ? node_limit + 1 : nodes;
}

}  // namespace twistlab::reduction

#endif  // TWISTLAB_REDUCTION_HPP_
