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

#include "twistlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "kernels.hpp"
#include "twistlab/errors.hpp"
#include "twistlab/reduction.hpp"

namespace twistlab {
namespace {

double norm2(const std::vector<double>& x, int from, int to) {
  double s = 0;
  for (int i = from; i < to; ++i) s += x[i] * x[i];
  return std::sqrt(s);
}

bool lex_less(const LatticePoint& a, const LatticePoint& b) {
  if (a.q != b.q) return a.q < b.q;
  return a.p < b.p;
}

// Iterates over the integer box [-r, r]^dim in lexicographic order.
template <class F>
void for_each_in_box(int dim, std::int64_t r, F&& f) {
  std::vector<std::int64_t> v(dim, -r);
  if (dim == 0) {
    f(v);
    return;
  }
  while (true) {
    f(v);
    int k = dim - 1;
    while (k >= 0 && v[k] == r) {
      v[k] = -r;
      --k;
    }
    if (k < 0) return;
    ++v[k];
  }
}

// Integer ranges [lo, hi] for each coordinate, product iterated.
template <class F>
void for_each_in_ranges(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, F&& f) {
  const std::size_t dim = lo.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (lo[i] > hi[i]) return;
  }
  std::vector<std::int64_t> v = lo;
  while (true) {
    f(v);
    std::size_t k = dim;
    while (k > 0 && v[k - 1] == hi[k - 1]) {
      v[k - 1] = lo[k - 1];
      --k;
    }
    if (k == 0) return;
    ++v[k - 1];
  }
}

std::vector<double> body_scaling(const Body& body, const SystemShape& shape, double& radius) {
  std::vector<double> s(shape.d());
  for (int i = 0; i < shape.d(); ++i) {
    bool first = i < shape.m;
    switch (body.kind) {
      case Body::Kind::Box: s[i] = first ? 1 / body.a : 1 / body.b; break;
      case Body::Kind::Polar: s[i] = first ? body.a : body.b; break;
      case Body::Kind::Ball: s[i] = 1 / body.a; break;
    }
  }
  radius = body.kind == Body::Kind::Ball ? 1.0 : std::sqrt(2.0);
  return s;
}

LatticePoint make_point(const LatticeQ& L, const std::vector<std::int64_t>& coeffs, bool dual) {
  const int m = L.shape().m;
  LatticePoint pt;
  pt.p.assign(coeffs.begin(), coeffs.begin() + m);
  pt.q.assign(coeffs.begin() + m, coeffs.end());
  pt.embedded = L.embed_double(pt.p, pt.q, dual);
  pt.dual = dual;
  return pt;
}

}  // namespace

std::uint64_t enumeration_budget() {
  const char* env = std::getenv("TWISTLAB_BUDGET");
  if (env != nullptr && *env != '\0') {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<std::uint64_t>(v);
  }
  return 10'000'000ULL;
}

void charge_budget(double required, std::uint64_t limit) {
  if (required > static_cast<double>(limit)) {
    double capped = std::min(required, 1.8e19);
    throw BudgetExceeded(static_cast<std::uint64_t>(std::ceil(capped)), limit);
  }
}

double unit_ball_volume(int k) {
  return std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

Region Region::make(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("region radii must be positive");
  return Region{a, b};
}

double Region::volume(const SystemShape& shape) const {
  return unit_ball_volume(shape.m) * std::pow(a, shape.m) * unit_ball_volume(shape.n) * std::pow(b, shape.n);
}

Body Body::box(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("body radii must be positive");
  return Body{Kind::Box, a, b};
}

Body Body::polar(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw DomainError("body radii must be positive");
  return Body{Kind::Polar, a, b};
}

Body Body::ball(double r) {
  if (!(r > 0)) throw DomainError("ball radius must be positive");
  return Body{Kind::Ball, r, r};
}

Body Body::of(const Region& r, bool polar_body) { return polar_body ? polar(r.a, r.b) : box(r.a, r.b); }

double Body::gauge(const std::vector<double>& x, const SystemShape& shape) const {
  double np = norm2(x, 0, shape.m), nq = norm2(x, shape.m, shape.d());
  switch (kind) {
    case Kind::Box: return std::max(np / a, nq / b);
    case Kind::Polar: return a * np + b * nq;
    case Kind::Ball: return std::hypot(np, nq) / a;
  }
  return 0;
}

double Body::volume(const SystemShape& shape) const {
  const int m = shape.m, n = shape.n;
  switch (kind) {
    case Kind::Box: return Region{a, b}.volume(shape);
    case Kind::Polar: {
      // int_{a r + b s <= 1} (m V_m r^{m-1}) (n V_n s^{n-1}) dr ds
      //   = m V_m n V_n a^{-m} b^{-n} (m-1)! (n-1)! / (m+n)!
      double f = std::tgamma(m) * std::tgamma(n) / std::tgamma(m + n + 1);
      return m * unit_ball_volume(m) * n * unit_ball_volume(n) * f / (std::pow(a, m) * std::pow(b, n));
    }
    case Kind::Ball: return unit_ball_volume(m + n) * std::pow(a, m + n);
  }
  return 0;
}

LatticeQ::LatticeQ(TargetMatrix alpha, double Q) : alpha_(std::move(alpha)), Q_(Q) {
  if (!(Q > 0) || !std::isfinite(Q)) throw DomainError("Q must be positive");
}

RealVec LatticeQ::embed(const IntVec& p, const IntVec& q) const {
  const int m = shape().m, n = shape().n;
  if (static_cast<int>(p.size()) != m || static_cast<int>(q.size()) != n) {
    throw ShapeMismatch("embed: (p, q) has the wrong dimensions");
  }
  PrecisionScope scope(alpha_.precision_bits());
  Real Qr = Q_;
  Real up = boost::multiprecision::pow(Qr, Real(n) / Real(m));
  RealVec out;
  for (int i = 0; i < m; ++i) {
    Real s = Real(p[i]);
    for (int j = 0; j < n; ++j) s += alpha_(i, j) * Real(q[j]);
    out.push_back(up * s);
  }
  for (int j = 0; j < n; ++j) out.push_back(Real(q[j]) / Qr);
  return out;
}

RealVec LatticeQ::dual_embed(const IntVec& p, const IntVec& q) const {
  const int m = shape().m, n = shape().n;
  if (static_cast<int>(p.size()) != m || static_cast<int>(q.size()) != n) {
    throw ShapeMismatch("dual_embed: (p, q) has the wrong dimensions");
  }
  PrecisionScope scope(alpha_.precision_bits());
  Real Qr = Q_;
  Real down = boost::multiprecision::pow(Qr, -Real(n) / Real(m));
  RealVec out;
  for (int i = 0; i < m; ++i) out.push_back(down * Real(p[i]));
  for (int j = 0; j < n; ++j) {
    Real s = Real(q[j]);
    for (int i = 0; i < m; ++i) s -= alpha_(i, j) * Real(p[i]);
    out.push_back(Qr * s);
  }
  return out;
}

std::vector<double> LatticeQ::embed_double(const IntVec& p, const IntVec& q, bool dual) const {
  RealVec v = dual ? dual_embed(p, q) : embed(p, q);
  std::vector<double> out;
  out.reserve(v.size());
  for (const Real& x : v) out.push_back(x.convert_to<double>());
  return out;
}

std::vector<std::vector<double>> LatticeQ::basis(bool dual) const {
  const int m = shape().m, n = shape().n, d = m + n;
  std::vector<std::vector<double>> rows(d, std::vector<double>(d, 0.0));
  for (int k = 0; k < d; ++k) {
    IntVec p(m, 0), q(n, 0);
    if (k < m) p[k] = 1; else q[k - m] = 1;
    rows[k] = embed_double(p, q, dual);
  }
  return rows;
}

std::vector<LatticePoint> points_in_region(const LatticeQ& L, const Region& R, bool dual, std::uint64_t budget) {
  const int m = L.shape().m, n = L.shape().n;
  const double Q = L.Q();
  const double up = std::pow(Q, static_cast<double>(n) / m);
  detail::SplitMatrix split(L.alpha());
  std::vector<LatticePoint> out;
  const double slack = 1e-9;

  auto accept = [&](const IntVec& p, const IntVec& q) {
    RealVec e = dual ? L.dual_embed(p, q) : L.embed(p, q);
    PrecisionScope scope(L.alpha().precision_bits());
    Real np = 0, nq = 0;
    for (int i = 0; i < m; ++i) np += e[i] * e[i];
    for (int j = 0; j < n; ++j) nq += e[m + j] * e[m + j];
    if (np <= Real(R.a) * Real(R.a) && nq <= Real(R.b) * Real(R.b)) {
      LatticePoint pt{p, q, {}, dual};
      for (const Real& x : e) pt.embedded.push_back(x.convert_to<double>());
      out.push_back(std::move(pt));
    }
  };

  if (!dual) {
    // |q| <= b Q; each p_i within a Q^{-n/m} of -(alpha q)_i.
    const double qr = R.b * Q;
    const auto box = static_cast<std::int64_t>(std::floor(qr));
    charge_budget(std::pow(2.0 * box + 1, n), budget);
    const double r = R.a / up;
    detail::for_each_in_ball(n, qr * qr * (1 + 1e-15), [&](const std::vector<std::int64_t>& q) {
      std::vector<std::int64_t> lo(m), hi(m);
      for (int i = 0; i < m; ++i) {
        detail::Reduced x = split.row(i, q.data());
        lo[i] = static_cast<std::int64_t>(std::ceil(-x.k - x.f - r - slack));
        hi[i] = static_cast<std::int64_t>(std::floor(-x.k - x.f + r + slack));
      }
      for_each_in_ranges(lo, hi, [&](const std::vector<std::int64_t>& p) { accept(p, q); });
    });
  } else {
    // |p| <= a Q^{n/m}; each q_j within b/Q of (alpha^T p)_j.
    const double pr = R.a * up;
    const auto box = static_cast<std::int64_t>(std::floor(pr));
    charge_budget(std::pow(2.0 * box + 1, m), budget);
    const double r = R.b / Q;
    detail::for_each_in_ball(m, pr * pr * (1 + 1e-15), [&](const std::vector<std::int64_t>& p) {
      std::vector<std::int64_t> lo(n), hi(n);
      for (int j = 0; j < n; ++j) {
        detail::Reduced x = split.col(j, p.data());
        lo[j] = static_cast<std::int64_t>(std::ceil(x.k + x.f - r - slack));
        hi[j] = static_cast<std::int64_t>(std::floor(x.k + x.f + r + slack));
      }
      for_each_in_ranges(lo, hi, [&](const std::vector<std::int64_t>& q) { accept(p, q); });
    });
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<LatticePoint> points_in_body(const LatticeQ& L, const Body& body, double t, bool dual,
                                         std::uint64_t budget) {
  const SystemShape& shape = L.shape();
  const int d = shape.d();
  double rad = 1;
  std::vector<double> s = body_scaling(body, shape, rad);
  auto b = L.basis(dual);
  double scaled_covol = 1;
  for (int c = 0; c < d; ++c) {
    scaled_covol *= s[c];
    for (int k = 0; k < d; ++k) b[k][c] *= s[c];
  }
  const double R = t * rad;
  charge_budget(unit_ball_volume(d) * std::pow(R, d) * scaled_covol, budget);
  reduction::Mat<double> u(d, std::vector<double>(d, 0.0));
  for (int k = 0; k < d; ++k) u[k][k] = 1;
  reduction::lll(b, u);

  std::vector<LatticePoint> out;
  std::vector<double> zero(d, 0.0);
  double r2 = R * R * (1 + 1e-9);
  std::size_t nodes = reduction::fincke_pohst(
      b, zero, r2,
      [&](const std::vector<double>& x, double) {
        std::vector<std::int64_t> coeffs(d, 0);
        bool nonzero = false;
        for (int c = 0; c < d; ++c) {
          double v = 0;
          for (int k = 0; k < d; ++k) v += x[k] * u[k][c];
          coeffs[c] = std::llround(v);
          nonzero = nonzero || coeffs[c] != 0;
        }
        if (!nonzero) return;
        LatticePoint pt = make_point(L, coeffs, dual);
        if (body.gauge(pt.embedded, shape) <= t * (1 + 1e-12)) out.push_back(std::move(pt));
      },
      budget);
  if (nodes > budget) throw BudgetExceeded(nodes, budget);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

int integer_rank(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::vector<std::vector<__int128>> a;
  for (const IntVec& r : rows) a.emplace_back(r.begin(), r.end());
  // Bareiss fraction-free elimination.
  int rank = 0;
  __int128 prev = 1;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(a.size()); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

Minima minkowski_minima(const LatticeQ& L, const Body& body, bool dual, std::uint64_t budget) {
  const SystemShape& shape = L.shape();
  const int d = shape.d();
  // Any basis gives an upper bound for the last minimum; start from the
  // smallest basis gauge of a reduced basis and double.
  double rad = 1;
  std::vector<double> s = body_scaling(body, shape, rad);
  auto b = L.basis(dual);
  for (int c = 0; c < d; ++c) {
    for (int k = 0; k < d; ++k) b[k][c] *= s[c];
  }
  reduction::Mat<double> u(d, std::vector<double>(d, 0.0));
  for (int k = 0; k < d; ++k) u[k][k] = 1;
  reduction::lll(b, u);
  double t_min = INFINITY, t_max = 0;
  for (int k = 0; k < d; ++k) {
    std::vector<std::int64_t> coeffs(d);
    for (int c = 0; c < d; ++c) coeffs[c] = std::llround(u[k][c]);
    double g = body.gauge(make_point(L, coeffs, dual).embedded, shape);
    t_min = std::min(t_min, g);
    t_max = std::max(t_max, g);
  }
  double t = t_min;
  while (true) {
    double tt = std::min(t, t_max);
    auto pts = points_in_body(L, body, tt, dual, budget);
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < pts.size(); ++i) order.push_back({body.gauge(pts[i].embedded, shape), i});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    Minima res;
    std::vector<IntVec> chosen;
    for (const auto& [g, idx] : order) {
      IntVec v = pts[idx].p;
      v.insert(v.end(), pts[idx].q.begin(), pts[idx].q.end());
      chosen.push_back(v);
      if (integer_rank(chosen) == static_cast<int>(chosen.size())) {
        res.lambda.push_back(g);
        res.realisers.push_back(pts[idx]);
        if (static_cast<int>(chosen.size()) == d) return res;
      } else {
        chosen.pop_back();
      }
    }
    if (tt >= t_max) throw Error("minima search did not find a full-rank set");
    t *= 2;
  }
}

std::vector<double> minkowski_minima(const LatticeQ& L, const Region& R, bool dual, std::uint64_t budget) {
  return minkowski_minima(L, Body::of(R, dual), dual, budget).lambda;
}

ShortVector shortest_vector(const LatticeQ& L, bool dual, std::uint64_t budget) {
  const int d = L.d();
  auto b = L.basis(dual);
  reduction::Mat<double> u(d, std::vector<double>(d, 0.0));
  for (int k = 0; k < d; ++k) u[k][k] = 1;
  reduction::lll(b, u);
  ShortVector best;
  best.length = INFINITY;
  std::vector<double> zero(d, 0.0);
  double r2 = reduction::dot(b[0], b[0]) * (1 + 1e-9);
  std::size_t nodes = reduction::fincke_pohst(
      b, zero, r2,
      [&](const std::vector<double>& x, double) {
        std::vector<std::int64_t> coeffs(d, 0);
        bool nonzero = false;
        for (int c = 0; c < d; ++c) {
          double v = 0;
          for (int k = 0; k < d; ++k) v += x[k] * u[k][c];
          coeffs[c] = std::llround(v);
          nonzero = nonzero || coeffs[c] != 0;
        }
        if (!nonzero) return;
        LatticePoint pt = make_point(L, coeffs, dual);
        double len = norm2(pt.embedded, 0, d);
        if (len < best.length) {
          best.length = len;
          best.point = std::move(pt);
          r2 = std::min(r2, len * len * (1 + 1e-9));
        }
      },
      budget);
  if (nodes > budget) throw BudgetExceeded(nodes, budget);
  return best;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = std::min(x.size(), y.size());
  if (k < 2) throw DegenerateInput("line fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = k * sxx - sx * sx;
  if (den == 0) throw DegenerateInput("line fit with constant abscissa");
  double slope = (k * sxy - sx * sy) / den;
  return {slope, (sy - slope * sx) / k};
}

DaniProfile dani_profile(const TargetMatrix& alpha, const QGrid& grid, std::uint64_t budget) {
  DaniProfile out;
  std::vector<double> lx, ly;
  for (double Q : grid.values()) {
    LatticeQ L(alpha, Q);
    double l1 = shortest_vector(L, true, budget).length;
    out.Q.push_back(Q);
    out.lambda1.push_back(l1);
    lx.push_back(std::log(Q));
    ly.push_back(std::log(l1));
  }
  if (lx.size() >= 2) std::tie(out.slope, out.intercept) = fit_line(lx, ly);
  return out;
}

bool check_notpsiapprox(const LatticeQ& L, const ApproxFn& psi, std::uint64_t budget) {
  Region R = Region::make(3 * capital(psi, L.Q()), 2);
  auto pts = points_in_region(L, R, false, budget);
  for (const LatticePoint& pt : pts) {
    bool zero = std::all_of(pt.p.begin(), pt.p.end(), [](auto v) { return v == 0; }) &&
                std::all_of(pt.q.begin(), pt.q.end(), [](auto v) { return v == 0; });
    if (!zero) return false;
  }
  return true;
}

bool check_assump1(const LatticeQ& L, double Delta, double C1, std::uint64_t budget) {
  return points_in_body(L, Body::box(2 * Delta, 2 * C1), 1.0, true, budget).empty();
}

}  // namespace twistlab
