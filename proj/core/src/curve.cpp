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

#include "twistlab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "kernels.hpp"
#include "twistlab/approx.hpp"
#include "twistlab/errors.hpp"

namespace twistlab {
namespace {

std::map<std::string, std::string> key_values(const std::string& body) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError("not a number: '" + s + "'");
  return v;
}

double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Extremes of a polynomial over [a, b].
std::pair<double, double> poly_range(const Poly& p, double a, double b) {
  double lo = std::min(p(a), p(b)), hi = std::max(p(a), p(b));
  for (double r : real_roots(p.derivative(), a, b)) {
    lo = std::min(lo, p(r));
    hi = std::max(hi, p(r));
  }
  return {lo, hi};
}

std::vector<double> grid_points(Interval I, std::size_t n) {
  std::vector<double> s(n);
  const double h = I.length() / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = I.lo + (static_cast<double>(k) + 0.5) * h;
  return s;
}

void require_inside(const Curve& curve, Interval I) {
  if (I.lo < curve.I0().lo - 1e-12 || I.hi > curve.I0().hi + 1e-12 || !(I.lo <= I.hi)) {
    throw DomainError("interval must lie inside I0");
  }
}

void charge_ball(int dim, double r, std::uint64_t budget) {
  charge_budget(std::pow(2 * std::floor(r) + 1, dim), budget);
}

}  // namespace

Curve::Curve(std::vector<Poly> coords, Interval I0, double trim) : coords_(std::move(coords)), I0_(I0) {
  if (coords_.empty()) throw DomainError("curve needs at least one coordinate");
  if (!(I0_.lo < I0_.hi)) throw DomainError("I0 must be a nondegenerate interval");
  const int m = static_cast<int>(coords_.size());
  std::vector<Poly> cur = coords_;
  for (int k = 1; k <= m; ++k) {
    for (Poly& p : cur) p = p.derivative();
    derivs_.push_back(cur);
  }
  // Identically vanishing Wronskian means the curve lies in an affine hyperplane.
  const int samples = 4096;
  double wmax = 0, scale = 1;
  for (int k = 1; k <= m; ++k) {
    double mk = 0;
    for (int j = 0; j <= 16; ++j) {
      auto d = derivative(I0_.lo + I0_.length() * j / 16.0, k);
      for (double x : d) mk = std::max(mk, std::abs(x));
    }
    scale *= std::max(mk, 1e-300);
  }
  std::vector<double> w(samples + 1);
  for (int j = 0; j <= samples; ++j) {
    w[j] = wronskian(I0_.lo + I0_.length() * j / samples);
    wmax = std::max(wmax, std::abs(w[j]));
  }
  if (wmax <= 1e-12 * scale) throw DegenerateInput("curve is degenerate: its Wronskian vanishes identically");
  std::vector<double> zeros;
  for (int j = 0; j < samples; ++j) {
    if (w[j] == 0) {
      zeros.push_back(I0_.lo + I0_.length() * j / samples);
    } else if ((w[j] < 0) != (w[j + 1] < 0) && w[j + 1] != 0) {
      double lo = I0_.lo + I0_.length() * j / samples, hi = I0_.lo + I0_.length() * (j + 1) / samples;
      double flo = w[j];
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = wronskian(mid);
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      zeros.push_back(0.5 * (lo + hi));
    }
  }
  if (w[samples] == 0) zeros.push_back(I0_.hi);
  std::vector<Interval> cut;
  for (double z : zeros) cut.push_back({z - trim, z + trim});
  pieces_ = IntervalSet(cut).complement(I0_).intervals();

  Poly speed2({0.0});
  for (const Poly& d : derivs_[0]) speed2 = speed2 + d * d;
  auto [lo, hi] = poly_range(speed2, I0_.lo, I0_.hi);
  if (!(lo > 0)) throw DegenerateInput("curve has a stationary point in I0");
  min_speed_ = std::sqrt(lo);
  max_speed_ = std::sqrt(hi);
  C2_ = std::max(max_speed_, 1 / min_speed_);
  std::ostringstream os;
  os << "poly:";
  for (int i = 0; i < m; ++i) {
    os << (i ? ";" : "");
    const auto& c = coords_[i].coeffs();
    bool first = true;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
      if (c[k] == 0 && !(k == 0 && first)) continue;
      os << (first ? "" : (c[k] < 0 ? "-" : "+"));
      double a = first ? c[k] : std::abs(c[k]);
      if (k == 0 || a != 1) os << a;
      if (k >= 1) os << "t";
      if (k >= 2) os << "^" << k;
      first = false;
    }
  }
  os << "@" << I0_.lo << "," << I0_.hi;
  spec_ = os.str();
}

Curve Curve::veronese(int m, Interval I0) {
  if (m < 1) throw DomainError("Veronese curve needs m >= 1");
  std::vector<Poly> c;
  for (int i = 1; i <= m; ++i) {
    std::vector<double> coef(i + 1, 0.0);
    coef[i] = 1;
    c.emplace_back(coef);
  }
  Curve out(std::move(c), I0);
  std::ostringstream os;
  os << "veronese:m=" << m << ",a=" << I0.lo << ",b=" << I0.hi;
  out.spec_ = os.str();
  return out;
}

Curve Curve::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "veronese") {
    auto kv = key_values(body);
    int m = kv.count("m") ? static_cast<int>(to_double(kv["m"])) : 2;
    double a = kv.count("a") ? to_double(kv["a"]) : 0.0;
    double b = kv.count("b") ? to_double(kv["b"]) : 1.0;
    return veronese(m, {a, b});
  }
  if (head == "poly") {
    Interval I0{0, 1};
    auto at = body.find('@');
    if (at != std::string::npos) {
      std::string range = body.substr(at + 1);
      body = body.substr(0, at);
      auto comma = range.find(',');
      if (comma == std::string::npos) throw UsageError("curve interval must be '@a,b'");
      I0 = {to_double(range.substr(0, comma)), to_double(range.substr(comma + 1))};
    }
    std::vector<Poly> c;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ';')) {
      std::replace(item.begin(), item.end(), 't', 'x');
      c.push_back(Poly::parse(item));
    }
    return Curve(std::move(c), I0);
  }
  throw UsageError("unknown curve: " + spec);
}

std::vector<double> Curve::value(double s) const {
  std::vector<double> v;
  for (const Poly& p : coords_) v.push_back(p(s));
  return v;
}

std::vector<double> Curve::derivative(double s, int k) const {
  std::vector<double> v;
  if (k < 1) return value(s);
  if (k > static_cast<int>(derivs_.size())) {
    std::vector<Poly> cur = derivs_.back();
    for (int j = static_cast<int>(derivs_.size()); j < k; ++j) {
      for (Poly& p : cur) p = p.derivative();
    }
    for (const Poly& p : cur) v.push_back(p(s));
    return v;
  }
  for (const Poly& p : derivs_[k - 1]) v.push_back(p(s));
  return v;
}

double Curve::wronskian(double s) const {
  const int m = this->m();
  std::vector<std::vector<double>> a(m, std::vector<double>(m));
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) a[i][k] = derivs_[k][i](s);
  }
  return determinant(a);
}

ScaleConfig ScaleConfig::parse(const std::string& spec) {
  ScaleConfig cfg;
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  if (head == "thm1") cfg.mode = ScaleMode::Thm1;
  else if (head == "thm2") cfg.mode = ScaleMode::Thm2;
  else if (head == "thm3") cfg.mode = ScaleMode::Thm3;
  else throw UsageError("unknown scale mode: " + spec);
  if (cfg.mode == ScaleMode::Thm1) cfg.eps = 0.25;
  if (colon != std::string::npos) {
    for (const auto& [k, v] : key_values(spec.substr(colon + 1))) {
      if (k == "eps") cfg.eps = to_double(v);
      else if (k == "beta") cfg.beta = to_double(v);
      else if (k == "Delta") cfg.Delta = to_double(v);
      else if (k == "C1") cfg.C1 = to_double(v);
      else if (k == "gamma") cfg.gamma = to_double(v);
      else throw UsageError("unknown scale parameter: " + k);
    }
  }
  return cfg;
}

std::string ScaleConfig::spec() const {
  std::ostringstream os;
  os.precision(17);
  switch (mode) {
    case ScaleMode::Thm1: os << "thm1:eps=" << eps << ",gamma=" << gamma; break;
    case ScaleMode::Thm2: os << "thm2:beta=" << beta; break;
    case ScaleMode::Thm3: os << "thm3:eps=" << eps << ",Delta=" << Delta; break;
  }
  os << ",C1=" << C1;
  return os.str();
}

ApproxFn scale_delta(const ScaleConfig& cfg, const ApproxFn& psi) {
  if (cfg.delta) return *cfg.delta;
  const SystemShape& sh = psi.shape();
  const double m = sh.m, n = sh.n;
  if (cfg.mode == ScaleMode::Thm1) {
    double gamma = cfg.gamma;
    if (!(gamma > 0)) {
      if (sh.m < 2) throw DomainError("default gamma needs m >= 2");
      double inv = n / m - (n - 2 * cfg.eps) / (2 * m * m * (m - 1));
      if (!(inv > 0)) throw DomainError("default gamma is not positive for this eps");
      gamma = 1 / inv;
    }
    return ApproxFn::power_law(SystemShape{sh.n, sh.m}, 1.0, gamma);
  }
  if (cfg.mode == ScaleMode::Thm2) {
    int level = (psi.family() == Family::HardyH || psi.family() == Family::HardyPhi) ? psi.level() : 1;
    ApproxFn phi = ApproxFn::hardy_phi(sh, level);
    const double beta = cfg.beta;
    auto f = [phi, beta, m, n](double q) {
      return std::pow(q, -m / n) * std::pow(capital(phi, q), beta);
    };
    std::ostringstream name;
    name << "transfer(i=" << level << ",beta=" << beta << ")";
    return ApproxFn::custom(SystemShape{sh.n, sh.m}, name.str(), f, phi.threshold());
  }
  throw DomainError("constant-Delta mode has no delta function");
}

ScaleSet compute_scales(const ScaleConfig& cfg, const ApproxFn& psi, double Q) {
  const SystemShape& sh = psi.shape();
  const double m = sh.m, n = sh.n;
  if (!(cfg.C1 > 0)) throw DomainError("C1 must be positive");
  ScaleSet s;
  s.Q = Q;
  s.mode = cfg.mode;
  s.C1 = cfg.C1;
  s.psi = psi(Q);
  s.Psi = capital(psi, Q);
  const double up = std::pow(Q, n / m);
  auto Delta_from_delta = [&]() {
    ApproxFn delta = scale_delta(cfg, psi);
    try {
      return 0.5 / up * inverse(delta, 2 * cfg.C1 / Q);
    } catch (const RangeError& e) {
      throw DomainError(std::string("Delta(Q) undefined: ") + e.what());
    }
  };
  const double k = m * (m - 1);
  switch (cfg.mode) {
    case ScaleMode::Thm1:
      s.theta = std::pow(Q, -(n + cfg.eps) / (2 * m));
      s.Theta = up * s.theta;
      s.Delta = Delta_from_delta();
      s.eta = s.Theta / (std::pow(s.Psi, 1 - k) * std::pow(s.Delta, -k));
      break;
    case ScaleMode::Thm2:
      s.eta = 1 / s.Psi;
      s.Delta = Delta_from_delta();
      s.Theta = s.eta * std::pow(s.Psi, 1 - k) * std::pow(s.Delta, -k);
      s.theta = s.Theta / up;
      break;
    case ScaleMode::Thm3:
      s.eta = std::pow(Q, cfg.eps);
      s.Delta = cfg.Delta;
      s.Theta = s.eta * std::pow(s.Psi, 1 - k) * std::pow(s.Delta, -k);
      s.theta = s.Theta / up;
      break;
  }
  s.theta_above_dirichlet = 1 / up <= s.theta;
  s.theta_below_sqrt_psi = s.theta <= std::sqrt(s.psi) / std::log(Q);
  s.Delta_at_most_one = s.Delta <= 1;
  return s;
}

bool sq_contains(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                 std::uint64_t budget) {
  if (!curve.I0().contains(s)) throw DomainError("s outside I0");
  return in_A_psi_Q(alpha, curve.value(s), psi, Q, budget);
}

std::vector<bool> sq_grid(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi,
                          double Q, std::size_t gridsize, std::uint64_t budget) {
  require_inside(curve, I);
  if (alpha.m() != curve.m()) throw ShapeMismatch("curve dimension differs from m");
  const int m = alpha.m(), n = alpha.n();
  charge_ball(n, Q, budget);
  const double r = psi(Q);
  const double r2 = r * r;
  auto s = grid_points(I, gridsize);
  // Fractional parts of f(s), and the grid sorted by the first one.
  std::vector<std::vector<double>> fr(gridsize, std::vector<double>(m));
  std::vector<std::pair<double, std::size_t>> key(gridsize);
  for (std::size_t k = 0; k < gridsize; ++k) {
    auto v = curve.value(s[k]);
    for (int i = 0; i < m; ++i) fr[k][i] = v[i] - std::floor(v[i]);
    key[k] = {fr[k][0], k};
  }
  std::sort(key.begin(), key.end());
  std::vector<double> keys(gridsize);
  for (std::size_t k = 0; k < gridsize; ++k) keys[k] = key[k].first;
  std::vector<bool> hit(gridsize, false);
  detail::SplitMatrix split(alpha);
  std::vector<double> off(m);

  auto test = [&](std::size_t idx) {
    std::size_t k = key[idx].second;
    if (hit[k]) return;
    double d2 = 0;
    for (int i = 0; i < m && d2 <= r2; ++i) {
      double x = off[i] + fr[k][i];
      x -= std::nearbyint(x);
      d2 += x * x;
    }
    if (d2 <= r2) hit[k] = true;
  };
  auto scan = [&](double lo, double hi) {
    auto a = std::lower_bound(keys.begin(), keys.end(), lo) - keys.begin();
    auto b = std::upper_bound(keys.begin(), keys.end(), hi) - keys.begin();
    for (auto idx = a; idx < b; ++idx) test(static_cast<std::size_t>(idx));
  };
  detail::for_each_in_ball(n, Q * Q, [&](const std::vector<std::int64_t>& q) {
    for (int i = 0; i < m; ++i) off[i] = split.row(i, q.data()).f;
    if (r >= 0.5) {
      for (std::size_t idx = 0; idx < gridsize; ++idx) test(idx);
      return;
    }
    // frac(f_1) within r of -off_0 modulo 1.
    double t = -off[0];
    t -= std::floor(t);
    double lo = t - r, hi = t + r;
    scan(std::max(lo, 0.0), std::min(hi, 1.0));
    if (lo < 0) scan(lo + 1, 1.0);
    if (hi > 1) scan(0.0, hi - 1);
  });
  return hit;
}

GridMeasure sq_measure(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                       std::size_t gridsize, std::uint64_t budget) {
  if (gridsize == 0) throw DomainError("gridsize must be positive");
  auto hit = sq_grid(curve, I, alpha, psi, Q, gridsize, budget);
  GridMeasure g;
  g.gridsize = gridsize;
  g.hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), true));
  g.measure = I.length() * static_cast<double>(g.hits) / static_cast<double>(gridsize);
  g.resolution = I.length() / static_cast<double>(gridsize);
  return g;
}

IntervalSet sq_set(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                   std::uint64_t budget) {
  require_inside(curve, I);
  if (alpha.m() != curve.m()) throw ShapeMismatch("curve dimension differs from m");
  const int m = alpha.m(), n = alpha.n();
  charge_ball(n, Q, budget);
  const double r = psi(Q);
  std::vector<std::pair<double, double>> range(m);
  for (int i = 0; i < m; ++i) range[i] = poly_range(curve.coords()[i], I.lo, I.hi);
  detail::SplitMatrix split(alpha);
  std::vector<Interval> parts;
  std::vector<double> off(m);
  std::vector<std::int64_t> lo(m), hi(m), p(m);
  detail::for_each_in_ball(n, Q * Q, [&](const std::vector<std::int64_t>& q) {
    for (int i = 0; i < m; ++i) {
      off[i] = split.row(i, q.data()).f;
      lo[i] = static_cast<std::int64_t>(std::ceil(-range[i].second - off[i] - r));
      hi[i] = static_cast<std::int64_t>(std::floor(-range[i].first - off[i] + r));
      if (lo[i] > hi[i]) return;
    }
    p = lo;
    while (true) {
      Poly g({-r * r});
      for (int i = 0; i < m; ++i) {
        Poly c = curve.coords()[i] + (off[i] + static_cast<double>(p[i]));
        g = g + c * c;
      }
      IntervalSet piece = nonpositive_set(g, I.lo, I.hi);
      parts.insert(parts.end(), piece.intervals().begin(), piece.intervals().end());
      int k = m - 1;
      while (k >= 0 && p[k] == hi[k]) {
        p[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++p[k];
    }
  });
  return IntervalSet(std::move(parts));
}

IntervalSet stilde(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi, double Q,
                   double c, double theta, std::uint64_t budget) {
  if (!curve.I0().contains(s)) throw DomainError("s outside I0");
  if (alpha.m() != curve.m()) throw ShapeMismatch("curve dimension differs from m");
  const int m = alpha.m(), n = alpha.n();
  charge_ball(n, Q, budget);
  const double r = c * psi(Q);
  auto f = curve.value(s);
  auto fp = curve.derivative(s, 1);
  std::vector<double> w(m), base(m);
  double A = 0;
  for (int i = 0; i < m; ++i) {
    w[i] = theta * fp[i];
    A += w[i] * w[i];
    base[i] = f[i] - std::nearbyint(f[i]);
  }
  detail::SplitMatrix split(alpha);
  std::vector<Interval> parts;
  std::vector<double> v0(m), v(m);
  std::vector<std::int64_t> lo(m), hi(m), p(m);
  detail::for_each_in_ball(n, Q * Q, [&](const std::vector<std::int64_t>& q) {
    for (int i = 0; i < m; ++i) {
      v0[i] = split.row(i, q.data()).f + base[i];
      lo[i] = static_cast<std::int64_t>(std::ceil(-(v0[i] + std::abs(w[i])) - r));
      hi[i] = static_cast<std::int64_t>(std::floor(-(v0[i] - std::abs(w[i])) + r));
      if (lo[i] > hi[i]) return;
    }
    p = lo;
    while (true) {
      double B = 0, C = -r * r;
      for (int i = 0; i < m; ++i) {
        v[i] = v0[i] + static_cast<double>(p[i]);
        B += v[i] * w[i];
        C += v[i] * v[i];
      }
      // A x^2 + 2 B x + C <= 0
      if (A == 0) {
        if (C <= 0) parts.push_back({-1, 1});
      } else {
        double disc = B * B - A * C;
        if (disc >= 0) {
          double sq = std::sqrt(disc);
          double t = -(B + std::copysign(sq, B));
          double x1 = t / A;
          double x2 = t != 0 ? C / t : x1;
          double xlo = std::max(std::min(x1, x2), -1.0);
          double xhi = std::min(std::max(x1, x2), 1.0);
          if (xlo <= xhi) parts.push_back({xlo, xhi});
        }
      }
      int k = m - 1;
      while (k >= 0 && p[k] == hi[k]) {
        p[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++p[k];
    }
  });
  return IntervalSet(std::move(parts));
}

GoodBad::GoodBad(const Curve& curve, const TargetMatrix& alpha, const ScaleSet& scales, std::uint64_t budget)
    : curve_(&curve), scales_(scales) {
  if (alpha.m() != curve.m()) throw ShapeMismatch("curve dimension differs from m");
  const int m = alpha.m();
  LatticeQ L(alpha, scales.Q);
  auto pts = points_in_body(L, Body::box(2 * scales.C1 / scales.Psi, scales.C1), 1.0, true, budget);
  const double tol = scales.C1 / scales.Theta;
  std::vector<Interval> parts;
  const auto& I0 = curve.I0();
  for (const LatticePoint& pt : pts) {
    std::vector<double> P(pt.embedded.begin(), pt.embedded.begin() + m);
    Poly h({0.0});
    std::vector<Poly> cur = curve.coords();
    for (int i = 0; i < m; ++i) h = h + cur[i].derivative() * P[i];
    IntervalSet piece = sublevel_set(h, tol, I0.lo, I0.hi);
    parts.insert(parts.end(), piece.intervals().begin(), piece.intervals().end());
    points_.push_back(std::move(P));
  }
  bad_ = IntervalSet(std::move(parts));
}

bool GoodBad::is_good(double s) const {
  auto fp = curve_->derivative(s, 1);
  const double tol = scales_.C1 / scales_.Theta;
  for (const auto& P : points_) {
    double d = 0;
    for (std::size_t i = 0; i < P.size(); ++i) d += P[i] * fp[i];
    if (std::abs(d) <= tol) return false;
  }
  return true;
}

bool is_good(const Curve& curve, double s, const TargetMatrix& alpha, const ScaleSet& scales,
             std::uint64_t budget) {
  if (!curve.I0().contains(s)) throw DomainError("s outside I0");
  return GoodBad(curve, alpha, scales, budget).is_good(s);
}

BadMeasure bq_measure(const Curve& curve, Interval I, const TargetMatrix& alpha, const ScaleSet& scales,
                      std::size_t gridsize, std::uint64_t budget) {
  require_inside(curve, I);
  if (gridsize == 0) throw DomainError("gridsize must be positive");
  GoodBad gb(curve, alpha, scales, budget);
  std::size_t bad = 0;
  for (double s : grid_points(I, gridsize)) bad += gb.is_good(s) ? 0 : 1;
  BadMeasure out;
  out.measure = I.length() * static_cast<double>(bad) / static_cast<double>(gridsize);
  out.exact = gb.bad_set().clip(I).measure();
  out.resolution = I.length() / static_cast<double>(gridsize);
  const double m = alpha.m();
  if (alpha.m() >= 2) {
    out.bound = std::pow(scales.Delta, -m) * std::pow(scales.Psi / scales.Theta, 1 / (m - 1)) *
                std::pow(scales.Psi, -m);
  } else {
    out.bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

SandwichReport sandwich_check(const Curve& curve, double s, const TargetMatrix& alpha, const ApproxFn& psi,
                              double Q, double theta, std::size_t xgrid, std::uint64_t budget) {
  Interval ball{s - theta, s + theta};
  if (ball.lo < curve.I0().lo || ball.hi > curve.I0().hi) throw DomainError("B(s, theta) must lie inside I0");
  if (xgrid < 2) throw DomainError("xgrid must be at least 2");
  IntervalSet small = stilde(curve, s, alpha, psi, Q, 0.5, theta, budget);
  IntervalSet big = stilde(curve, s, alpha, psi, Q, 1.5, theta, budget);
  IntervalSet SQ = sq_set(curve, ball, alpha, psi, Q, budget);
  SandwichReport rep;
  const double tol = 1e-9;
  for (std::size_t k = 0; k < xgrid; ++k) {
    double x = -1 + 2 * static_cast<double>(k) / static_cast<double>(xgrid - 1);
    double t = s + theta * x;
    if (small.endpoint_distance(x) < tol || big.endpoint_distance(x) < tol ||
        SQ.endpoint_distance(t) < tol * theta) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    bool in_small = small.contains(x), in_sq = SQ.contains(t), in_big = big.contains(x);
    if (in_small && !in_sq) ++rep.lower_violations;
    if (in_sq && !in_big) ++rep.upper_violations;
  }
  rep.violations = rep.lower_violations + rep.upper_violations;
  return rep;
}

SPrime sprime_build(const Curve& curve, const TargetMatrix& alpha, const ApproxFn& psi, const ScaleSet& scales,
                    std::uint64_t budget) {
  SPrime out;
  const double theta = scales.theta;
  Interval host{curve.I0().lo + theta, curve.I0().hi - theta};
  if (!(host.lo <= host.hi)) return out;
  GoodBad gb(curve, alpha, scales, budget);
  out.bad = gb.bad_set();
  IntervalSet good = out.bad.complement(host);
  double x = host.lo;
  for (const Interval& iv : good.intervals()) {
    while (true) {
      double cand = std::max(x, iv.lo);
      if (cand > iv.hi) break;
      // Endpoints shared with the closed bad set are themselves bad.
      if (!gb.is_good(cand)) {
        double nudged = cand + 1e-12 * std::max(1.0, std::abs(cand));
        if (nudged > iv.hi || !gb.is_good(nudged)) break;
        cand = nudged;
      }
      out.anchors.push_back(cand);
      x = cand + 3 * theta;
    }
  }
  std::vector<Interval> parts;
  for (double a : out.anchors) {
    IntervalSet local = stilde(curve, a, alpha, psi, scales.Q, 0.5, theta, budget);
    for (const Interval& iv : local.intervals()) {
      parts.push_back({a + theta * iv.lo, a + theta * iv.hi});
    }
  }
  out.set = IntervalSet(std::move(parts)).dilate(2 * curve.C2() * scales.psi);
  return out;
}

ComponentReport component_stats(const IntervalSet& S, const ApproxFn& psi, const ApproxFn& phi, double Q,
                                double C2, double gap_constant) {
  ComponentReport r;
  r.components = S.size();
  r.size_lo = 4 * C2 * psi(Q);
  r.size_hi = 6 * C2 * psi(Q);
  if (S.empty()) return r;
  r.min_length = S.min_length();
  r.max_length = S.max_length();
  r.min_gap = S.min_gap();
  r.gap_ratio = r.min_gap / phi(Q);
  const double tol = 1e-12 * r.size_hi;
  r.size_pass = r.min_length >= r.size_lo - tol && r.max_length <= r.size_hi + tol;
  r.separation_pass = r.min_gap >= gap_constant * phi(Q);
  return r;
}

OverlapSums overlap_sums(const std::vector<IntervalSet>& sets, Interval I) {
  OverlapSums o;
  if (!(I.length() > 0)) throw DomainError("overlap interval must have positive length");
  std::vector<IntervalSet> clipped;
  for (const IntervalSet& s : sets) clipped.push_back(s.clip(I));
  for (const IntervalSet& s : clipped) o.c_hat += s.measure() / I.length();
  for (std::size_t i = 0; i < clipped.size(); ++i) {
    for (std::size_t j = i + 1; j < clipped.size(); ++j) {
      o.pairwise += clipped[i].intersect(clipped[j]).measure() / I.length();
    }
  }
  if (o.c_hat > 0) {
    o.C_hat = o.pairwise / (o.c_hat * o.c_hat);
    o.gdbc_bound = 1 / (2 * o.C_hat + 1 / o.c_hat);
  }
  return o;
}

OverlapSums overlap_sums(const Curve& curve, Interval I, const TargetMatrix& alpha, const ApproxFn& psi,
                         const std::vector<double>& Qset, const ScaleConfig& cfg, std::uint64_t budget) {
  std::vector<IntervalSet> sets;
  for (double Q : Qset) sets.push_back(sprime_build(curve, alpha, psi, compute_scales(cfg, psi, Q), budget).set);
  return overlap_sums(sets, I);
}

SublevelReport sublevel_measure(const Curve& curve, const std::vector<double>& p, double delta, Interval I,
                                double constant) {
  const int m = curve.m();
  if (static_cast<int>(p.size()) != m) throw ShapeMismatch("p must have m entries");
  if (m < 2) throw Unsupported("sublevel bound needs m >= 2");
  double pn = 0;
  for (double x : p) pn += x * x;
  pn = std::sqrt(pn);
  if (pn == 0) throw ZeroVector("p must be nonzero");
  require_inside(curve, I);
  Poly h({0.0});
  for (int i = 0; i < m; ++i) h = h + curve.coords()[i].derivative() * p[i];
  SublevelReport r;
  r.measure = sublevel_set(h, delta, I.lo, I.hi).measure();
  r.bound = std::pow(delta / pn, 1.0 / (m - 1));
  r.pass = r.measure <= constant * r.bound * (1 + 1e-12);
  return r;
}

}  // namespace twistlab
