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

#include "twistlab/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels.hpp"
#include "twistlab/errors.hpp"

namespace twistlab {
namespace {

struct Scanner {
  explicit Scanner(const TargetMatrix& alpha, const std::vector<double>& beta)
      : split(alpha), m(alpha.m()), n(alpha.n()) {
    if (!beta.empty() && static_cast<int>(beta.size()) != m) {
      throw ShapeMismatch("beta must have m = " + std::to_string(m) + " entries");
    }
    for (int i = 0; i < m; ++i) shift.push_back(detail::reduce(beta.empty() ? 0.0 : beta[i]));
    for (double a : alpha.entries_double()) scale = std::max(scale, std::abs(a));
  }

  // Offsets x_i = (alpha q + beta)_i reduced mod 1; fills the nearest p.
  double nearest(const std::int64_t* q, std::int64_t* p, double* x) const {
    double d2 = 0, qn = 0;
    for (int j = 0; j < n; ++j) qn += std::abs(static_cast<double>(q[j]));
    for (int i = 0; i < m; ++i) {
      detail::Reduced r = detail::add(split.row(i, q), shift[i]);
      double up = std::floor(r.f + 0.5);
      p[i] = -static_cast<std::int64_t>(r.k + up);
      double e = r.f - up;
      x[i] = r.f;
      d2 += e * e;
    }
    double tol = kZeroDistance * (1 + scale * qn);
    if (d2 < tol * tol) d2 = 0;
    return d2;
  }

  detail::SplitMatrix split;
  int m, n;
  std::vector<detail::Reduced> shift;
  double scale = 0;
};

double norm2(const IntVec& v) {
  double s = 0;
  for (auto x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return s;
}

// Candidate (d2, |q|^2, q, p) ordering.
struct Candidate {
  double d2 = std::numeric_limits<double>::infinity();
  double qn2 = 0;
  IntVec q, p;
  bool set = false;
};

// q with a negative leading entry sorts after its positive counterpart, so
// ties between q and -q resolve to the positive representative.
bool leads_negative(const IntVec& q) {
  auto first = std::find_if(q.begin(), q.end(), [](auto v) { return v != 0; });
  return first != q.end() && *first < 0;
}

bool q_less(const IntVec& a, const IntVec& b) {
  bool na = leads_negative(a), nb = leads_negative(b);
  if (na != nb) return nb;
  return a < b;
}

bool better(const Candidate& a, const Candidate& b) {
  if (!b.set) return a.set;
  if (!a.set) return false;
  if (a.d2 != b.d2) return a.d2 < b.d2;
  if (a.qn2 != b.qn2) return a.qn2 < b.qn2;
  if (a.q != b.q) return q_less(a.q, b.q);
  return a.p < b.p;
}

void charge_ball(int dim, double r, std::uint64_t budget) {
  charge_budget(std::pow(2 * std::floor(r) + 1, dim), budget);
}

}  // namespace

Approximation best_homogeneous(const TargetMatrix& alpha, double Qmax, std::uint64_t budget) {
  if (!(Qmax >= 1)) throw DomainError("no admissible q within the radius");
  Scanner sc(alpha, {});
  LatticeQ L(alpha, Qmax);
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  double a = std::sqrt(static_cast<double>(sc.m));
  for (int attempt = 0; attempt < 64; ++attempt, a *= 2) {
    Candidate best;
    for (const LatticePoint& pt : points_in_body(L, Body::box(a, 1), 1.0, false, budget)) {
      double qn2 = norm2(pt.q);
      if (qn2 == 0 || qn2 > Qmax * Qmax) continue;
      Candidate c;
      c.d2 = sc.nearest(pt.q.data(), p.data(), x.data());
      c.qn2 = qn2;
      c.q = pt.q;
      c.p = p;
      c.set = true;
      if (better(c, best)) best = c;
    }
    if (best.set) return Approximation{std::sqrt(best.d2), best.p, best.q};
  }
  throw DomainError("no admissible q within the radius");
}

std::vector<Approximation> best_twisted_profile(const TargetMatrix& alpha, const std::vector<double>& beta,
                                                const std::vector<double>& radii, bool exclude_zero_q,
                                                std::uint64_t budget) {
  if (radii.empty()) return {};
  const bool homogeneous =
      exclude_zero_q && std::all_of(beta.begin(), beta.end(), [](double b) { return b == 0; });
  if (homogeneous) {
    const int n = alpha.n();
    auto big = [n](double r) { return std::pow(2 * std::floor(r) + 1, n) > kScanLimit; };
    if (std::any_of(radii.begin(), radii.end(), big)) {
      std::vector<double> small;
      for (double r : radii) {
        if (!big(r)) small.push_back(r);
      }
      auto scanned = best_twisted_profile(alpha, beta, small, exclude_zero_q, budget);
      std::vector<Approximation> out;
      std::size_t k = 0;
      for (double r : radii) out.push_back(big(r) ? best_homogeneous(alpha, r, budget) : scanned[k++]);
      return out;
    }
  }
  Scanner sc(alpha, beta);
  std::vector<std::size_t> order(radii.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return radii[a] < radii[b]; });
  std::vector<double> r2;
  for (auto i : order) {
    if (!(radii[i] >= 0)) throw DomainError("radius must be nonnegative");
    r2.push_back(radii[i] * radii[i]);
  }
  const double rmax = radii[order.back()];
  charge_ball(sc.n, rmax, budget);

  std::vector<Candidate> bucket(r2.size());
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  Candidate cand;
  detail::for_each_in_ball(sc.n, r2.back(), [&](const std::vector<std::int64_t>& q) {
    double qn2 = 0;
    for (auto v : q) qn2 += static_cast<double>(v) * static_cast<double>(v);
    if (exclude_zero_q && qn2 == 0) return;
    double d2 = sc.nearest(q.data(), p.data(), x.data());
    std::size_t b = std::lower_bound(r2.begin(), r2.end(), qn2) - r2.begin();
    Candidate& best = bucket[b];
    if (best.set) {
      if (d2 > best.d2) return;
      if (d2 == best.d2 && qn2 > best.qn2) return;
    }
    cand.d2 = d2;
    cand.qn2 = qn2;
    cand.q = q;
    cand.p = p;
    cand.set = true;
    if (better(cand, best)) best = cand;
  });
  std::vector<Approximation> out(radii.size());
  Candidate run;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (better(bucket[k], run)) run = bucket[k];
    if (!run.set) throw DomainError("no admissible q within the radius");
    out[order[k]] = Approximation{std::sqrt(run.d2), run.p, run.q};
  }
  return out;
}

Approximation best_twisted(const TargetMatrix& alpha, const std::vector<double>& beta, double Qmax,
                           bool exclude_zero_q, std::uint64_t budget) {
  return best_twisted_profile(alpha, beta, {Qmax}, exclude_zero_q, budget)[0];
}

std::vector<Approximation> solutions(const TargetMatrix& alpha, const std::vector<double>& beta,
                                     const ApproxFn& psi, double Qmax, std::uint64_t budget) {
  Scanner sc(alpha, beta);
  charge_ball(sc.n, Qmax, budget);
  struct Hit {
    double qn2;
    Approximation a;
  };
  std::vector<Hit> hits;
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  detail::for_each_in_ball(sc.n, Qmax * Qmax, [&](const std::vector<std::int64_t>& q) {
    double qn2 = 0;
    for (auto v : q) qn2 += static_cast<double>(v) * static_cast<double>(v);
    double qn = std::sqrt(qn2);
    if (qn2 == 0 || !(qn > psi.threshold())) return;
    double r = psi(qn);
    sc.nearest(q.data(), p.data(), x.data());
    // x_i is the offset for p_i = nearest; other p within r of -x.
    std::vector<std::int64_t> lo(sc.m), hi(sc.m);
    for (int i = 0; i < sc.m; ++i) {
      // Offset of the candidate p_i + t is e + t.
      double e = x[i] - std::floor(x[i] + 0.5);
      lo[i] = static_cast<std::int64_t>(std::ceil(-r - e));
      hi[i] = static_cast<std::int64_t>(std::floor(r - e));
      if (lo[i] > hi[i]) return;
    }
    std::vector<std::int64_t> t = lo;
    while (true) {
      double d2 = 0;
      for (int i = 0; i < sc.m; ++i) {
        double e = x[i] - std::floor(x[i] + 0.5) + static_cast<double>(t[i]);
        d2 += e * e;
      }
      if (d2 <= r * r) {
        Approximation a;
        a.dist = std::sqrt(d2);
        a.q = q;
        for (int i = 0; i < sc.m; ++i) a.p.push_back(p[i] + t[i]);
        hits.push_back({qn2, std::move(a)});
      }
      int k = sc.m - 1;
      while (k >= 0 && t[k] == hi[k]) {
        t[k] = lo[k];
        --k;
      }
      if (k < 0) break;
      ++t[k];
    }
  });
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.qn2 != b.qn2) return a.qn2 < b.qn2;
    if (a.a.q != b.a.q) return a.a.q < b.a.q;
    return a.a.p < b.a.p;
  });
  std::vector<Approximation> out;
  for (auto& h : hits) out.push_back(std::move(h.a));
  return out;
}

bool in_A_psi_Q(const TargetMatrix& alpha, const std::vector<double>& beta, const ApproxFn& psi, double Q,
                std::uint64_t budget) {
  Scanner sc(alpha, beta);
  charge_ball(sc.n, Q, budget);
  const double r = psi(Q);
  const double r2 = r * r;
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  bool found = false;
  // for_each_in_ball has no early exit; the test is cheap next to the scan.
  detail::for_each_in_ball(sc.n, Q * Q, [&](const std::vector<std::int64_t>& q) {
    if (found) return;
    if (sc.nearest(q.data(), p.data(), x.data()) <= r2) found = true;
  });
  return found;
}

OmegaEstimate omega_estimate(const TargetMatrix& alpha, double Qmax, bool allow_zero, std::uint64_t budget) {
  Scanner sc(alpha, {});
  charge_ball(sc.n, Qmax, budget);
  struct Entry {
    double qn2, d2;
    IntVec q, p;
  };
  std::vector<Entry> all;
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  detail::for_each_in_ball(sc.n, Qmax * Qmax, [&](const std::vector<std::int64_t>& q) {
    // q and -q give the same distance; keep the one whose first nonzero entry is positive.
    auto first = std::find_if(q.begin(), q.end(), [](auto v) { return v != 0; });
    if (first == q.end() || *first < 0) return;
    double d2 = sc.nearest(q.data(), p.data(), x.data());
    all.push_back({norm2(q), d2, q, p});
  });
  std::stable_sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) { return a.qn2 < b.qn2; });
  OmegaEstimate out;
  double record = std::numeric_limits<double>::infinity();
  for (const Entry& e : all) {
    if (e.d2 >= record) continue;
    record = e.d2;
    double dist = std::sqrt(e.d2);
    out.trace.push_back({dist, e.p, e.q});
    if (dist == 0) {
      out.infinite = true;
      out.omega_hat = std::numeric_limits<double>::infinity();
      if (!allow_zero) throw DegenerateInput("exact zero distance found: omega is infinite");
      return out;
    }
  }
  // Small q are dominated by constants; use the records from sqrt(Qmax) on,
  // and always the last one.
  const double tail = std::sqrt(Qmax);
  for (std::size_t k = 0; k < out.trace.size(); ++k) {
    const Approximation& a = out.trace[k];
    double qn = std::sqrt(norm2(a.q));
    if (qn <= 1 || (qn < tail && k + 1 != out.trace.size())) continue;
    out.omega_hat = std::max(out.omega_hat, std::log(1 / a.dist) / std::log(qn));
  }
  return out;
}

Margin bad_margin(const TargetMatrix& alpha, const std::optional<std::vector<double>>& beta, double Qmax,
                  std::uint64_t budget) {
  Scanner sc(alpha, beta.value_or(std::vector<double>{}));
  charge_ball(sc.n, Qmax, budget);
  const double expo = alpha.shape().ratio();
  Margin out;
  out.margin = std::numeric_limits<double>::infinity();
  IntVec p(sc.m);
  std::vector<double> x(sc.m);
  detail::for_each_in_ball(sc.n, Qmax * Qmax, [&](const std::vector<std::int64_t>& q) {
    double qn2 = norm2(q);
    if (qn2 == 0) return;
    double d2 = sc.nearest(q.data(), p.data(), x.data());
    double v = std::pow(qn2, expo / 2) * std::sqrt(d2);
    if (v < out.margin || (v == out.margin && q_less(q, out.q))) {
      out.margin = v;
      out.q = q;
    }
  });
  if (out.q.empty()) throw DomainError("bad_margin needs Qmax >= 1");
  return out;
}

const char* to_string(Singularity s) {
  switch (s) {
    case Singularity::NonsingularEvidence: return "NonsingularEvidence";
    case Singularity::SingularEvidence: return "SingularEvidence";
    case Singularity::VerySingularEvidence: return "VerySingularEvidence";
  }
  return "";
}

SingularityProfile singularity_profile(const TargetMatrix& alpha, const QGrid& grid,
                                       const SingularityOptions& options, std::uint64_t budget) {
  SingularityProfile out;
  out.Q = grid.values();
  auto best = best_twisted_profile(alpha, {}, out.Q, true, budget);
  const double expo = alpha.shape().ratio();
  bool zero = false;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < out.Q.size(); ++k) {
    double e = std::pow(out.Q[k], expo) * best[k].dist;
    out.eps.push_back(e);
    if (e == 0) {
      zero = true;
    } else {
      lx.push_back(std::log(out.Q[k]));
      ly.push_back(std::log(e));
    }
  }
  const std::size_t half = out.Q.size() / 2;
  out.liminf = *std::min_element(out.eps.begin() + half, out.eps.end());
  if (zero) {
    out.slope = -std::numeric_limits<double>::infinity();
    out.classification = Singularity::VerySingularEvidence;
    return out;
  }
  if (lx.size() >= 2) out.slope = fit_line(lx, ly).first;
  // log eps(Q) / log Q over the upper half: very singular matrices keep it
  // below -threshold at every scale, not just on average.
  double worst_ratio = -std::numeric_limits<double>::infinity();
  for (std::size_t k = half; k < out.Q.size(); ++k) {
    if (out.Q[k] > 1) worst_ratio = std::max(worst_ratio, std::log(out.eps[k]) / std::log(out.Q[k]));
  }
  if (out.slope <= -options.slope_threshold && worst_ratio <= -options.slope_threshold) {
    out.classification = Singularity::VerySingularEvidence;
  } else if (out.liminf >= options.nonsingular_floor) {
    out.classification = Singularity::NonsingularEvidence;
  } else {
    out.classification = Singularity::SingularEvidence;
  }
  return out;
}

std::optional<Approximation> transpose_not_delta_check(const TargetMatrix& alpha, const ApproxFn& delta,
                                                       double Qmax, std::uint64_t budget) {
  TargetMatrix at = alpha.transpose();
  Scanner sc(at, {});
  charge_ball(sc.n, Qmax, budget);
  std::optional<Approximation> witness;
  double witness_n2 = 0;
  IntVec q(sc.m);
  std::vector<double> x(sc.m);
  detail::for_each_in_ball(sc.n, Qmax * Qmax, [&](const std::vector<std::int64_t>& p) {
    double pn2 = norm2(p);
    if (pn2 == 0) return;
    if (witness && pn2 >= witness_n2) return;
    double pn = std::sqrt(pn2);
    if (!(pn > delta.threshold())) return;
    double d2 = sc.nearest(p.data(), q.data(), x.data());
    double r = delta(pn);
    if (d2 <= r * r) {
      Approximation a;
      a.dist = std::sqrt(d2);
      // nearest() returns the p that cancels alpha^T p, so the integer
      // vector approximating alpha^T p is its negation.
      for (auto v : q) a.q.push_back(-v);
      a.p = p;
      witness = a;
      witness_n2 = pn2;
    }
  });
  return witness;
}

}  // namespace twistlab
