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

#include "twistlab/approxfn.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {
namespace {

// exp applied i times to 1: the point where the i-th iterated log equals 1.
double iterated_exp_one(int i) {
  double x = 1.0;
  for (int k = 0; k < i; ++k) x = std::exp(x);
  return x;
}

// d/du of log phi_i(e^u); u = log q.
double hardy_phi_slope(const SystemShape& shape, int i, double u) {
  double L = u, dL = 1.0;
  double sum = dL / L;
  double l2_term = 0.0;
  for (int k = 2; k <= i || k <= 2; ++k) {
    dL = dL / L;
    L = std::log(L);
    if (k <= i) sum += dL / L;
    if (k == 2) l2_term = dL / L;
  }
  return -(shape.n + sum) / shape.m + l2_term;
}

double hardy_phi_threshold(const SystemShape& shape, int i) {
  double u_lo = std::log(iterated_exp_one(i));
  if (i == 1) u_lo = 1.0;
  // Positive slope just above the domain edge; find the last sign change.
  double u = u_lo * (1.0 + 1e-9) + 1e-12;
  double last_pos = u;
  double step = 1e-3 * std::max(1.0, u);
  for (double x = u; x < std::max(200.0, 10 * u); x += step) {
    if (hardy_phi_slope(shape, i, x) >= 0) last_pos = x;
  }
  double lo = last_pos, hi = last_pos + step;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (hardy_phi_slope(shape, i, mid) >= 0) lo = mid; else hi = mid;
  }
  return std::max(iterated_exp_one(i), std::exp(hi));
}

std::map<std::string, std::string> parse_params(const std::string& body) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("approximation function parameter without '=': " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double param_real(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw UsageError("missing parameter '" + key + "'");
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != it->second.size()) throw UsageError("bad value for '" + key + "': " + it->second);
  return v;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

SystemShape SystemShape::make(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("system shape needs m >= 1 and n >= 1");
  return SystemShape{m, n};
}

QGrid QGrid::make(int kmin, int kmax) {
  if (kmin > kmax) throw DomainError("empty Q grid");
  if (kmax > 62 || kmin < -60) throw DomainError("Q grid exponent out of range");
  return QGrid{kmin, kmax};
}

std::vector<double> QGrid::values() const {
  std::vector<double> v;
  for (int k = kmin; k <= kmax; ++k) v.push_back(std::ldexp(1.0, k));
  return v;
}

ApproxFn ApproxFn::power_law(SystemShape shape, double c, double tau) {
  if (!(c > 0) || !(tau > 0)) throw DomainError("power law needs c > 0 and tau > 0");
  ApproxFn f(Family::PowerLaw, shape);
  f.c_ = c;
  f.tau_ = tau;
  return f;
}

ApproxFn ApproxFn::hardy_h(SystemShape shape, int i) {
  if (i < 1) throw DomainError("Hardy ladder index must be >= 1");
  ApproxFn f(Family::HardyH, shape);
  f.level_ = i;
  f.threshold_ = iterated_exp_one(i);
  return f;
}

ApproxFn ApproxFn::hardy_phi(SystemShape shape, int i) {
  if (i < 1) throw DomainError("Hardy ladder index must be >= 1");
  ApproxFn f(Family::HardyPhi, shape);
  f.level_ = i;
  f.threshold_ = hardy_phi_threshold(shape, i);
  return f;
}

ApproxFn ApproxFn::double_log(SystemShape shape) {
  ApproxFn f(Family::DoubleLogCutoff, shape);
  f.threshold_ = 1.0;
  return f;
}

ApproxFn ApproxFn::dirichlet(SystemShape shape, double c) {
  if (!(c > 0)) throw DomainError("scaled Dirichlet function needs c > 0");
  ApproxFn f(Family::ScaledDirichlet, shape);
  f.c_ = c;
  f.tau_ = shape.ratio();
  return f;
}

ApproxFn ApproxFn::custom(SystemShape shape, std::string name, std::function<double(double)> fn,
                          double threshold) {
  ApproxFn f(Family::Custom, shape);
  f.name_ = std::move(name);
  f.threshold_ = threshold;
  f.custom_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  return f;
}

ApproxFn ApproxFn::parse(const std::string& spec, SystemShape shape) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1));
  if (head == "power") return power_law(shape, param_real(params, "c"), param_real(params, "tau"));
  if (head == "dirichlet") return dirichlet(shape, param_real(params, "c"));
  if (head == "double_log") return double_log(shape);
  if (head == "hardy_h" || head == "hardy_phi") {
    double i = param_real(params, "i");
    if (i != std::floor(i)) throw UsageError("Hardy ladder index must be an integer");
    return head == "hardy_h" ? hardy_h(shape, static_cast<int>(i)) : hardy_phi(shape, static_cast<int>(i));
  }
  throw UsageError("unknown approximation function: " + spec);
}

std::string ApproxFn::spec() const {
  switch (family_) {
    case Family::PowerLaw: return "power:c=" + fmt(c_) + ",tau=" + fmt(tau_);
    case Family::HardyH: return "hardy_h:i=" + std::to_string(level_);
    case Family::HardyPhi: return "hardy_phi:i=" + std::to_string(level_);
    case Family::DoubleLogCutoff: return "double_log";
    case Family::ScaledDirichlet: return "dirichlet:c=" + fmt(c_);
    case Family::Custom: return "custom:" + name_;
  }
  return "";
}

double iterated_log(double q, int i) {
  for (int k = 0; k < i; ++k) q = std::log(q);
  return q;
}

double ApproxFn::operator()(double q) const {
  if (!(q > threshold_)) throw DomainError("approximation function evaluated at or below its domain threshold");
  const double m = shape_.m, n = shape_.n;
  switch (family_) {
    case Family::PowerLaw:
    case Family::ScaledDirichlet:
      return c_ * std::pow(q, -tau_);
    case Family::HardyH:
    case Family::HardyPhi: {
      // Work in logs so that q^n does not overflow.
      double log_denom = n * std::log(q);
      double L = q;
      for (int k = 1; k <= level_; ++k) {
        L = std::log(L);
        log_denom += std::log(L);
      }
      double h = std::exp(-log_denom / m);
      if (family_ == Family::HardyPhi) h *= std::log(std::log(q));
      return h;
    }
    case Family::DoubleLogCutoff: {
      double lq = std::log(q);
      return std::exp(-(n * lq + 2.0 * std::log(lq)) / m);
    }
    case Family::Custom:
      return (*custom_)(q);
  }
  return 0.0;
}

double eval(const ApproxFn& fn, double q) { return fn(q); }

double capital(const ApproxFn& fn, double q) {
  if (fn.family() == Family::ScaledDirichlet) {
    if (!(q > fn.threshold())) throw DomainError("approximation function evaluated at or below its domain threshold");
    return fn.c();
  }
  return std::pow(q, fn.shape().ratio()) * fn(q);
}

DoublingCheck is_doubling(const ApproxFn& fn, double K, const QGrid& grid) {
  if (!(K > 1)) throw DomainError("doubling constant must exceed 1");
  DoublingCheck out;
  for (double q : grid.values()) {
    if (fn(q) > K * fn(2 * q) * (1 + 1e-12)) {
      out.doubling = false;
      out.witness = q;
      return out;
    }
  }
  return out;
}

double series_partial(const ApproxFn& fn, std::int64_t qmax) {
  if (static_cast<double>(qmax) <= fn.threshold()) throw DomainError("qmax below the domain threshold");
  const int m = fn.shape().m, n = fn.shape().n;
  auto q0 = static_cast<std::int64_t>(std::floor(fn.threshold())) + 1;
  if (q0 < 1) q0 = 1;
  // Neumaier summation in long double.
  long double sum = 0, comp = 0;
  for (std::int64_t q = qmax; q >= q0; --q) {
    double qd = static_cast<double>(q);
    long double term = std::pow(static_cast<long double>(qd), n - 1) *
                       std::pow(static_cast<long double>(fn(qd)), m);
    long double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term)) comp += (sum - t) + term;
    else comp += (term - t) + sum;
    sum = t;
  }
  return static_cast<double>(sum + comp);
}

double condensed_sum(const ApproxFn& fn, const QGrid& grid) {
  long double sum = 0;
  for (double Q : grid.values()) sum += std::pow(static_cast<long double>(capital(fn, Q)), fn.shape().m);
  return static_cast<double>(sum);
}

Series classify_series(const ApproxFn& fn) {
  switch (fn.family()) {
    case Family::PowerLaw: return fn.tau() > fn.shape().ratio() ? Series::Converges : Series::Diverges;
    case Family::HardyH:
    case Family::HardyPhi:
    case Family::ScaledDirichlet: return Series::Diverges;
    case Family::DoubleLogCutoff: return Series::Converges;
    case Family::Custom: break;
  }
  throw Unsupported("series classification is only available for built-in families");
}

double inverse(const ApproxFn& fn, double y) {
  if (!(y > 0) || !std::isfinite(y)) throw RangeError("inverse needs a positive finite value");
  if (fn.family() == Family::PowerLaw || fn.family() == Family::ScaledDirichlet) {
    return std::pow(fn.c() / y, 1.0 / fn.tau());
  }
  const double t = fn.threshold();
  // Bracket in u = log q.
  double lo = t > 0 ? std::log(t) : -700.0;
  double q_edge = t > 0 ? t * (1 + 1e-15) : std::exp(lo);
  if (!(y < fn(q_edge))) throw RangeError("value above the range of the approximation function");
  double hi = std::max(lo + 1.0, 1.0);
  while (fn(std::exp(hi)) > y) {
    hi = lo + 2 * (hi - lo);
    if (hi > 700) throw RangeError("value below the range of the approximation function");
  }
  for (int it = 0; it < 300; ++it) {
    double mid = 0.5 * (lo + hi);
    double qm = std::exp(mid);
    if (!(qm > t) || fn(qm) > y) lo = mid; else hi = mid;
    if (hi - lo < 1e-14) break;
  }
  return std::exp(0.5 * (lo + hi));
}

const char* to_string(Series s) { return s == Series::Converges ? "Converges" : "Diverges"; }

}  // namespace twistlab
