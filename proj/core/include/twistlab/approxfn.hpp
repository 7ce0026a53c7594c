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

#ifndef TWISTLAB_APPROXFN_HPP_
#define TWISTLAB_APPROXFN_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

// Dimensions of the system q -> alpha q + beta, alpha being m x n.
struct SystemShape {
  int m = 2;
  int n = 1;

  static SystemShape make(int m, int n);
  int d() const { return m + n; }
  // n/m, the Dirichlet exponent.
  double ratio() const { return static_cast<double>(n) / m; }
  bool operator==(const SystemShape&) const = default;
};

// Dyadic scales {2^k : kmin <= k <= kmax}.
struct QGrid {
  int kmin = 0;
  int kmax = 0;

  static QGrid make(int kmin, int kmax);
  std::vector<double> values() const;
  std::size_t size() const { return static_cast<std::size_t>(kmax - kmin + 1); }
};

enum class Family { PowerLaw, HardyH, HardyPhi, DoubleLogCutoff, ScaledDirichlet, Custom };

enum class Series { Converges, Diverges };

// An approximation function psi from a closed family. Custom functions can be
// evaluated and inverted but are not classified.
class ApproxFn {
 public:
  static ApproxFn power_law(SystemShape shape, double c, double tau);
  static ApproxFn hardy_h(SystemShape shape, int i);
  static ApproxFn hardy_phi(SystemShape shape, int i);
  static ApproxFn double_log(SystemShape shape);
  static ApproxFn dirichlet(SystemShape shape, double c);
  // f must be positive and nonincreasing on (threshold, inf).
  static ApproxFn custom(SystemShape shape, std::string name,
                         std::function<double(double)> f, double threshold);

  // "power:c=1,tau=0.5", "hardy_h:i=2", "hardy_phi:i=1", "dirichlet:c=0.25",
  // "double_log".
  static ApproxFn parse(const std::string& spec, SystemShape shape);

  Family family() const { return family_; }
  const SystemShape& shape() const { return shape_; }
  double c() const { return c_; }
  double tau() const { return tau_; }
  int level() const { return level_; }
  // Evaluation requires q > threshold().
  double threshold() const { return threshold_; }
  std::string spec() const;

  double operator()(double q) const;

 private:
  ApproxFn(Family family, SystemShape shape) : family_(family), shape_(shape) {}

  Family family_;
  SystemShape shape_;
  double c_ = 1.0;
  double tau_ = 0.0;
  int level_ = 0;
  double threshold_ = 0.0;
  std::string name_;
  std::shared_ptr<const std::function<double(double)>> custom_;
};

// i-fold iterated natural logarithm.
double iterated_log(double q, int i);

double eval(const ApproxFn& fn, double q);
// Psi(q) = q^{n/m} psi(q).
double capital(const ApproxFn& fn, double q);

struct DoublingCheck {
  bool doubling = true;
  std::optional<double> witness;
};
// psi(q) <= K psi(2q) on every grid point (relative slack 1e-12 for rounding).
DoublingCheck is_doubling(const ApproxFn& fn, double K, const QGrid& grid);

// sum_{q = first integer above t_f}^{qmax} q^{n-1} psi^m(q).
double series_partial(const ApproxFn& fn, std::int64_t qmax);
// sum_{Q in grid} Psi^m(Q).
double condensed_sum(const ApproxFn& fn, const QGrid& grid);
Series classify_series(const ApproxFn& fn);
// q with psi(q) = y; closed form for power laws, else bisection in log q to
// relative tolerance 1e-12.
double inverse(const ApproxFn& fn, double y);

const char* to_string(Series s);

}  // namespace twistlab

#endif  // TWISTLAB_APPROXFN_HPP_
