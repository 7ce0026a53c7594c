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

#include "twistlab/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "twistlab/errors.hpp"
#include "twistlab/poly.hpp"

namespace twistlab {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> key_values(const std::string& body) {
  std::map<std::string, std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("expected key=value in '" + body + "'");
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

std::int64_t to_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

// sum_{j >= 1} coef(j) base^{-j!}, truncated below the working precision.
Real liouville_sum(std::int64_t base, int precision_bits, std::int64_t (*coef)(int, int), int row) {
  Real x = 0;
  Real b = base;
  double log2b = std::log2(static_cast<double>(base));
  std::int64_t fact = 1;
  for (int j = 1; j < 20; ++j) {
    fact *= j;
    if (static_cast<double>(fact) * log2b > precision_bits + 64) break;
    x += Real(coef(row, j)) / boost::multiprecision::pow(b, Real(fact));
  }
  return x;
}

std::int64_t unit_coef(int, int) { return 1; }
std::int64_t column_coef(int row, int j) { return 1 + (j % row); }

}  // namespace

TargetMatrix::TargetMatrix(SystemShape shape, RealVec entries, int precision_bits, std::string provenance)
    : shape_(shape), entries_(std::move(entries)), precision_bits_(precision_bits), provenance_(std::move(provenance)) {
  if (static_cast<int>(entries_.size()) != shape_.m * shape_.n) {
    throw ShapeMismatch("matrix needs " + std::to_string(shape_.m * shape_.n) + " entries, got " +
                        std::to_string(entries_.size()));
  }
  if (precision_bits_ < 53) throw DomainError("matrix precision must be at least 53 bits");
  for (Real& e : entries_) {
    if (!boost::multiprecision::isfinite(e)) throw DomainError("matrix entries must be finite");
    e.precision(bits_to_digits10(precision_bits_));
    entries_d_.push_back(e.convert_to<double>());
  }
}

TargetMatrix TargetMatrix::zero(SystemShape shape, int precision_bits) {
  PrecisionScope scope(precision_bits);
  TargetMatrix t(shape, RealVec(shape.m * shape.n, Real(0)), precision_bits, "zero");
  t.denominator_ = 1;
  return t;
}

TargetMatrix TargetMatrix::rational(SystemShape shape,
                                    const std::vector<std::pair<std::int64_t, std::int64_t>>& entries,
                                    int precision_bits) {
  PrecisionScope scope(precision_bits);
  RealVec v;
  std::int64_t lcm = 1;
  std::string tag = "rational:";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto [num, den] = entries[k];
    if (den <= 0) throw DomainError("rational entries need a positive denominator");
    v.push_back(Real(num) / Real(den));
    std::int64_t g = std::gcd(num, den);
    lcm = std::lcm(lcm, den / (g == 0 ? 1 : g));
    tag += (k ? "," : "") + std::to_string(num) + "/" + std::to_string(den);
  }
  TargetMatrix t(shape, std::move(v), precision_bits, tag);
  t.denominator_ = lcm;
  return t;
}

TargetMatrix TargetMatrix::cubic_veronese(int m, int precision_bits) {
  PrecisionScope scope(precision_bits);
  Real theta = largest_real_root("x^3-x-1");
  RealVec v;
  Real p = 1;
  for (int i = 0; i < m; ++i) {
    p *= theta;
    v.push_back(p);
  }
  return TargetMatrix(SystemShape::make(m, 1), std::move(v), precision_bits, "cubic_veronese");
}

TargetMatrix TargetMatrix::liouville_column(int m, int precision_bits) {
  PrecisionScope scope(precision_bits);
  RealVec v;
  for (int i = 1; i <= m; ++i) v.push_back(liouville_sum(2, precision_bits, column_coef, i));
  return TargetMatrix(SystemShape::make(m, 1), std::move(v), precision_bits, "liouville_column");
}

TargetMatrix TargetMatrix::random_uniform(SystemShape shape, std::uint64_t seed, int precision_bits) {
  PrecisionScope scope(precision_bits);
  std::mt19937_64 rng(seed);
  RealVec v;
  const int chunks = (precision_bits + 63) / 64;
  const Real two64 = boost::multiprecision::ldexp(Real(1), 64);
  for (int k = 0; k < shape.m * shape.n; ++k) {
    Real x = 0, scale = 1;
    for (int c = 0; c < chunks; ++c) {
      scale /= two64;
      x += Real(rng()) * scale;
    }
    v.push_back(x);
  }
  return TargetMatrix(shape, std::move(v), precision_bits, "random:seed=" + std::to_string(seed));
}

Real largest_real_root(const std::string& poly_text) {
  Poly p = Poly::parse(poly_text);
  if (p.degree() < 1) throw DomainError("root() needs a nonconstant polynomial");
  const auto& c = p.coeffs();
  double bound = 1;
  for (int k = 0; k < p.degree(); ++k) bound = std::max(bound, 1 + std::abs(c[k] / c.back()));
  auto roots = real_roots(p, -bound, bound);
  if (roots.empty()) throw DomainError("polynomial has no real root: " + poly_text);
  Real x = roots.back();
  const int bits = current_precision_bits();
  for (int it = 0; it < 8 + static_cast<int>(std::log2(bits)); ++it) {
    Real f = 0, df = 0;
    for (int k = p.degree(); k >= 0; --k) {
      df = df * x + f;
      f = f * x + Real(c[k]);
    }
    if (df == 0) break;
    x -= f / df;
  }
  return x;
}

Real parse_entry(const std::string& raw, int precision_bits) {
  PrecisionScope scope(precision_bits);
  std::string s = trim(raw);
  if (s.empty()) throw DomainError("empty matrix entry");
  if (s[0] == '-') return -parse_entry(s.substr(1), precision_bits);
  auto call = [&](const std::string& name) -> std::optional<std::string> {
    if (s.rfind(name + "(", 0) == 0 && s.back() == ')') return s.substr(name.size() + 1, s.size() - name.size() - 2);
    return std::nullopt;
  };
  if (auto arg = call("sqrt")) {
    Real x = parse_entry(*arg, precision_bits);
    if (x < 0) throw DomainError("sqrt of a negative number");
    return boost::multiprecision::sqrt(x);
  }
  if (auto arg = call("root")) return largest_real_root(*arg);
  if (auto arg = call("liouville")) {
    std::int64_t b = to_int(trim(*arg));
    if (b < 2) throw DomainError("liouville() base must be at least 2");
    return liouville_sum(b, precision_bits, unit_coef, 1);
  }
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Real den = parse_entry(s.substr(slash + 1), precision_bits);
    if (den == 0) throw DomainError("zero denominator in matrix entry");
    return parse_entry(s.substr(0, slash), precision_bits) / den;
  }
  return parse_real(s);
}

TargetMatrix TargetMatrix::parse(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  int line_no = 0;
  std::vector<int> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::stringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    rows.push_back(toks);
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw ConfigError("matrix file is empty");
  if (rows[0].size() != 3) throw ConfigError("header must be 'm n precision_bits'", row_lines[0]);
  int m = 0, n = 0, bits = 0;
  try {
    m = static_cast<int>(to_int(rows[0][0]));
    n = static_cast<int>(to_int(rows[0][1]));
    bits = static_cast<int>(to_int(rows[0][2]));
  } catch (const UsageError& e) {
    throw ConfigError(e.what(), row_lines[0]);
  }
  if (m < 1 || n < 1 || bits < 53) throw ConfigError("need m, n >= 1 and precision_bits >= 53", row_lines[0]);
  if (static_cast<int>(rows.size()) != m + 1) {
    throw ConfigError("expected " + std::to_string(m) + " rows, found " + std::to_string(rows.size() - 1));
  }
  PrecisionScope scope(bits);
  RealVec v;
  for (int i = 1; i <= m; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw ConfigError("expected " + std::to_string(n) + " entries", row_lines[i]);
    }
    for (const std::string& e : rows[i]) {
      try {
        v.push_back(parse_entry(e, bits));
      } catch (const Error& err) {
        throw ConfigError(err.what(), row_lines[i]);
      }
    }
  }
  return TargetMatrix(SystemShape::make(m, n), std::move(v), bits, "user");
}

TargetMatrix TargetMatrix::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open matrix file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  TargetMatrix t = parse(ss.str());
  t.provenance_ = "file:" + path;
  return t;
}

TargetMatrix TargetMatrix::from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "cubic") {
    auto kv = body.empty() ? std::map<std::string, std::string>{} : key_values(body);
    int bits = kv.count("bits") ? static_cast<int>(to_int(kv["bits"])) : kDefaultPrecisionBits;
    int m = kv.count("m") ? static_cast<int>(to_int(kv["m"])) : 2;
    return cubic_veronese(m, bits);
  }
  if (head == "liouville") {
    auto kv = body.empty() ? std::map<std::string, std::string>{} : key_values(body);
    int bits = kv.count("bits") ? static_cast<int>(to_int(kv["bits"])) : kDefaultPrecisionBits;
    int m = kv.count("m") ? static_cast<int>(to_int(kv["m"])) : 2;
    return liouville_column(m, bits);
  }
  if (head == "rational") {
    std::vector<std::pair<std::int64_t, std::int64_t>> e;
    std::string list = body.empty() ? "1/3,2/5" : body;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto slash = item.find('/');
      if (slash == std::string::npos) e.push_back({to_int(trim(item)), 1});
      else e.push_back({to_int(trim(item.substr(0, slash))), to_int(trim(item.substr(slash + 1)))});
    }
    return rational(SystemShape::make(static_cast<int>(e.size()), 1), e);
  }
  if (head == "random" || head == "zero") {
    auto kv = body.empty() ? std::map<std::string, std::string>{} : key_values(body);
    int m = kv.count("m") ? static_cast<int>(to_int(kv["m"])) : 2;
    int n = kv.count("n") ? static_cast<int>(to_int(kv["n"])) : 1;
    int bits = kv.count("bits") ? static_cast<int>(to_int(kv["bits"])) : kDefaultPrecisionBits;
    if (head == "zero") return zero(SystemShape::make(m, n), bits);
    std::uint64_t seed = kv.count("seed") ? static_cast<std::uint64_t>(to_int(kv["seed"])) : 1;
    return random_uniform(SystemShape::make(m, n), seed, bits);
  }
  return load(spec);
}

bool TargetMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Real& x) { return x == 0; });
}

TargetMatrix TargetMatrix::transpose() const {
  PrecisionScope scope(precision_bits_);
  RealVec v;
  for (int j = 0; j < shape_.n; ++j) {
    for (int i = 0; i < shape_.m; ++i) v.push_back((*this)(i, j));
  }
  TargetMatrix t(SystemShape{shape_.n, shape_.m}, std::move(v), precision_bits_, provenance_ + "^T");
  t.denominator_ = denominator_;
  return t;
}

std::string TargetMatrix::to_text() const {
  std::ostringstream os;
  os << shape_.m << ' ' << shape_.n << ' ' << precision_bits_ << '\n';
  const int digits = static_cast<int>(bits_to_digits10(precision_bits_));
  for (int i = 0; i < shape_.m; ++i) {
    for (int j = 0; j < shape_.n; ++j) os << (j ? " " : "") << to_string((*this)(i, j), digits);
    os << '\n';
  }
  return os.str();
}

}  // namespace twistlab
