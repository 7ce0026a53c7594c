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

#include "twistlab/real.hpp"

#include <cmath>
#include <sstream>

#include "twistlab/errors.hpp"

namespace twistlab {

unsigned bits_to_digits10(int bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(int bits)
    : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

int current_precision_bits() {
  return static_cast<int>(std::ceil(Real::default_precision() * 3.3219280948873623));
}

Real parse_real(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw DomainError("not a real number: '" + text + "'");
  }
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace twistlab

namespace twistlab {
namespace {
const bool kPrecisionInit = [] {
  Real::default_precision(bits_to_digits10(kDefaultPrecisionBits));
  return true;
}();
}  // namespace
}  // namespace twistlab
