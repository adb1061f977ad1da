// Copyright 2026 The csdiv Authors
//
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

#include "csdiv/pmf.hpp"

#include <cmath>
#include <sstream>

#include "csdiv/compensated_sum.hpp"
#include "csdiv/error.hpp"

namespace csdiv {

Pmf Pmf::validate(std::span<const double> raw, double tolerance) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmpty, "a PMF needs at least one entry");
  }
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw Error(ErrorCode::kOutOfRange, "tolerance must be finite and >= 0");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "entry " << i << " is not finite";
      throw Error(ErrorCode::kNonFinite, msg.str());
    }
    if (v < -tolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "entry " << i << " = " << v << " is negative";
      throw Error(ErrorCode::kNegativeEntry, msg.str());
    }
    total += v;
  }
  const double sum = total.value();
  if (std::fabs(sum - 1.0) > tolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << sum << ", outside 1 +/- " << tolerance;
    throw Error(ErrorCode::kBadSum, msg.str());
  }
  return Pmf(std::vector<double>(raw.begin(), raw.end()), tolerance);
}

KParam::KParam(double k) : k_(k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    std::ostringstream msg;
    msg << "k must be finite and > 0, got " << k;
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
}

}  // namespace csdiv
