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

#include "csdiv/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "csdiv/compensated_sum.hpp"
#include "csdiv/error.hpp"

namespace csdiv {
namespace {

constexpr double kInvLn2 = 1.0 / std::numbers::ln2;

void require_same_length(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    std::ostringstream msg;
    msg << "PMF lengths differ (" << p.size() << " vs " << q.size() << ")";
    throw Error(ErrorCode::kLengthMismatch, msg.str());
  }
}

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << v << " is outside [0, 1]";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
}

// p * log2(2p / (p + q)), the KL(P||M) term against the midpoint M.
double midpoint_term(double p, double q) {
  if (p <= 0.0) return 0.0;
  return p * std::log1p((p - q) / (p + q)) * kInvLn2;
}

}  // namespace

namespace detail {

double gap_log2(double x, double y, double k) noexcept {
  const double gap = std::fabs(x - y);
  const double powered = (k == 1.0) ? gap : std::pow(gap, k);
  return std::log1p(powered) * kInvLn2;
}

}  // namespace detail

double chen_sbert(const Pmf& p, const Pmf& q, KParam k) {
  require_same_length(p, q);
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += (p[i] + q[i]) * detail::gap_log2(p[i], q[i], k.value());
  }
  return 0.5 * sum.value();
}

double chen_sbert_binary(double p, double q, KParam k) {
  require_unit(p, "p");
  require_unit(q, "q");
  return detail::gap_log2(p, q, k.value());
}

ExtendedReal kl_divergence(const Pmf& p, const Pmf& q) {
  require_same_length(p, q);
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return ExtendedReal::infinity();
    sum += p[i] * std::log1p((p[i] - q[i]) / q[i]) * kInvLn2;
  }
  // Clamp rounding noise; the exact value is never negative.
  return ExtendedReal::finite(std::max(0.0, sum.value()));
}

double js_divergence(const Pmf& p, const Pmf& q) {
  require_same_length(p, q);
  CompensatedSum sum;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += midpoint_term(p[i], q[i]);
    sum += midpoint_term(q[i], p[i]);
  }
  return std::clamp(0.5 * sum.value(), 0.0, 1.0);
}

double js_metric(const Pmf& p, const Pmf& q) {
  return std::sqrt(js_divergence(p, q));
}

}  // namespace csdiv
