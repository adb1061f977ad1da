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

#pragma once

#include <limits>

#include "csdiv/pmf.hpp"

namespace csdiv {

/// A non-negative real or positive infinity. KL divergence is the only
/// producer of the infinite case (p_i > 0 where q_i = 0).
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(v); }
  static ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }

  bool is_infinite() const noexcept {
    return value_ == std::numeric_limits<double>::infinity();
  }
  bool is_finite() const noexcept { return !is_infinite(); }
  double value() const noexcept { return value_; }

 private:
  explicit ExtendedReal(double v) : value_(v) {}
  double value_;
};

/// Chen-Sbert divergence, base 2:
///   (1/2) sum_i (p_i + q_i) log2(|p_i - q_i|^k + 1).
/// Bounded by [0, 1] and symmetric bit-for-bit in (p, q).
double chen_sbert(const Pmf& p, const Pmf& q, KParam k);

/// Closed form for a two-letter alphabet {p, 1-p} vs {q, 1-q}:
/// log2(|p - q|^k + 1).
double chen_sbert_binary(double p, double q, KParam k);

/// Kullback-Leibler divergence in bits. Infinite when some p_i > 0 meets
/// q_i = 0; terms with p_i = 0 contribute nothing.
ExtendedReal kl_divergence(const Pmf& p, const Pmf& q);

/// Jensen-Shannon divergence in bits, always in [0, 1].
double js_divergence(const Pmf& p, const Pmf& q);

/// sqrt(JS), which is a true metric.
double js_metric(const Pmf& p, const Pmf& q);

namespace detail {

// log2(|x - y|^k + 1), no range checks. Shared by every module that needs
// the per-letter gap transform so they all round identically.
double gap_log2(double x, double y, double k) noexcept;

}  // namespace detail

}  // namespace csdiv
