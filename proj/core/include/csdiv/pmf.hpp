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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace csdiv {

inline constexpr double kDefaultSimplexTolerance = 1e-9;

/// A discrete probability mass function over an n-letter alphabet.
///
/// Instances only come out of validate(), so holding a Pmf means every entry
/// is within tolerance of [0, 1] and the entries sum to 1 within tolerance.
/// Values are stored exactly as given; nothing is renormalized.
class Pmf {
 public:
  /// The one-letter distribution {1}.
  Pmf() : values_{1.0}, tolerance_(kDefaultSimplexTolerance) {}

  static Pmf validate(std::span<const double> raw,
                      double tolerance = kDefaultSimplexTolerance);
  static Pmf validate(std::initializer_list<double> raw,
                      double tolerance = kDefaultSimplexTolerance) {
    return validate(std::span<const double>(raw.begin(), raw.size()),
                    tolerance);
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  /// The tolerance this instance was validated with.
  double tolerance() const noexcept { return tolerance_; }

  friend bool operator==(const Pmf& a, const Pmf& b) {
    return a.values_ == b.values_;
  }

 private:
  Pmf(std::vector<double> values, double tolerance)
      : values_(std::move(values)), tolerance_(tolerance) {}

  std::vector<double> values_;
  double tolerance_;
};

/// The exponent k applied to each pairwise gap |p_i - q_i|. Always finite and
/// strictly positive.
class KParam {
 public:
  explicit KParam(double k);

  double value() const noexcept { return k_; }

  friend bool operator==(KParam, KParam) = default;

 private:
  double k_;
};

}  // namespace csdiv
