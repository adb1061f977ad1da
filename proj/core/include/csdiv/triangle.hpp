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

#include <array>
#include <string_view>

#include "csdiv/pmf.hpp"

namespace csdiv {

/// kPlain tests D(P,R) <= D(P,Q) + D(Q,R). kKthRoot tests the same inequality
/// on D^(1/k).
enum class Variant { kPlain, kKthRoot };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Which vertex of a (P, Q, R) triangle sits in the middle of the inequality.
/// kPQR: D(P,Q) + D(Q,R) - D(P,R)
/// kQRP: D(Q,R) + D(R,P) - D(Q,P)
/// kRPQ: D(R,P) + D(P,Q) - D(R,Q)   (the same inequality as Q-P-R)
enum class Orientation { kPQR, kQRP, kRPQ };

inline constexpr std::array<Orientation, 3> kAllOrientations = {
    Orientation::kPQR, Orientation::kQRP, Orientation::kRPQ};

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

/// Reorders (P, Q, R) so that the chosen orientation becomes the plain
/// first-middle-last layout consumed by triangle_deficit().
std::array<const Pmf*, 3> orient(Orientation o, const Pmf& p, const Pmf& q,
                                 const Pmf& r);

/// The three pairwise divergences of a (first, middle, last) triangle and its
/// deficit. For kKthRoot the deficit is taken on d^(1/k); the d_* fields
/// always hold the raw divergences.
struct TriangleReport {
  double d_pq = 0.0;
  double d_qr = 0.0;
  double d_pr = 0.0;
  double deficit = 0.0;
  KParam k{1.0};
  Variant variant = Variant::kPlain;
};

TriangleReport make_triangle_report(double d_pq, double d_qr, double d_pr,
                                    KParam k, Variant variant);

TriangleReport triangle_deficit(const Pmf& p, const Pmf& q, const Pmf& r,
                                KParam k, Variant variant = Variant::kPlain);

/// One alphabet letter's (p_i, q_i, r_i). Coordinates are checked to lie in
/// [0, 1] on construction.
class LetterTriple {
 public:
  LetterTriple() = default;  // (0, 0, 0)
  LetterTriple(double p, double q, double r);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double r() const noexcept { return r_; }

  friend LetterTriple operator+(const LetterTriple& a, const LetterTriple& b);
  friend bool operator==(const LetterTriple&, const LetterTriple&) = default;

 private:
  double p_ = 0.0, q_ = 0.0, r_ = 0.0;
};

/// (p+q)log2(|p-q|^k+1) + (q+r)log2(|q-r|^k+1) - (p+r)log2(|p-r|^k+1).
/// Summed over all letters this is twice the plain triangle deficit.
double letter_term(const LetterTriple& t, KParam k);

/// letter_term / 2: the letter's own share of the D_CS triangle deficit.
double deficit_share(const LetterTriple& t, KParam k);

/// Ordering of (p, q, r) into one of six cases:
///   1: p>=q>=r  a=p-q, b=q-r     4: q>=r>=p  c=r-p, d=q-r
///   2: p>=r>=q  c=p-r, d=r-q     5: r>=p>=q  c=r-p, d=p-q
///   3: q>=p>=r  c=p-r, d=q-p     6: r>=q>=p  a=q-p, b=r-q
/// Cases 1 and 6 carry (a, b) in first/second; the others carry (c, d).
/// Ties go to the lowest-numbered case that matches.
struct OrderingCase {
  int case_id = 1;
  double first = 0.0;
  double second = 0.0;

  struct Gaps {
    double pq, qr, pr;
  };
  /// |p-q|, |q-r|, |p-r| rebuilt from the case parameters alone.
  Gaps gaps() const noexcept;
};

OrderingCase classify_ordering(const LetterTriple& t);

/// (|p-q|^k+1)(|q-r|^k+1) / (|p-r|^k+1). At least 1 whenever k <= 1.
double case_fraction(const LetterTriple& t, KParam k);

/// log2(|p-q|^k+1) + log2(|q-r|^k+1) - log2(|p-r|^k+1), the two-letter
/// triangle gap written as a sum of logs.
double binary_triangle_gap(const LetterTriple& t, KParam k);

struct XYTerms {
  double x = 0.0;  // a^k b^k + a^k + b^k
  double y = 0.0;  // (a+b)^k
};

XYTerms lemma2_xy(double a, double b, KParam k);

struct PairGap {
  double lhs = 0.0;  // letter_term(ta + tb)
  double rhs = 0.0;  // letter_term(ta) + letter_term(tb)

  /// lhs > rhs: the pair does not combine subadditively.
  bool violates() const noexcept { return lhs > rhs; }
  /// Both sides rescaled to deficit shares.
  PairGap halved() const noexcept { return {lhs / 2.0, rhs / 2.0}; }
};

PairGap pair_combine_gap(const LetterTriple& ta, const LetterTriple& tb,
                         KParam k);

namespace detail {
double letter_term_unchecked(double p, double q, double r, double k) noexcept;
}  // namespace detail

}  // namespace csdiv
