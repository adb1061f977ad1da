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

#include "csdiv/triangle.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "csdiv/divergence.hpp"
#include "csdiv/error.hpp"

namespace csdiv {
namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << v << " is outside [0, 1]";
    throw Error(ErrorCode::kOutOfRange, msg.str());
  }
}

double root(double d, KParam k) {
  return k.value() == 1.0 ? d : std::pow(d, 1.0 / k.value());
}

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::kPlain ? "plain" : "kth-root";
}

Variant parse_variant(std::string_view text) {
  if (text == "plain") return Variant::kPlain;
  if (text == "kth-root") return Variant::kKthRoot;
  throw Error(ErrorCode::kParseError,
              "unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::kPQR: return "P-Q-R";
    case Orientation::kQRP: return "Q-R-P";
    case Orientation::kRPQ: return "R-P-Q";
  }
  return "?";
}

Orientation parse_orientation(std::string_view text) {
  for (Orientation o : kAllOrientations) {
    if (to_string(o) == text) return o;
  }
  throw Error(ErrorCode::kParseError,
              "unknown orientation '" + std::string(text) + "'");
}

std::array<const Pmf*, 3> orient(Orientation o, const Pmf& p, const Pmf& q,
                                 const Pmf& r) {
  switch (o) {
    case Orientation::kPQR: return {&p, &q, &r};
    case Orientation::kQRP: return {&q, &r, &p};
    case Orientation::kRPQ: return {&r, &p, &q};
  }
  return {&p, &q, &r};
}

TriangleReport make_triangle_report(double d_pq, double d_qr, double d_pr,
                                    KParam k, Variant variant) {
  TriangleReport report{d_pq, d_qr, d_pr, 0.0, k, variant};
  if (variant == Variant::kPlain) {
    report.deficit = d_pq + d_qr - d_pr;
  } else {
    report.deficit = root(d_pq, k) + root(d_qr, k) - root(d_pr, k);
  }
  return report;
}

TriangleReport triangle_deficit(const Pmf& p, const Pmf& q, const Pmf& r,
                                KParam k, Variant variant) {
  return make_triangle_report(chen_sbert(p, q, k), chen_sbert(q, r, k),
                              chen_sbert(p, r, k), k, variant);
}

LetterTriple::LetterTriple(double p, double q, double r) : p_(p), q_(q), r_(r) {
  require_unit(p, "p");
  require_unit(q, "q");
  require_unit(r, "r");
}

LetterTriple operator+(const LetterTriple& a, const LetterTriple& b) {
  const double p = a.p_ + b.p_;
  const double q = a.q_ + b.q_;
  const double r = a.r_ + b.r_;
  if (p > 1.0 || q > 1.0 || r > 1.0) {
    std::ostringstream msg;
    msg << "component sums (" << p << ", " << q << ", " << r
        << ") leave [0, 1]";
    throw Error(ErrorCode::kSumOutOfRange, msg.str());
  }
  return {p, q, r};
}

namespace detail {

double letter_term_unchecked(double p, double q, double r, double k) noexcept {
  return (p + q) * gap_log2(p, q, k) + (q + r) * gap_log2(q, r, k) -
         (p + r) * gap_log2(p, r, k);
}

}  // namespace detail

double letter_term(const LetterTriple& t, KParam k) {
  return detail::letter_term_unchecked(t.p(), t.q(), t.r(), k.value());
}

double deficit_share(const LetterTriple& t, KParam k) {
  return 0.5 * letter_term(t, k);
}

OrderingCase::Gaps OrderingCase::gaps() const noexcept {
  const double u = first;
  const double v = second;
  switch (case_id) {
    case 1:
    case 6: return {u, v, u + v};
    case 2:
    case 4: return {u + v, v, u};
    case 3:
    case 5: return {v, u + v, u};
  }
  return {0.0, 0.0, 0.0};
}

OrderingCase classify_ordering(const LetterTriple& t) {
  const double p = t.p(), q = t.q(), r = t.r();
  if (p >= q && q >= r) return {1, p - q, q - r};
  if (p >= r && r >= q) return {2, p - r, r - q};
  if (q >= p && p >= r) return {3, p - r, q - p};
  if (q >= r && r >= p) return {4, r - p, q - r};
  if (r >= p && p >= q) return {5, r - p, p - q};
  return {6, q - p, r - q};
}

double case_fraction(const LetterTriple& t, KParam k) {
  const double kv = k.value();
  auto term = [kv](double x, double y) {
    return std::pow(std::fabs(x - y), kv) + 1.0;
  };
  return term(t.p(), t.q()) * term(t.q(), t.r()) / term(t.p(), t.r());
}

double binary_triangle_gap(const LetterTriple& t, KParam k) {
  const double kv = k.value();
  return detail::gap_log2(t.p(), t.q(), kv) +
         detail::gap_log2(t.q(), t.r(), kv) -
         detail::gap_log2(t.p(), t.r(), kv);
}

XYTerms lemma2_xy(double a, double b, KParam k) {
  require_unit(a, "a");
  require_unit(b, "b");
  const double ak = std::pow(a, k.value());
  const double bk = std::pow(b, k.value());
  return {ak * bk + ak + bk, std::pow(a + b, k.value())};
}

PairGap pair_combine_gap(const LetterTriple& ta, const LetterTriple& tb,
                         KParam k) {
  const LetterTriple combined = ta + tb;
  return {letter_term(combined, k), letter_term(ta, k) + letter_term(tb, k)};
}

}  // namespace csdiv
