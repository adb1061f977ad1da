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

#include "csdiv/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csdiv/error.hpp"

namespace csdiv {
namespace {

constexpr double kSumTolerance = 1e-9;

double coord(const LetterTriple& t, std::size_t axis) {
  switch (axis) {
    case 0: return t.p();
    case 1: return t.q();
    default: return t.r();
  }
}

double& shift_ref(Shift& s, Axis axis) {
  switch (axis) {
    case Axis::kAlpha: return s.alpha;
    case Axis::kBeta: return s.beta;
    case Axis::kGamma: return s.gamma;
  }
  return s.alpha;
}

bool opposite_signs(double a, double b) {
  return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
}

// Evenly spaced values across an interval, or the single point of a
// degenerate one.
std::vector<double> linspace(const Interval& range, std::size_t points) {
  if (range.hi <= range.lo || points < 2) return {range.lo};
  std::vector<double> out(points);
  const double width = range.hi - range.lo;
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = range.lo + width * (static_cast<double>(i) /
                                 static_cast<double>(points - 1));
  }
  out.back() = range.hi;
  return out;
}

class LineScanner {
 public:
  LineScanner(const ReductionProblem& problem, Axis axis, Shift base,
              const SolverOptions& options, SolverTrace& trace)
      : problem_(problem),
        axis_(axis),
        base_(base),
        options_(options),
        trace_(trace) {}

  // Appends accepted roots in increasing order along the axis; stops after
  // the first one when first_only is set.
  void scan(std::vector<ReductionSolution>& out, bool first_only) {
    const std::vector<double> xs =
        linspace(feasible_range(problem_, axis_), options_.scan_points);
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = eval(xs[i]);

    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::optional<ReductionSolution> root;
      if (fs[i] == 0.0) {
        root = accept(xs[i], 0.0);
      } else if (i + 1 < xs.size() && opposite_signs(fs[i], fs[i + 1])) {
        root = bisect(xs[i], fs[i], xs[i + 1], fs[i + 1]);
      }
      if (root) {
        out.push_back(*root);
        if (first_only) return;
      }
    }
  }

 private:
  double eval(double v) {
    Shift s = base_;
    shift_ref(s, axis_) = v;
    ++trace_.residual_evaluations;
    return residual(problem_, s);
  }

  std::optional<ReductionSolution> bisect(double a, double fa, double b,
                                          double fb) {
    for (std::size_t it = 0;
         it < options_.max_bisections && (b - a) > options_.bisection_tol;
         ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = eval(m);
      ++trace_.bisection_steps;
      if (fm == 0.0) {
        a = b = m;
        fa = fb = 0.0;
        break;
      }
      if (opposite_signs(fa, fm)) {
        b = m;
        fb = fm;
      } else {
        a = m;
        fa = fm;
      }
      if (!opposite_signs(fa, fb)) trace_.bracket_invariant_held = false;
    }
    trace_.bracket_width = b - a;
    const double root = std::fabs(fa) <= std::fabs(fb) ? a : b;
    return accept(root, std::fabs(fa) <= std::fabs(fb) ? fa : fb);
  }

  std::optional<ReductionSolution> accept(double v, double f) {
    Shift s = base_;
    shift_ref(s, axis_) = v;
    ReductionSolution sol;
    sol.candidate = make_candidate(problem_, s);
    sol.residual = f;
    sol.feasible = feasible(sol.candidate);
    sol.trace = trace_;
    if (!sol.feasible || std::fabs(f) > options_.residual_tol) {
      return std::nullopt;
    }
    return sol;
  }

  const ReductionProblem& problem_;
  Axis axis_;
  Shift base_;
  const SolverOptions& options_;
  SolverTrace& trace_;
};

}  // namespace

ReductionProblem build_problem(const LetterTriple& t1, const LetterTriple& t2,
                               const LetterTriple& t3, KParam k) {
  const char* names[] = {"p", "q", "r"};
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const double sum = coord(t1, axis) + coord(t2, axis) + coord(t3, axis);
    if (sum > 1.0 + kSumTolerance) {
      std::ostringstream msg;
      msg << names[axis] << "1 + " << names[axis] << "2 + " << names[axis]
          << "3 = " << sum << " exceeds 1";
      throw Error(ErrorCode::kSumOutOfRange, msg.str());
    }
  }
  ReductionProblem problem{{t1, t2, t3}, k, 0.0};
  problem.target = letter_term(t1, k) + letter_term(t2, k) + letter_term(t3, k);
  return problem;
}

ReductionProblem build_problem_rows(const std::array<double, 3>& p,
                                    const std::array<double, 3>& q,
                                    const std::array<double, 3>& r, KParam k) {
  return build_problem({p[0], q[0], r[0]}, {p[1], q[1], r[1]},
                       {p[2], q[2], r[2]}, k);
}

ReductionCandidate make_candidate(const ReductionProblem& problem,
                                  const Shift& shift) {
  const auto& [t1, t2, t3] = problem.triples;
  const std::array<double, 3> s = {shift.alpha, shift.beta, shift.gamma};
  ReductionCandidate c;
  c.shift = shift;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const double half = 0.5 * coord(t3, axis);
    c.x[axis] = coord(t1, axis) + half + s[axis];
    c.y[axis] = coord(t2, axis) + half - s[axis];
  }
  return c;
}

double residual(const ReductionProblem& problem, const Shift& shift) {
  const ReductionCandidate c = make_candidate(problem, shift);
  const double k = problem.k.value();
  return detail::letter_term_unchecked(c.x[0], c.x[1], c.x[2], k) +
         detail::letter_term_unchecked(c.y[0], c.y[1], c.y[2], k) -
         problem.target;
}

bool feasible(const ReductionCandidate& candidate) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  return std::all_of(candidate.x.begin(), candidate.x.end(), in_unit) &&
         std::all_of(candidate.y.begin(), candidate.y.end(), in_unit);
}

Interval feasible_range(const ReductionProblem& problem, Axis axis) {
  const auto& [t1, t2, t3] = problem.triples;
  const auto a = static_cast<std::size_t>(axis);
  const double x0 = coord(t1, a) + 0.5 * coord(t3, a);
  const double y0 = coord(t2, a) + 0.5 * coord(t3, a);
  return {std::max(-x0, y0 - 1.0), std::min(1.0 - x0, y0)};
}

std::optional<ReductionSolution> solve(const ReductionProblem& problem,
                                       const SolverOptions& options) {
  SolverTrace trace;
  const std::vector<double> betas =
      linspace(feasible_range(problem, Axis::kBeta), options.grid);
  const std::vector<double> gammas =
      linspace(feasible_range(problem, Axis::kGamma), options.grid);
  std::vector<ReductionSolution> found;
  for (double beta : betas) {
    for (double gamma : gammas) {
      ++trace.cells_visited;
      LineScanner scanner(problem, Axis::kAlpha, Shift{0.0, beta, gamma},
                          options, trace);
      scanner.scan(found, /*first_only=*/true);
      if (!found.empty()) {
        found.front().trace = trace;
        return found.front();
      }
    }
  }
  return std::nullopt;
}

std::vector<ReductionSolution> roots_along(const ReductionProblem& problem,
                                           Axis free_axis, const Shift& pinned,
                                           const SolverOptions& options) {
  SolverTrace trace;
  trace.cells_visited = 1;
  std::vector<ReductionSolution> roots;
  LineScanner scanner(problem, free_axis, pinned, options, trace);
  scanner.scan(roots, /*first_only=*/false);
  return roots;
}

}  // namespace csdiv
