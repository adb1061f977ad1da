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
#include <cstddef>
#include <optional>
#include <vector>

#include "csdiv/pmf.hpp"
#include "csdiv/triangle.hpp"

namespace csdiv {

// Three letters (t1, t2, t3) are replaced by two letters
//   tx = t1 + t3/2 + (alpha, beta, gamma)
//   ty = t2 + t3/2 - (alpha, beta, gamma)
// and the shifts are chosen so that T(tx) + T(ty) = T(t1) + T(t2) + T(t3)
// with every coordinate of tx and ty kept in [0, 1]. Component sums are
// conserved whatever the shifts are.

struct ReductionProblem {
  std::array<LetterTriple, 3> triples;
  KParam k{1.0};
  double target = 0.0;
};

/// Throws SumOutOfRange when any of the p, q or r sums over the three
/// triples exceeds 1 + 1e-9.
ReductionProblem build_problem(const LetterTriple& t1, const LetterTriple& t2,
                               const LetterTriple& t3, KParam k);

/// Builds the per-letter triples from row-wise coordinate lists
/// (p1, p2, p3), (q1, q2, q3), (r1, r2, r3).
ReductionProblem build_problem_rows(const std::array<double, 3>& p,
                                    const std::array<double, 3>& q,
                                    const std::array<double, 3>& r, KParam k);

struct Shift {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Derived coordinates; they may fall outside [0, 1], which is what
/// feasible() checks.
struct ReductionCandidate {
  Shift shift;
  std::array<double, 3> x{};  // (p_x, q_x, r_x)
  std::array<double, 3> y{};  // (p_y, q_y, r_y)
};

ReductionCandidate make_candidate(const ReductionProblem& problem,
                                  const Shift& shift);

/// [T(tx) + T(ty)] - target.
double residual(const ReductionProblem& problem, const Shift& shift);

bool feasible(const ReductionCandidate& candidate);

enum class Axis { kAlpha = 0, kBeta = 1, kGamma = 2 };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Range of one shift that keeps both derived coordinates on that axis in
/// [0, 1]. Never empty for a valid problem.
Interval feasible_range(const ReductionProblem& problem, Axis axis);

struct SolverOptions {
  double residual_tol = 1e-9;
  /// Points per side of the outer grid over the two non-scanned shifts.
  std::size_t grid = 101;
  /// Equispaced samples used to bracket sign changes on the scanned axis.
  std::size_t scan_points = 64;
  /// Bisection stops once the bracket is this narrow.
  double bisection_tol = 1e-12;
  std::size_t max_bisections = 200;
};

struct SolverTrace {
  std::size_t cells_visited = 0;
  std::size_t residual_evaluations = 0;
  std::size_t bisection_steps = 0;
  double bracket_width = 0.0;
  /// Every bisection step kept a sign change between the bracket ends.
  bool bracket_invariant_held = true;
};

struct ReductionSolution {
  ReductionCandidate candidate;
  double residual = 0.0;
  bool feasible = false;
  SolverTrace trace;
};

/// Grid over (beta, gamma) in row-major order; on each cell, scans alpha over
/// its feasible range for a sign change and bisects. Returns the first root
/// that is feasible with |residual| <= residual_tol. Absent means nothing was
/// found at this resolution, not that no root exists.
std::optional<ReductionSolution> solve(const ReductionProblem& problem,
                                       const SolverOptions& options = {});

/// Isolates every root along one free axis with the other two shifts pinned
/// (values in `pinned` for the free axis are ignored). Roots come back in
/// increasing order of the free coordinate.
std::vector<ReductionSolution> roots_along(const ReductionProblem& problem,
                                           Axis free_axis, const Shift& pinned,
                                           const SolverOptions& options = {});

}  // namespace csdiv
