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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "csdiv/error.hpp"
#include "unit/generators.hpp"
#include "unit/oracles.hpp"

namespace csdiv {
namespace {

// Row-wise instances: (p1, p2, p3), (q1, q2, q3), (r1, r2, r3).
ReductionProblem instance1(double k = 1.0) {
  return build_problem_rows({0.5, 0.1, 0.2}, {0.1, 0.2, 0.4}, {0.3, 0.3, 0.1},
                            KParam(k));
}
ReductionProblem instance2() {
  return build_problem_rows({0.1, 0.2, 0.2}, {0.0, 0.0, 1.0}, {0.2, 0.7, 0.1},
                            KParam(1.0));
}
ReductionProblem instance3() {
  return build_problem_rows({0.1, 0.9, 0.0}, {0.9, 0.1, 0.0}, {0.2, 0.2, 0.5},
                            KParam(1.0));
}

// T(tx) + T(ty) - sum T(t_i), through the test oracle.
double oracle_residual(const ReductionProblem& problem,
                       const ReductionCandidate& c) {
  const double k = problem.k.value();
  long double target = 0.0L;
  for (const LetterTriple& t : problem.triples) {
    target += oracle::letter_term(t.p(), t.q(), t.r(), k);
  }
  return static_cast<double>(oracle::letter_term(c.x[0], c.x[1], c.x[2], k) +
                             oracle::letter_term(c.y[0], c.y[1], c.y[2], k) -
                             target);
}

TEST(BuildProblemTest, TargetOfFirstInstance) {
  const ReductionProblem p = instance1();
  EXPECT_NEAR(p.target, 0.49665678863721864945, 1e-14);
  EXPECT_NEAR(p.target, 0.4967, 5e-4);
  EXPECT_EQ(p.triples[0], LetterTriple(0.5, 0.1, 0.3));
  EXPECT_EQ(p.triples[2], LetterTriple(0.2, 0.4, 0.1));
}

TEST(BuildProblemTest, ZeroTriplesContributeNothing) {
  const LetterTriple t1(0.3, 0.6, 0.1);
  const LetterTriple zero(0.0, 0.0, 0.0);
  const ReductionProblem p = build_problem(t1, zero, zero, KParam(0.5));
  EXPECT_EQ(p.target, letter_term(t1, KParam(0.5)));
}

TEST(BuildProblemTest, SumOutOfRange) {
  try {
    build_problem_rows({0.5, 0.4, 0.2}, {0.1, 0.1, 0.1}, {0.1, 0.1, 0.1},
                       KParam(1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSumOutOfRange);
  }
}

TEST(ResidualTest, SignChangesInsidePublishedBrackets) {
  const ReductionProblem p1 = instance1();
  const double a_lo = residual(p1, {-0.1668334, -0.125, -0.04});
  const double a_hi = residual(p1, {-0.1668333, -0.125, -0.04});
  EXPECT_LT(a_lo * a_hi, 0.0);

  const ReductionProblem p2 = instance2();
  EXPECT_LT(residual(p2, {-0.14, 0.4161126, -0.14}) *
                residual(p2, {-0.14, 0.4161127, -0.14}),
            0.0);

  const ReductionProblem p3 = instance3();
  EXPECT_LT(residual(p3, {-0.05, 0.05, 0.0442517}) *
                residual(p3, {-0.05, 0.05, 0.0442518}),
            0.0);
}

TEST(ResidualTest, SymmetricSplitIsExact) {
  const LetterTriple t(0.3, 0.1, 0.45);
  const ReductionProblem p =
      build_problem(t, t, LetterTriple(0.0, 0.0, 0.0), KParam(0.8));
  EXPECT_EQ(residual(p, {0.0, 0.0, 0.0}), 0.0);
}

TEST(ResidualTest, AgreesWithOracleAndIsContinuous) {
  const ReductionProblem p = instance1();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 1000; ++trial) {
    const Shift s{u(rng), u(rng), u(rng)};
    const ReductionCandidate c = make_candidate(p, s);
    if (!feasible(c)) continue;
    EXPECT_NEAR(residual(p, s), oracle_residual(p, c), 1e-13);
    const Shift nudged{s.alpha + 1e-9, s.beta, s.gamma};
    EXPECT_NEAR(residual(p, s), residual(p, nudged), 1e-7);
  }
}

TEST(CandidateTest, ConservesComponentSums) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ReductionProblem p = instance1();
  for (int trial = 0; trial < 1000; ++trial) {
    const ReductionCandidate c = make_candidate(p, {u(rng), u(rng), u(rng)});
    EXPECT_NEAR(c.x[0] + c.y[0], 0.8, 1e-15);
    EXPECT_NEAR(c.x[1] + c.y[1], 0.7, 1e-15);
    EXPECT_NEAR(c.x[2] + c.y[2], 0.7, 1e-15);
  }
}

TEST(FeasibleTest, Boxes) {
  const ReductionProblem p = instance1();
  EXPECT_TRUE(feasible(make_candidate(p, {0.0, 0.0, 0.0})));
  EXPECT_FALSE(feasible(make_candidate(p, {0.25, 0.0, 0.0})));  // p_y < 0
  EXPECT_TRUE(feasible(make_candidate(instance3(), {-0.05, 0.05, 0.04425175})));
}

TEST(FeasibleRangeTest, EndpointsTouchTheBox) {
  const ReductionProblem p = instance1();
  const Interval a = feasible_range(p, Axis::kAlpha);
  EXPECT_NEAR(a.lo, -0.6, 1e-15);
  EXPECT_NEAR(a.hi, 0.2, 1e-15);
  EXPECT_LE(a.lo, 0.0);
  EXPECT_GE(a.hi, 0.0);
}

void expect_certified(const ReductionProblem& p, const ReductionSolution& s,
                      double tol) {
  EXPECT_TRUE(s.feasible);
  EXPECT_TRUE(feasible(s.candidate));
  EXPECT_LE(std::fabs(s.residual), tol);
  EXPECT_LE(std::fabs(residual(p, s.candidate.shift)), tol);
  EXPECT_LE(std::fabs(oracle_residual(p, s.candidate)), tol);
  EXPECT_TRUE(s.trace.bracket_invariant_held);
}

TEST(SolveTest, PublishedInstances) {
  for (const ReductionProblem& p : {instance1(), instance2(), instance3()}) {
    const auto s = solve(p);
    ASSERT_TRUE(s.has_value());
    expect_certified(p, *s, 1e-9);
  }
}

TEST(SolveTest, RandomInstancesBelowKOne) {
  std::mt19937_64 rng(33);
  for (double k : {0.2, 0.5, 0.8}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = testing::random_simplex(rng, 3);
      const auto q = testing::random_simplex(rng, 3);
      const auto r = testing::random_simplex(rng, 3);
      const ReductionProblem problem = build_problem_rows(
          {p[0], p[1], p[2]}, {q[0], q[1], q[2]}, {r[0], r[1], r[2]}, KParam(k));
      const auto s = solve(problem);
      ASSERT_TRUE(s.has_value()) << "k=" << k << " trial " << trial;
      expect_certified(problem, *s, 1e-9);
    }
  }
}

TEST(RootsAlongTest, PinnedBetaGammaRecoverPublishedAlpha) {
  SolverOptions options;
  options.scan_points = 2048;
  const ReductionProblem p = instance1();
  const auto roots = roots_along(p, Axis::kAlpha, {0.0, -0.125, -0.04}, options);
  ASSERT_GE(roots.size(), 1u);
  int inside = 0;
  for (const ReductionSolution& s : roots) {
    expect_certified(p, s, 1e-9);
    const double a = s.candidate.shift.alpha;
    inside += a >= -0.1668334 - 1e-7 && a <= -0.1668333 + 1e-7;
  }
  EXPECT_EQ(inside, 1);
}

TEST(RootsAlongTest, PinnedSolvesForInstancesTwoAndThree) {
  SolverOptions options;
  options.scan_points = 2048;
  const auto beta_roots =
      roots_along(instance2(), Axis::kBeta, {-0.14, 0.0, -0.14}, options);
  ASSERT_EQ(beta_roots.size(), 1u);
  EXPECT_NEAR(beta_roots[0].candidate.shift.beta, 0.41611265, 1e-7);

  const auto gamma_roots =
      roots_along(instance3(), Axis::kGamma, {-0.05, 0.05, 0.0}, options);
  ASSERT_EQ(gamma_roots.size(), 1u);
  EXPECT_NEAR(gamma_roots[0].candidate.shift.gamma, 0.04425175, 1e-7);
}

TEST(SolveTest, CoarseSolveFindsARootExactlyWhenEndpointsBracket) {
  // A 1x1 grid with two scan points only sees the alpha endpoints at the
  // lower (beta, gamma) corner.
  SolverOptions coarse;
  coarse.grid = 1;
  coarse.scan_points = 2;
  for (const ReductionProblem& p : {instance1(), instance2(), instance3()}) {
    const double beta = feasible_range(p, Axis::kBeta).lo;
    const double gamma = feasible_range(p, Axis::kGamma).lo;
    const Interval alpha = feasible_range(p, Axis::kAlpha);
    const double lo = residual(p, {alpha.lo, beta, gamma});
    const double hi = residual(p, {alpha.hi, beta, gamma});
    const auto s = solve(p, coarse);
    EXPECT_EQ(s.has_value(), lo * hi <= 0.0);
    if (s) {
      expect_certified(p, *s, coarse.residual_tol);
      EXPECT_EQ(s->trace.cells_visited, 1u);
    }
  }
}

}  // namespace
}  // namespace csdiv
