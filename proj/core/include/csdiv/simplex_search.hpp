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
#include <cstdint>
#include <optional>
#include <vector>

#include "csdiv/pmf.hpp"
#include "csdiv/rng.hpp"
#include "csdiv/triangle.hpp"

namespace csdiv {

/// Uniform sample from the (n-1)-simplex (Dirichlet(1, ..., 1)) via the
/// spacings of n-1 sorted uniforms.
Pmf sample_simplex(std::size_t n, SplitMix64& stream);

using PmfTriple = std::array<Pmf, 3>;

struct SearchConfig {
  std::size_t n = 3;
  KParam k{1.0};
  Variant variant = Variant::kPlain;
  std::uint64_t trials = 1;
  std::uint64_t base_seed = 0;
  bool refine = false;
  double violation_threshold = -1e-9;
  /// Explicit instances that run as trials 0..injected.size()-1 ahead of the
  /// random ones.
  std::vector<PmfTriple> injected;
  /// Upper bound on counterexamples kept by verify_postulation().
  std::size_t max_archived = 16;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  /// Throws ConfigMismatch when n < 2, trials < 1, the threshold is not
  /// negative, or there are more injected instances than trials.
  void check() const;
};

struct TrialResult {
  std::uint64_t trial_index = 0;
  PmfTriple pmfs;
  Orientation orientation = Orientation::kPQR;
  /// Report for the worst (minimum-deficit) orientation, laid out as
  /// triangle_deficit(orient(orientation, P, Q, R)).
  TriangleReport report;
};

/// Generates or fetches the trial's (P, Q, R), evaluates all three
/// orientations and keeps the worst.
TrialResult run_trial(const SearchConfig& config, std::uint64_t trial_index);

/// Worst-orientation evaluation of an explicit triple.
TrialResult evaluate_triple(const PmfTriple& pmfs, KParam k, Variant variant,
                            std::uint64_t trial_index = 0);

struct RefinementStep {
  double step = 0.0;
  double deficit = 0.0;
};

struct RefinementTrace {
  double initial_deficit = 0.0;
  double final_deficit = 0.0;
  std::size_t accepted_steps = 0;
  double final_step = 0.0;
  /// Deficit after each accepted move, capped to the first entries.
  std::vector<RefinementStep> steps;
};

struct CounterexampleRecord {
  PmfTriple pmfs;
  KParam k{1.0};
  Variant variant = Variant::kPlain;
  double deficit = 0.0;
  Orientation orientation = Orientation::kPQR;
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
  bool refined = false;
  double violation_threshold = -1e-9;
  std::optional<RefinementTrace> trace;
};

/// Deficit of the record's orientation recomputed from its (P, Q, R, k).
double recompute_deficit(const CounterexampleRecord& record);

struct RefineOptions {
  double initial_step = 0.05;
  double min_step = 1e-7;
  std::size_t max_accepted = 20000;
  std::size_t trace_limit = 256;
};

/// Projected coordinate descent: moves mass between two letters of one PMF,
/// accepting only moves that keep every PMF on the simplex and strictly lower
/// the worst-orientation deficit; halves the step when no move helps.
CounterexampleRecord refine_counterexample(CounterexampleRecord record,
                                           const RefineOptions& options = {});

/// First trial (in index order) whose worst deficit falls below the
/// threshold, refined when config.refine is set.
std::optional<CounterexampleRecord> search_counterexample(
    const SearchConfig& config);

enum class Postulation { kP1, kP2 };

std::string_view to_string(Postulation p);
Postulation parse_postulation(std::string_view text);

struct PostulationReport {
  SearchConfig config;
  Postulation which = Postulation::kP1;
  std::uint64_t violations_found = 0;
  double worst_deficit = std::numeric_limits<double>::infinity();
  std::uint64_t worst_trial_index = 0;
  std::optional<CounterexampleRecord> first_counterexample;
  /// Up to config.max_archived violations, lowest trial index first.
  std::vector<CounterexampleRecord> counterexamples;
  std::uint64_t trials_run = 0;
};

/// kP1 needs 0 < k <= 1 with the plain variant, kP2 needs k > 1 with the
/// k-th root variant; anything else throws ConfigMismatch. Reports evidence
/// only: a clean run is not a proof.
PostulationReport verify_postulation(Postulation which,
                                     const SearchConfig& config);

}  // namespace csdiv
