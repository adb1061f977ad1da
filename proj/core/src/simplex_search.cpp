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

#include "csdiv/simplex_search.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "csdiv/divergence.hpp"
#include "csdiv/error.hpp"

namespace csdiv {
namespace {

constexpr std::uint64_t kBlockSize = 1 << 14;
constexpr std::uint64_t kChunkSize = 256;

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Calls body(i) for every i in [begin, end). Each index writes only its own
// output slot, so the result is independent of how indices are scheduled.
template <typename Body>
void parallel_range(std::uint64_t begin, std::uint64_t end, unsigned workers,
                    const Body& body) {
  if (workers <= 1 || end - begin <= kChunkSize) {
    for (std::uint64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{begin};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t lo = next.fetch_add(kChunkSize);
      if (lo >= end) return;
      const std::uint64_t hi = std::min(end, lo + kChunkSize);
      for (std::uint64_t i = lo; i < hi; ++i) body(i);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
}

struct Worst {
  Orientation orientation = Orientation::kPQR;
  TriangleReport report;
};

Worst worst_orientation(const PmfTriple& pmfs, KParam k, Variant variant) {
  const auto& [p, q, r] = pmfs;
  const double d_pq = chen_sbert(p, q, k);
  const double d_qr = chen_sbert(q, r, k);
  const double d_pr = chen_sbert(p, r, k);
  // chen_sbert is bit-for-bit symmetric, so these equal triangle_deficit()
  // on the reordered triple.
  const std::array<TriangleReport, 3> reports = {
      make_triangle_report(d_pq, d_qr, d_pr, k, variant),
      make_triangle_report(d_qr, d_pr, d_pq, k, variant),
      make_triangle_report(d_pr, d_pq, d_qr, k, variant),
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].deficit < reports[best].deficit) best = i;
  }
  return {kAllOrientations[best], reports[best]};
}

CounterexampleRecord make_record(const SearchConfig& config,
                                 const TrialResult& trial) {
  CounterexampleRecord record;
  record.pmfs = trial.pmfs;
  record.k = config.k;
  record.variant = config.variant;
  record.deficit = trial.report.deficit;
  record.orientation = trial.orientation;
  record.seed = config.base_seed;
  record.trial_index = trial.trial_index;
  record.violation_threshold = config.violation_threshold;
  return record;
}

}  // namespace

Pmf sample_simplex(std::size_t n, SplitMix64& stream) {
  if (n <= 1) return Pmf::validate({1.0});
  std::vector<double> cuts(n - 1);
  for (double& c : cuts) c = stream.uniform01();
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> values(n);
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    values[i] = cuts[i] - prev;
    prev = cuts[i];
  }
  values[n - 1] = 1.0 - prev;
  return Pmf::validate(values);
}

void SearchConfig::check() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kConfigMismatch, why);
  };
  if (n < 2) fail("alphabet size n must be >= 2");
  if (trials < 1) fail("trials must be >= 1");
  if (!(violation_threshold < 0.0)) fail("violation_threshold must be < 0");
  if (injected.size() > trials) fail("more injected instances than trials");
  for (const PmfTriple& t : injected) {
    if (t[0].size() != t[1].size() || t[1].size() != t[2].size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "injected P, Q, R must have equal lengths");
    }
  }
}

TrialResult evaluate_triple(const PmfTriple& pmfs, KParam k, Variant variant,
                            std::uint64_t trial_index) {
  Worst worst = worst_orientation(pmfs, k, variant);
  return {trial_index, pmfs, worst.orientation, worst.report};
}

TrialResult run_trial(const SearchConfig& config, std::uint64_t trial_index) {
  if (trial_index < config.injected.size()) {
    return evaluate_triple(config.injected[trial_index], config.k,
                           config.variant, trial_index);
  }
  SplitMix64 stream(trial_stream_seed(config.base_seed, trial_index));
  PmfTriple pmfs = {sample_simplex(config.n, stream),
                    sample_simplex(config.n, stream),
                    sample_simplex(config.n, stream)};
  return evaluate_triple(pmfs, config.k, config.variant, trial_index);
}

double recompute_deficit(const CounterexampleRecord& record) {
  const auto [a, b, c] = orient(record.orientation, record.pmfs[0],
                                record.pmfs[1], record.pmfs[2]);
  return triangle_deficit(*a, *b, *c, record.k, record.variant).deficit;
}

CounterexampleRecord refine_counterexample(CounterexampleRecord record,
                                           const RefineOptions& options) {
  RefinementTrace trace;
  Worst current = worst_orientation(record.pmfs, record.k, record.variant);
  trace.initial_deficit = current.report.deficit;

  double step = options.initial_step;
  while (step >= options.min_step &&
         trace.accepted_steps < options.max_accepted) {
    bool improved = false;
    for (std::size_t m = 0; m < 3; ++m) {
      const std::size_t n = record.pmfs[m].size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          std::vector<double> values(record.pmfs[m].values().begin(),
                                     record.pmfs[m].values().end());
          // Project the move onto the simplex: never push an entry past 0
          // or 1.
          const double moved = std::min({step, values[j], 1.0 - values[i]});
          if (moved <= 0.0) continue;
          values[i] += moved;
          values[j] = (moved == values[j]) ? 0.0 : values[j] - moved;

          PmfTriple trial = record.pmfs;
          trial[m] = Pmf::validate(values, record.pmfs[m].tolerance());
          Worst next = worst_orientation(trial, record.k, record.variant);
          if (next.report.deficit < current.report.deficit) {
            record.pmfs = std::move(trial);
            current = next;
            improved = true;
            ++trace.accepted_steps;
            if (trace.steps.size() < options.trace_limit) {
              trace.steps.push_back({moved, current.report.deficit});
            }
            if (trace.accepted_steps >= options.max_accepted) break;
          }
        }
        if (trace.accepted_steps >= options.max_accepted) break;
      }
      if (trace.accepted_steps >= options.max_accepted) break;
    }
    if (!improved) step /= 2.0;
  }

  trace.final_deficit = current.report.deficit;
  trace.final_step = step;
  record.deficit = current.report.deficit;
  record.orientation = current.orientation;
  record.refined = true;
  record.trace = std::move(trace);
  return record;
}

std::optional<CounterexampleRecord> search_counterexample(
    const SearchConfig& config) {
  config.check();
  const unsigned workers = resolve_workers(config.workers);
  std::vector<double> deficits;
  for (std::uint64_t block = 0; block < config.trials; block += kBlockSize) {
    const std::uint64_t end = std::min(config.trials, block + kBlockSize);
    deficits.assign(end - block, 0.0);
    parallel_range(block, end, workers, [&](std::uint64_t i) {
      deficits[i - block] = run_trial(config, i).report.deficit;
    });
    for (std::uint64_t i = block; i < end; ++i) {
      if (deficits[i - block] < config.violation_threshold) {
        CounterexampleRecord record = make_record(config, run_trial(config, i));
        if (config.refine) record = refine_counterexample(std::move(record));
        return record;
      }
    }
  }
  return std::nullopt;
}

std::string_view to_string(Postulation p) {
  return p == Postulation::kP1 ? "P1" : "P2";
}

Postulation parse_postulation(std::string_view text) {
  if (text == "P1" || text == "p1") return Postulation::kP1;
  if (text == "P2" || text == "p2") return Postulation::kP2;
  throw Error(ErrorCode::kParseError,
              "unknown postulation '" + std::string(text) + "'");
}

PostulationReport verify_postulation(Postulation which,
                                     const SearchConfig& config) {
  const double k = config.k.value();
  std::ostringstream why;
  if (which == Postulation::kP1 && !(k <= 1.0)) {
    why << "P1 covers 0 < k <= 1, got k = " << k;
  } else if (which == Postulation::kP2 && !(k > 1.0)) {
    why << "P2 covers k > 1, got k = " << k;
  } else if (which == Postulation::kP1 && config.variant != Variant::kPlain) {
    why << "P1 is stated for the plain variant";
  } else if (which == Postulation::kP2 &&
             config.variant != Variant::kKthRoot) {
    why << "P2 is stated for the kth-root variant";
  }
  if (!why.str().empty()) throw Error(ErrorCode::kConfigMismatch, why.str());
  config.check();

  PostulationReport report;
  report.config = config;
  report.which = which;
  const unsigned workers = resolve_workers(config.workers);
  std::vector<double> deficits;
  for (std::uint64_t block = 0; block < config.trials; block += kBlockSize) {
    const std::uint64_t end = std::min(config.trials, block + kBlockSize);
    deficits.assign(end - block, 0.0);
    parallel_range(block, end, workers, [&](std::uint64_t i) {
      deficits[i - block] = run_trial(config, i).report.deficit;
    });
    for (std::uint64_t i = block; i < end; ++i) {
      const double d = deficits[i - block];
      if (d < report.worst_deficit) {
        report.worst_deficit = d;
        report.worst_trial_index = i;
      }
      if (d < config.violation_threshold) {
        ++report.violations_found;
        if (report.counterexamples.size() < config.max_archived) {
          CounterexampleRecord record =
              make_record(config, run_trial(config, i));
          if (config.refine) record = refine_counterexample(std::move(record));
          report.counterexamples.push_back(std::move(record));
        }
      }
    }
    report.trials_run = end;
  }
  if (!report.counterexamples.empty()) {
    report.first_counterexample = report.counterexamples.front();
  }
  return report;
}

}  // namespace csdiv
