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

#include "csdiv/serialization.hpp"

#include <string>
#include <vector>

namespace csdiv {

using nlohmann::json;

namespace {

PmfTriple pmfs_from_json(const json& j, double tolerance) {
  auto one = [&](const char* key) {
    return Pmf::validate(j.at(key).get<std::vector<double>>(), tolerance);
  };
  return {one("P"), one("Q"), one("R")};
}

json pmfs_to_json(const PmfTriple& pmfs) {
  return {{"P", pmfs[0]}, {"Q", pmfs[1]}, {"R", pmfs[2]}};
}

}  // namespace

void to_json(json& j, const ExtendedReal& v) {
  // JSON has no infinity literal.
  if (v.is_infinite()) {
    j = "inf";
  } else {
    j = v.value();
  }
}

void to_json(json& j, const TriangleReport& r) {
  j = {{"d_pq", r.d_pq},       {"d_qr", r.d_qr},
       {"d_pr", r.d_pr},       {"deficit", r.deficit},
       {"k", r.k.value()},     {"variant", to_string(r.variant)}};
}

void from_json(const json& j, TriangleReport& r) {
  r.d_pq = j.at("d_pq").get<double>();
  r.d_qr = j.at("d_qr").get<double>();
  r.d_pr = j.at("d_pr").get<double>();
  r.deficit = j.at("deficit").get<double>();
  r.k = KParam(j.at("k").get<double>());
  r.variant = parse_variant(j.at("variant").get<std::string>());
}

void to_json(json& j, const RefinementTrace& t) {
  json steps = json::array();
  for (const RefinementStep& s : t.steps) {
    steps.push_back({{"step", s.step}, {"deficit", s.deficit}});
  }
  j = {{"initial_deficit", t.initial_deficit},
       {"final_deficit", t.final_deficit},
       {"accepted_steps", t.accepted_steps},
       {"final_step", t.final_step},
       {"steps", steps}};
}

void from_json(const json& j, RefinementTrace& t) {
  t.initial_deficit = j.at("initial_deficit").get<double>();
  t.final_deficit = j.at("final_deficit").get<double>();
  t.accepted_steps = j.at("accepted_steps").get<std::size_t>();
  t.final_step = j.at("final_step").get<double>();
  t.steps.clear();
  for (const json& s : j.at("steps")) {
    t.steps.push_back({s.at("step").get<double>(), s.at("deficit").get<double>()});
  }
}

void to_json(json& j, const CounterexampleRecord& r) {
  j = {{"pmfs", pmfs_to_json(r.pmfs)},
       {"simplex_tolerance", r.pmfs[0].tolerance()},
       {"k", r.k.value()},
       {"variant", to_string(r.variant)},
       {"deficit", r.deficit},
       {"orientation", to_string(r.orientation)},
       {"seed", r.seed},
       {"trial_index", r.trial_index},
       {"refined", r.refined},
       {"violation_threshold", r.violation_threshold}};
  if (r.trace) j["refinement_trace"] = *r.trace;
}

void from_json(const json& j, CounterexampleRecord& r) {
  r.pmfs = pmfs_from_json(j.at("pmfs"),
                          j.value("simplex_tolerance", kDefaultSimplexTolerance));
  r.k = KParam(j.at("k").get<double>());
  r.variant = parse_variant(j.at("variant").get<std::string>());
  r.deficit = j.at("deficit").get<double>();
  r.orientation = parse_orientation(j.at("orientation").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.trial_index = j.at("trial_index").get<std::uint64_t>();
  r.refined = j.at("refined").get<bool>();
  r.violation_threshold = j.at("violation_threshold").get<double>();
  if (j.contains("refinement_trace")) {
    r.trace = j.at("refinement_trace").get<RefinementTrace>();
  } else {
    r.trace.reset();
  }
}

void to_json(json& j, const SearchConfig& c) {
  json injected = json::array();
  for (const PmfTriple& t : c.injected) {
    json item = pmfs_to_json(t);
    item["simplex_tolerance"] = t[0].tolerance();
    injected.push_back(std::move(item));
  }
  j = {{"n", c.n},
       {"k", c.k.value()},
       {"variant", to_string(c.variant)},
       {"trials", c.trials},
       {"base_seed", c.base_seed},
       {"refine", c.refine},
       {"violation_threshold", c.violation_threshold},
       {"max_archived", c.max_archived},
       {"injected", injected}};
}

void from_json(const json& j, SearchConfig& c) {
  c.n = j.at("n").get<std::size_t>();
  c.k = KParam(j.at("k").get<double>());
  c.variant = parse_variant(j.at("variant").get<std::string>());
  c.trials = j.at("trials").get<std::uint64_t>();
  c.base_seed = j.at("base_seed").get<std::uint64_t>();
  c.refine = j.at("refine").get<bool>();
  c.violation_threshold = j.at("violation_threshold").get<double>();
  c.max_archived = j.value("max_archived", std::size_t{16});
  c.injected.clear();
  if (j.contains("injected")) {
    for (const json& item : j.at("injected")) {
      c.injected.push_back(pmfs_from_json(
          item, item.value("simplex_tolerance", kDefaultSimplexTolerance)));
    }
  }
}

void to_json(json& j, const PostulationReport& r) {
  json archive = json::array();
  for (const CounterexampleRecord& rec : r.counterexamples) {
    archive.push_back(rec);
  }
  j = {{"postulation", to_string(r.which)},
       {"config", r.config},
       {"violations_found", r.violations_found},
       {"worst_deficit", r.worst_deficit},
       {"worst_trial_index", r.worst_trial_index},
       {"trials_run", r.trials_run},
       {"counterexamples", archive}};
  if (r.first_counterexample) {
    j["first_counterexample"] = *r.first_counterexample;
  } else {
    j["first_counterexample"] = nullptr;
  }
}

void from_json(const json& j, PostulationReport& r) {
  r.which = parse_postulation(j.at("postulation").get<std::string>());
  r.config = j.at("config").get<SearchConfig>();
  r.violations_found = j.at("violations_found").get<std::uint64_t>();
  r.worst_deficit = j.at("worst_deficit").get<double>();
  r.worst_trial_index = j.at("worst_trial_index").get<std::uint64_t>();
  r.trials_run = j.at("trials_run").get<std::uint64_t>();
  r.counterexamples.clear();
  for (const json& rec : j.at("counterexamples")) {
    r.counterexamples.push_back(rec.get<CounterexampleRecord>());
  }
  const json& first = j.at("first_counterexample");
  if (first.is_null()) {
    r.first_counterexample.reset();
  } else {
    r.first_counterexample = first.get<CounterexampleRecord>();
  }
}

void to_json(json& j, const ReductionProblem& p) {
  j = {{"triples", {p.triples[0], p.triples[1], p.triples[2]}},
       {"k", p.k.value()},
       {"target", p.target}};
}

void from_json(const json& j, ReductionProblem& p) {
  const json& t = j.at("triples");
  // Rebuild through build_problem so sums and the target are re-checked.
  p = build_problem(t.at(0).get<LetterTriple>(), t.at(1).get<LetterTriple>(),
                    t.at(2).get<LetterTriple>(), KParam(j.at("k").get<double>()));
}

void to_json(json& j, const ReductionSolution& s) {
  const ReductionCandidate& c = s.candidate;
  j = {{"alpha", c.shift.alpha},
       {"beta", c.shift.beta},
       {"gamma", c.shift.gamma},
       {"tx", c.x},
       {"ty", c.y},
       {"residual", s.residual},
       {"feasible", s.feasible},
       {"solver_trace",
        {{"cells_visited", s.trace.cells_visited},
         {"residual_evaluations", s.trace.residual_evaluations},
         {"bisection_steps", s.trace.bisection_steps},
         {"bracket_width", s.trace.bracket_width},
         {"bracket_invariant_held", s.trace.bracket_invariant_held}}}};
}

void from_json(const json& j, ReductionSolution& s) {
  s.candidate.shift = {j.at("alpha").get<double>(), j.at("beta").get<double>(),
                       j.at("gamma").get<double>()};
  s.candidate.x = j.at("tx").get<std::array<double, 3>>();
  s.candidate.y = j.at("ty").get<std::array<double, 3>>();
  s.residual = j.at("residual").get<double>();
  s.feasible = j.at("feasible").get<bool>();
  const json& t = j.at("solver_trace");
  s.trace.cells_visited = t.at("cells_visited").get<std::size_t>();
  s.trace.residual_evaluations = t.at("residual_evaluations").get<std::size_t>();
  s.trace.bisection_steps = t.at("bisection_steps").get<std::size_t>();
  s.trace.bracket_width = t.at("bracket_width").get<double>();
  s.trace.bracket_invariant_held = t.at("bracket_invariant_held").get<bool>();
}

}  // namespace csdiv

namespace nlohmann {

void adl_serializer<csdiv::Pmf>::to_json(json& j, const csdiv::Pmf& p) {
  j = std::vector<double>(p.values().begin(), p.values().end());
}

csdiv::Pmf adl_serializer<csdiv::Pmf>::from_json(const json& j) {
  return csdiv::Pmf::validate(j.get<std::vector<double>>());
}

}  // namespace nlohmann
