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

#include <nlohmann/json.hpp>

#include "csdiv/divergence.hpp"
#include "csdiv/pmf.hpp"
#include "csdiv/reduction.hpp"
#include "csdiv/simplex_search.hpp"
#include "csdiv/triangle.hpp"

namespace csdiv {

/// Bumped whenever a field in any document changes meaning.
inline constexpr int kReportSchemaVersion = 1;

void to_json(nlohmann::json& j, const ExtendedReal& v);

void to_json(nlohmann::json& j, const TriangleReport& r);
void from_json(const nlohmann::json& j, TriangleReport& r);

void to_json(nlohmann::json& j, const RefinementTrace& t);
void from_json(const nlohmann::json& j, RefinementTrace& t);

void to_json(nlohmann::json& j, const CounterexampleRecord& r);
void from_json(const nlohmann::json& j, CounterexampleRecord& r);

void to_json(nlohmann::json& j, const SearchConfig& c);
void from_json(const nlohmann::json& j, SearchConfig& c);

void to_json(nlohmann::json& j, const PostulationReport& r);
void from_json(const nlohmann::json& j, PostulationReport& r);

void to_json(nlohmann::json& j, const ReductionProblem& p);
void from_json(const nlohmann::json& j, ReductionProblem& p);

void to_json(nlohmann::json& j, const ReductionSolution& s);
void from_json(const nlohmann::json& j, ReductionSolution& s);

}  // namespace csdiv

namespace nlohmann {

template <>
struct adl_serializer<csdiv::Pmf> {
  static void to_json(json& j, const csdiv::Pmf& p);
  /// Re-validates with the default tolerance.
  static csdiv::Pmf from_json(const json& j);
};

template <>
struct adl_serializer<csdiv::KParam> {
  static void to_json(json& j, csdiv::KParam k) { j = k.value(); }
  static csdiv::KParam from_json(const json& j) {
    return csdiv::KParam(j.get<double>());
  }
};

template <>
struct adl_serializer<csdiv::LetterTriple> {
  static void to_json(json& j, const csdiv::LetterTriple& t) {
    j = json::array({t.p(), t.q(), t.r()});
  }
  static csdiv::LetterTriple from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(),
            j.at(2).get<double>()};
  }
};

}  // namespace nlohmann
