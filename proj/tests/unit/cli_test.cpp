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

#include "csdiv_cli/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "csdiv/error.hpp"
#include "csdiv/serialization.hpp"

namespace csdiv::cli {
namespace {

using nlohmann::json;

struct CliRun {
  int status;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("csdiv_cli_test_" + name))
      .string();
}

TEST(CliTest, DivergenceOfThreeLetterPair) {
  const CliRun r = run_cli({"divergence", "--p", "0.238,0.013,0.749", "--q",
                         "0.253,0.223,0.524", "--k", "2", "--measures",
                         "cs,kl,js,js-metric"});
  ASSERT_EQ(r.status, kExitClean) << r.err;
  const json doc = r.doc();
  EXPECT_EQ(doc["command"], "divergence");
  EXPECT_EQ(doc["schema_version"], kReportSchemaVersion);
  EXPECT_NEAR(doc["results"]["chen_sbert"].get<double>(), 0.0527755865381262, 1e-15);
  EXPECT_TRUE(doc["results"].contains("js_metric"));
}

TEST(CliTest, IdenticalInputsGiveZeroEverywhere) {
  const CliRun r = run_cli({"divergence", "--p", "0.2,0.8", "--q", "0.2,0.8",
                         "--measures", "cs,kl,js,js-metric"});
  ASSERT_EQ(r.status, kExitClean);
  const json doc = r.doc();
  for (const auto& [key, value] : doc["results"].items()) {
    EXPECT_EQ(value.get<double>(), 0.0) << key;
  }
}

TEST(CliTest, KlInfinityIsReported) {
  const CliRun r = run_cli({"divergence", "--p", "1,0", "--q", "0,1", "--measures", "kl"});
  ASSERT_EQ(r.status, kExitClean);
  EXPECT_EQ(r.doc()["results"]["kl_pq"], "inf");
}

TEST(CliTest, MalformedPmfNamesTheEntry) {
  const CliRun r = run_cli({"divergence", "--p", "0.5,0.5x", "--q", "0.5,0.5"});
  EXPECT_EQ(r.status, kExitInput);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  EXPECT_NE(r.err.find("entry 1 of --p"), std::string::npos);
}

TEST(CliTest, InvalidPmfAndLengthMismatchAreInputErrors) {
  EXPECT_EQ(run_cli({"divergence", "--p", "0.5,0.6", "--q", "0.5,0.5"}).status,
            kExitInput);
  const CliRun r = run_cli({"divergence", "--p", "1", "--q", "0.5,0.5"});
  EXPECT_EQ(r.status, kExitInput);
  EXPECT_NE(r.err.find("LengthMismatch"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli({}).status, kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).status, kExitUsage);
  EXPECT_EQ(run_cli({"postulate", "P1", "--k", "2", "--trials", "10"}).status,
            kExitUsage);
  EXPECT_EQ(run_cli({"--help"}).status, kExitClean);
}

TEST(CliTest, PmfsFromInputFile) {
  const std::string path = temp_path("pmfs.json");
  std::ofstream(path) << R"({"P": [0.238, 0.013, 0.749],
                             "Q": [0.253, 0.223, 0.524],
                             "R": [0.511, 0.418, 0.071]})";
  const CliRun r = run_cli({"triangle", "--input", path, "--k", "2"});
  EXPECT_EQ(r.status, kExitViolation);
  const json doc = r.doc();
  EXPECT_EQ(doc["results"]["worst_orientation"], "P-Q-R");
  EXPECT_NEAR(doc["results"]["worst"]["deficit"].get<double>(), -0.124, 1.5e-3);
  std::filesystem::remove(path);
}

TEST(CliTest, TriangleToleranceFlagAdmitsRoundedPmfs) {
  const std::vector<std::string> base = {
      "triangle", "--p", "0.143,0.282,0.326,0.248", "--q",
      "0.260,0.172,0.300,0.268", "--r", "0.040,0.658,0.215,0.088", "--k", "2"};
  EXPECT_EQ(run_cli(base).status, kExitInput);
  auto loose = base;
  loose.insert(loose.end(), {"--tolerance", "2e-3"});
  const CliRun r = run_cli(loose);
  EXPECT_EQ(r.status, kExitViolation);
  EXPECT_EQ(r.doc()["results"]["worst_orientation"], "R-P-Q");
}

TEST(CliTest, PostulateP1AtHalfIsClean) {
  const CliRun r = run_cli({"postulate", "P1", "--k", "0.5", "--n", "3", "--trials",
                         "100000", "--seed", "7"});
  ASSERT_EQ(r.status, kExitClean) << r.err;
  EXPECT_EQ(r.doc()["results"]["violations_found"], 0);
  EXPECT_EQ(r.doc()["results"]["trials_run"], 100000);
}

TEST(CliTest, PostulateFalsificationExitsThreeAndArchives) {
  const std::string archive = temp_path("archive.jsonl");
  std::filesystem::remove(archive);
  const std::vector<std::string> args = {"postulate", "P2", "--k", "50", "--n", "3",
                                         "--trials", "2000", "--seed", "1",
                                         "--max-archived", "2", "--archive", archive};
  const CliRun first = run_cli(args);
  ASSERT_EQ(first.status, kExitViolation) << first.err;
  const CliRun second = run_cli(args);
  ASSERT_EQ(second.status, kExitViolation);
  // Append-only: both runs' records are kept.
  std::ifstream in(archive);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto rec = json::parse(line).get<CounterexampleRecord>();
    EXPECT_NEAR(recompute_deficit(rec), rec.deficit, 1e-12);
    ++lines;
  }
  EXPECT_EQ(lines, 4);
  std::filesystem::remove(archive);
}

TEST(CliTest, SearchIsReproducible) {
  const std::vector<std::string> args = {"search", "--k", "2", "--n", "3",
                                         "--trials", "100000", "--seed", "42",
                                         "--refine"};
  const CliRun a = run_cli(args);
  const CliRun b = run_cli(args);
  ASSERT_EQ(a.status, kExitViolation);
  EXPECT_EQ(a.doc()["results"].dump(), b.doc()["results"].dump());
  EXPECT_EQ(a.doc()["spec"].dump(), b.doc()["spec"].dump());
  const auto rec = a.doc()["results"]["counterexample"].get<CounterexampleRecord>();
  EXPECT_TRUE(rec.refined);
  EXPECT_NEAR(recompute_deficit(rec), rec.deficit, 1e-12);
}

TEST(CliTest, SearchWithInjectedInstances) {
  const std::string path = temp_path("inject.json");
  std::ofstream(path) << R"({"instances": [{"P": [0.238, 0.013, 0.749],
                                            "Q": [0.253, 0.223, 0.524],
                                            "R": [0.511, 0.418, 0.071]}]})";
  const CliRun r = run_cli({"search", "--k", "2", "--n", "3", "--trials", "5",
                         "--inject", path});
  ASSERT_EQ(r.status, kExitViolation) << r.err;
  const json doc = r.doc();
  const json& rec = doc["results"]["counterexample"];
  EXPECT_EQ(rec["trial_index"], 0);
  EXPECT_NEAR(rec["deficit"].get<double>(), -0.124, 1.5e-3);
  std::filesystem::remove(path);
}

TEST(CliTest, SearchWritesTrialTable) {
  const std::string table = temp_path("trials.csv");
  const CliRun r = run_cli({"search", "--k", "1", "--n", "3", "--trials", "50",
                         "--seed", "1", "--trial-table", table});
  EXPECT_EQ(r.status, kExitClean);
  std::ifstream in(table);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "trial_index,orientation,d_pq,d_qr,d_pr,deficit");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 50);
  std::filesystem::remove(table);
}

TEST(CliTest, ReduceFirstInstance) {
  const CliRun r = run_cli({"reduce", "--p", "0.5,0.1,0.2", "--q", "0.1,0.2,0.4",
                         "--r", "0.3,0.3,0.1"});
  ASSERT_EQ(r.status, kExitClean) << r.err;
  const json res = r.doc()["results"];
  EXPECT_NEAR(res["target"].get<double>(), 0.4967, 5e-4);
  ASSERT_TRUE(res["found"].get<bool>());
  EXPECT_TRUE(res["solution"]["feasible"].get<bool>());
  EXPECT_LE(std::fabs(res["solution"]["residual"].get<double>()), 1e-9);
  EXPECT_LE(std::fabs(res["recomputed_residual"].get<double>()), 1e-9);
}

TEST(CliTest, ReduceAlongPinnedAxis) {
  const CliRun r = run_cli({"reduce", "--p", "0.5,0.1,0.2", "--q", "0.1,0.2,0.4",
                         "--r", "0.3,0.3,0.1", "--free", "alpha", "--beta",
                         "-0.125", "--gamma", "-0.04", "--scan-points", "2048"});
  ASSERT_EQ(r.status, kExitClean) << r.err;
  const json doc = r.doc();
  bool inside = false;
  for (const json& root : doc["results"]["roots"]) {
    const double a = root["alpha"].get<double>();
    inside |= a >= -0.1668335 && a <= -0.1668332;
  }
  EXPECT_TRUE(inside);
}

TEST(CliTest, ReduceRejectsOversizedSums) {
  EXPECT_EQ(run_cli({"reduce", "--p", "0.5,0.5,0.5", "--q", "0,0,0", "--r",
                     "0,0,0"}).status,
            kExitInput);
}

TEST(CliTest, LemmaGrid) {
  const CliRun ok = run_cli({"lemma-grid", "--k", "1", "--grid", "51"});
  ASSERT_EQ(ok.status, kExitClean);
  EXPECT_GE(ok.doc()["results"]["min_case_fraction"].get<double>(), 1.0 - 1e-12);
  const CliRun beyond = run_cli({"lemma-grid", "--k", "2", "--grid", "21"});
  EXPECT_EQ(beyond.status, kExitViolation);
  EXPECT_FALSE(beyond.doc()["results"]["holds"].get<bool>());
}

TEST(CliTest, CsvOutputToFile) {
  const std::string path = temp_path("div.csv");
  const CliRun r = run_cli({"divergence", "--p", "0.5,0.5", "--q", "1,0", "--format",
                         "csv", "--output", path});
  ASSERT_EQ(r.status, kExitClean);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_NE(body.str().find("results.chen_sbert,0.5849625007211"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(ParseDecimalListTest, AcceptsSpacesAndRejectsJunk) {
  EXPECT_EQ(parse_decimal_list(" 0.25, 0.75 ", "--p"),
            (std::vector<double>{0.25, 0.75}));
  EXPECT_THROW(parse_decimal_list("0.25,,0.75", "--p"), Error);
  EXPECT_THROW(parse_decimal_list("", "--p"), Error);
}

}  // namespace
}  // namespace csdiv::cli
