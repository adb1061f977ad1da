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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "csdiv/divergence.hpp"
#include "csdiv/error.hpp"
#include "csdiv/reduction.hpp"
#include "csdiv/serialization.hpp"
#include "csdiv/simplex_search.hpp"
#include "csdiv/triangle.hpp"

namespace csdiv::cli {
namespace {

using nlohmann::json;

struct Outcome {
  json spec;
  json results;
  int status = kExitClean;
};

struct CommonOptions {
  std::string output;
  std::string format = "json";
  double tolerance = kDefaultSimplexTolerance;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

std::vector<double> json_array(const json& doc, const std::string& key,
                               const std::string& path) {
  if (!doc.contains(key)) {
    throw Error(ErrorCode::kParseError, path + ": missing array '" + key + "'");
  }
  const json& arr = doc.at(key);
  if (!arr.is_array()) {
    throw Error(ErrorCode::kParseError, path + ": '" + key + "' is not an array");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      std::ostringstream msg;
      msg << path << ": entry " << i << " of '" << key << "' is not a number";
      throw Error(ErrorCode::kParseError, msg.str());
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

// Validation errors are re-raised with the flag or file the PMF came from.
Pmf validate_named(const std::vector<double>& raw, double tolerance,
                   const std::string& name) {
  try {
    return Pmf::validate(raw, tolerance);
  } catch (const Error& e) {
    throw Error(e.code(), name + ": " + e.what());
  }
}

// Pulls the named PMFs from --p/--q/--r or from --input.
std::vector<Pmf> load_pmfs(const std::vector<std::string>& names,
                           const std::vector<std::string*>& inline_values,
                           const std::string& input_path, double tolerance) {
  std::optional<json> doc;
  if (!input_path.empty()) doc = read_json_file(input_path);
  std::vector<Pmf> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string flag = "--" + std::string(1, static_cast<char>(
                                               std::tolower(names[i][0])));
    std::vector<double> raw;
    if (!inline_values[i]->empty()) {
      raw = parse_decimal_list(*inline_values[i], flag);
      out.push_back(validate_named(raw, tolerance, flag));
    } else if (doc) {
      raw = json_array(*doc, names[i], input_path);
      out.push_back(validate_named(raw, tolerance, input_path + ":" + names[i]));
    } else {
      throw Error(ErrorCode::kParseError,
                  "no value for " + names[i] + " (use " + flag + " or --input)");
    }
  }
  return out;
}

std::vector<PmfTriple> load_injected(const std::string& path,
                                     double tolerance) {
  std::vector<PmfTriple> out;
  if (path.empty()) return out;
  const json doc = read_json_file(path);
  const json& list = doc.is_array() ? doc : doc.at("instances");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = path + "[" + std::to_string(i) + "]";
    out.push_back({validate_named(json_array(list[i], "P", where), tolerance,
                                  where + ".P"),
                   validate_named(json_array(list[i], "Q", where), tolerance,
                                  where + ".Q"),
                   validate_named(json_array(list[i], "R", where), tolerance,
                                  where + ".R")});
  }
  return out;
}

void append_archive(const std::string& path,
                    const std::vector<CounterexampleRecord>& records) {
  if (path.empty() || records.empty()) return;
  // Append-only: earlier findings are never rewritten.
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorCode::kParseError, "cannot open archive '" + path + "'");
  for (const CounterexampleRecord& r : records) out << json(r).dump() << '\n';
}

void write_trial_table(const std::string& path, const SearchConfig& config,
                       std::uint64_t trials) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  out.precision(17);
  out << "trial_index,orientation,d_pq,d_qr,d_pr,deficit\n";
  for (std::uint64_t i = 0; i < trials; ++i) {
    const TrialResult t = run_trial(config, i);
    out << i << ',' << to_string(t.orientation) << ',' << t.report.d_pq << ','
        << t.report.d_qr << ',' << t.report.d_pr << ',' << t.report.deficit
        << '\n';
  }
}

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      flatten(j[i], prefix + "." + std::to_string(i), out);
    }
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump())
        << '\n';
  }
}

// --- commands --------------------------------------------------------------

struct DivergenceArgs {
  std::string p, q, input;
  double k = 1.0;
  std::vector<std::string> measures = {"cs"};
};

Outcome cmd_divergence(const DivergenceArgs& a, const CommonOptions& common) {
  std::string p = a.p, q = a.q;
  const auto pmfs =
      load_pmfs({"P", "Q"}, {&p, &q}, a.input, common.tolerance);
  const KParam k(a.k);
  Outcome o;
  o.spec = {{"P", pmfs[0]}, {"Q", pmfs[1]}, {"k", a.k},
            {"measures", a.measures}, {"tolerance", common.tolerance}};
  for (const std::string& m : a.measures) {
    if (m == "cs") {
      o.results["chen_sbert"] = chen_sbert(pmfs[0], pmfs[1], k);
    } else if (m == "kl") {
      o.results["kl_pq"] = kl_divergence(pmfs[0], pmfs[1]);
      o.results["kl_qp"] = kl_divergence(pmfs[1], pmfs[0]);
    } else if (m == "js") {
      o.results["js"] = js_divergence(pmfs[0], pmfs[1]);
    } else if (m == "js-metric") {
      o.results["js_metric"] = js_metric(pmfs[0], pmfs[1]);
    } else {
      throw Error(ErrorCode::kParseError, "unknown measure '" + m + "'");
    }
  }
  return o;
}

struct TriangleArgs {
  std::string p, q, r, input, variant = "plain";
  double k = 1.0;
  double threshold = -1e-9;
};

Outcome cmd_triangle(const TriangleArgs& a, const CommonOptions& common) {
  std::string p = a.p, q = a.q, r = a.r;
  const auto pmfs =
      load_pmfs({"P", "Q", "R"}, {&p, &q, &r}, a.input, common.tolerance);
  const KParam k(a.k);
  const Variant variant = parse_variant(a.variant);
  Outcome o;
  o.spec = {{"P", pmfs[0]}, {"Q", pmfs[1]}, {"R", pmfs[2]}, {"k", a.k},
            {"variant", a.variant}, {"violation_threshold", a.threshold},
            {"tolerance", common.tolerance}};
  json per = json::object();
  for (Orientation orientation : kAllOrientations) {
    const auto [x, y, z] = orient(orientation, pmfs[0], pmfs[1], pmfs[2]);
    per[std::string(to_string(orientation))] =
        triangle_deficit(*x, *y, *z, k, variant);
  }
  const TrialResult worst =
      evaluate_triple({pmfs[0], pmfs[1], pmfs[2]}, k, variant);
  o.results = {{"orientations", per},
               {"worst_orientation", to_string(worst.orientation)},
               {"worst", worst.report},
               {"violation", worst.report.deficit < a.threshold}};
  if (worst.report.deficit < a.threshold) o.status = kExitViolation;
  return o;
}

struct SearchArgs {
  std::size_t n = 3;
  double k = 2.0;
  std::string variant = "plain";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  bool refine = false;
  double threshold = -1e-9;
  std::string inject, archive, trial_table;
  std::size_t max_archived = 16;
  unsigned workers = 0;
};

SearchConfig make_config(const SearchArgs& a, Variant variant,
                         const CommonOptions& common) {
  SearchConfig c;
  c.n = a.n;
  c.k = KParam(a.k);
  c.variant = variant;
  c.trials = a.trials;
  c.base_seed = a.seed;
  c.refine = a.refine;
  c.violation_threshold = a.threshold;
  c.injected = load_injected(a.inject, common.tolerance);
  c.max_archived = a.max_archived;
  c.workers = a.workers;
  return c;
}

Outcome cmd_search(const SearchArgs& a, const CommonOptions& common) {
  const SearchConfig config = make_config(a, parse_variant(a.variant), common);
  Outcome o;
  o.spec = config;
  const auto record = search_counterexample(config);
  o.results = {{"found", record.has_value()}};
  if (record) {
    o.results["counterexample"] = *record;
    o.results["recomputed_deficit"] = recompute_deficit(*record);
    append_archive(a.archive, {*record});
    o.status = kExitViolation;
  } else {
    o.results["counterexample"] = nullptr;
  }
  write_trial_table(a.trial_table, config, config.trials);
  return o;
}

Outcome cmd_postulate(const std::string& which_text, const SearchArgs& a,
                      const CommonOptions& common) {
  const Postulation which = parse_postulation(which_text);
  const Variant variant =
      which == Postulation::kP1 ? Variant::kPlain : Variant::kKthRoot;
  const SearchConfig config = make_config(a, variant, common);
  Outcome o;
  o.spec = {{"postulation", to_string(which)}, {"config", config}};
  const PostulationReport report = verify_postulation(which, config);
  o.results = report;
  if (report.violations_found > 0) {
    append_archive(a.archive, report.counterexamples);
    o.status = kExitViolation;
  }
  write_trial_table(a.trial_table, config, config.trials);
  return o;
}

struct ReduceArgs {
  std::string p, q, r;
  double k = 1.0;
  double residual_tol = 1e-9;
  std::size_t grid = 101;
  std::size_t scan_points = 64;
  std::string free_axis;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

std::array<double, 3> row3(const std::string& text, const std::string& flag) {
  const std::vector<double> v = parse_decimal_list(text, flag);
  if (v.size() != 3) {
    throw Error(ErrorCode::kParseError,
                flag + " needs exactly three values (letters 1, 2, 3)");
  }
  return {v[0], v[1], v[2]};
}

Outcome cmd_reduce(const ReduceArgs& a) {
  const ReductionProblem problem = build_problem_rows(
      row3(a.p, "--p"), row3(a.q, "--q"), row3(a.r, "--r"), KParam(a.k));
  SolverOptions options;
  options.residual_tol = a.residual_tol;
  options.grid = a.grid;
  options.scan_points = a.scan_points;
  Outcome o;
  o.spec = {{"problem", problem},
            {"residual_tol", a.residual_tol},
            {"grid", a.grid},
            {"scan_points", a.scan_points}};
  o.results = {{"target", problem.target}};
  if (a.free_axis.empty()) {
    const auto solution = solve(problem, options);
    o.results["found"] = solution.has_value();
    o.results["solution"] = solution ? json(*solution) : json(nullptr);
    if (solution) {
      o.results["recomputed_residual"] =
          residual(problem, solution->candidate.shift);
    }
    return o;
  }
  Axis axis;
  if (a.free_axis == "alpha") {
    axis = Axis::kAlpha;
  } else if (a.free_axis == "beta") {
    axis = Axis::kBeta;
  } else if (a.free_axis == "gamma") {
    axis = Axis::kGamma;
  } else {
    throw Error(ErrorCode::kParseError, "unknown axis '" + a.free_axis + "'");
  }
  o.spec["free_axis"] = a.free_axis;
  o.spec["pinned"] = {{"alpha", a.alpha}, {"beta", a.beta}, {"gamma", a.gamma}};
  const auto roots = roots_along(problem, axis, {a.alpha, a.beta, a.gamma},
                                 options);
  json list = json::array();
  for (const ReductionSolution& s : roots) list.push_back(s);
  o.results["found"] = !roots.empty();
  o.results["roots"] = list;
  return o;
}

struct LemmaGridArgs {
  double k = 1.0;
  std::size_t grid = 51;
  std::size_t xy_grid = 101;
  double tol = 1e-12;
};

Outcome cmd_lemma_grid(const LemmaGridArgs& a) {
  if (a.grid < 2 || a.xy_grid < 2) {
    throw Error(ErrorCode::kConfigMismatch, "grids need at least 2 points");
  }
  const KParam k(a.k);
  Outcome o;
  o.spec = {{"k", a.k}, {"grid", a.grid}, {"xy_grid", a.xy_grid},
            {"tolerance", a.tol}};
  auto at = [](std::size_t i, std::size_t n) {
    return static_cast<double>(i) / static_cast<double>(n - 1);
  };
  double min_fraction = std::numeric_limits<double>::infinity();
  std::array<double, 3> argmin{};
  for (std::size_t i = 0; i < a.grid; ++i) {
    for (std::size_t j = 0; j < a.grid; ++j) {
      for (std::size_t l = 0; l < a.grid; ++l) {
        const LetterTriple t(at(i, a.grid), at(j, a.grid), at(l, a.grid));
        const double f = case_fraction(t, k);
        if (f < min_fraction) {
          min_fraction = f;
          argmin = {t.p(), t.q(), t.r()};
        }
      }
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  std::array<double, 2> argmin_ab{};
  for (std::size_t i = 0; i < a.xy_grid; ++i) {
    for (std::size_t j = 0; j < a.xy_grid; ++j) {
      const double av = at(i, a.xy_grid), bv = at(j, a.xy_grid);
      const XYTerms xy = lemma2_xy(av, bv, k);
      if (xy.x - xy.y < min_gap) {
        min_gap = xy.x - xy.y;
        argmin_ab = {av, bv};
      }
    }
  }
  const bool holds = min_fraction >= 1.0 - a.tol && min_gap >= -a.tol;
  o.results = {{"min_case_fraction", min_fraction},
               {"min_case_fraction_at", argmin},
               {"min_x_minus_y", min_gap},
               {"min_x_minus_y_at", argmin_ab},
               {"holds", holds}};
  if (!holds) o.status = kExitViolation;
  return o;
}

void emit(const std::string& command, const Outcome& o, double seconds,
          const CommonOptions& common, std::ostream& out) {
  const json doc = {{"schema_version", kReportSchemaVersion},
                    {"tool", "csdiv"},
                    {"tool_version", std::string(kVersion)},
                    {"command", command},
                    {"spec", o.spec},
                    {"results", o.results},
                    {"duration_seconds", seconds}};
  std::ofstream file;
  std::ostream* sink = &out;
  if (!common.output.empty()) {
    file.open(common.output);
    if (!file) {
      throw Error(ErrorCode::kParseError,
                  "cannot open output '" + common.output + "'");
    }
    sink = &file;
  }
  if (common.format == "csv") {
    *sink << "key,value\n";
    flatten(doc, "", *sink);
  } else {
    *sink << doc.dump(2) << '\n';
  }
}

void add_common(CLI::App* cmd, CommonOptions& common) {
  cmd->add_option("-o,--output", common.output, "Write the report here");
  cmd->add_option("--format", common.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tolerance", common.tolerance,
                  "Simplex sum tolerance used to validate PMFs");
}

void add_search_options(CLI::App* cmd, SearchArgs& s) {
  cmd->add_option("--n", s.n, "Alphabet size");
  cmd->add_option("--k", s.k, "Exponent k");
  cmd->add_option("--trials", s.trials, "Number of trials");
  cmd->add_option("--seed", s.seed, "Base seed");
  cmd->add_flag("--refine", s.refine, "Deepen violations by coordinate descent");
  cmd->add_option("--threshold", s.threshold, "Violation threshold (< 0)");
  cmd->add_option("--inject", s.inject,
                  "JSON file of explicit (P, Q, R) instances run first");
  cmd->add_option("--archive", s.archive,
                  "Append counterexamples to this JSON-lines file");
  cmd->add_option("--trial-table", s.trial_table,
                  "Write one CSV row per trial to this file");
  cmd->add_option("--max-archived", s.max_archived,
                  "Counterexamples kept in the report");
  cmd->add_option("--workers", s.workers, "Worker threads (0 = all cores)");
}

}  // namespace

std::vector<double> parse_decimal_list(std::string_view text,
                                       std::string_view flag) {
  std::vector<double> out;
  std::size_t index = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string entry = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    double value = 0.0;
    const char* begin = entry.data();
    const char* end = entry.data() + entry.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (entry.empty() || ec != std::errc() || ptr != end) {
      std::ostringstream msg;
      msg << "entry " << index << " of " << flag << " ('" << entry
          << "') is not a decimal number";
      throw Error(ErrorCode::kParseError, msg.str());
    }
    out.push_back(value);
    ++index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Chen-Sbert divergence verification toolkit", "csdiv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  CommonOptions common;

  DivergenceArgs div;
  auto* div_cmd = app.add_subcommand("divergence", "D_CS and baseline measures");
  div_cmd->add_option("--p", div.p, "P as comma-separated decimals");
  div_cmd->add_option("--q", div.q, "Q as comma-separated decimals");
  div_cmd->add_option("--input", div.input, "JSON file with arrays P and Q");
  div_cmd->add_option("--k", div.k, "Exponent k");
  div_cmd->add_option("--measures", div.measures, "cs, kl, js, js-metric")
      ->delimiter(',');
  add_common(div_cmd, common);

  TriangleArgs tri;
  auto* tri_cmd = app.add_subcommand("triangle", "Triangle deficits of (P, Q, R)");
  tri_cmd->add_option("--p", tri.p, "P as comma-separated decimals");
  tri_cmd->add_option("--q", tri.q, "Q as comma-separated decimals");
  tri_cmd->add_option("--r", tri.r, "R as comma-separated decimals");
  tri_cmd->add_option("--input", tri.input, "JSON file with arrays P, Q, R");
  tri_cmd->add_option("--k", tri.k, "Exponent k");
  tri_cmd->add_option("--variant", tri.variant, "plain or kth-root")
      ->check(CLI::IsMember({"plain", "kth-root"}));
  tri_cmd->add_option("--threshold", tri.threshold, "Violation threshold");
  add_common(tri_cmd, common);

  SearchArgs search;
  auto* search_cmd =
      app.add_subcommand("search", "Random search for a triangle violation");
  add_search_options(search_cmd, search);
  search_cmd->add_option("--variant", search.variant, "plain or kth-root")
      ->check(CLI::IsMember({"plain", "kth-root"}));
  add_common(search_cmd, common);

  SearchArgs post;
  std::string which;
  auto* post_cmd =
      app.add_subcommand("postulate", "Monte-Carlo evidence for P1 or P2");
  post_cmd->add_option("which", which, "P1 or P2")
      ->required()
      ->check(CLI::IsMember({"P1", "P2", "p1", "p2"}));
  add_search_options(post_cmd, post);
  add_common(post_cmd, common);

  ReduceArgs red;
  auto* red_cmd =
      app.add_subcommand("reduce", "Replace three letter terms by two");
  red_cmd->add_option("--p", red.p, "p1,p2,p3")->required();
  red_cmd->add_option("--q", red.q, "q1,q2,q3")->required();
  red_cmd->add_option("--r", red.r, "r1,r2,r3")->required();
  red_cmd->add_option("--k", red.k, "Exponent k");
  red_cmd->add_option("--residual-tol", red.residual_tol, "Accepted |residual|");
  red_cmd->add_option("--grid", red.grid, "Grid points per side over (beta, gamma)");
  red_cmd->add_option("--scan-points", red.scan_points,
                      "Samples used to bracket roots on the scanned axis");
  red_cmd->add_option("--free", red.free_axis,
                      "Solve along one axis with the other two pinned")
      ->check(CLI::IsMember({"alpha", "beta", "gamma"}));
  red_cmd->add_option("--alpha", red.alpha, "Pinned alpha");
  red_cmd->add_option("--beta", red.beta, "Pinned beta");
  red_cmd->add_option("--gamma", red.gamma, "Pinned gamma");
  add_common(red_cmd, common);

  LemmaGridArgs lemma;
  auto* lemma_cmd = app.add_subcommand(
      "lemma-grid", "Grid check of the two-letter case fraction and X >= Y");
  lemma_cmd->add_option("--k", lemma.k, "Exponent k");
  lemma_cmd->add_option("--grid", lemma.grid, "Points per axis over (p, q, r)");
  lemma_cmd->add_option("--xy-grid", lemma.xy_grid, "Points per axis over (a, b)");
  lemma_cmd->add_option("--tol", lemma.tol, "Slack allowed below the bound");
  add_common(lemma_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitClean;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitClean;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    Outcome outcome;
    std::string command;
    if (*div_cmd) {
      command = "divergence";
      outcome = cmd_divergence(div, common);
    } else if (*tri_cmd) {
      command = "triangle";
      outcome = cmd_triangle(tri, common);
    } else if (*search_cmd) {
      command = "search";
      outcome = cmd_search(search, common);
    } else if (*post_cmd) {
      command = "postulate";
      outcome = cmd_postulate(which, post, common);
    } else if (*red_cmd) {
      command = "reduce";
      outcome = cmd_reduce(red);
    } else {
      command = "lemma-grid";
      outcome = cmd_lemma_grid(lemma);
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
    emit(command, outcome, seconds, common, out);
    return outcome.status;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kConfigMismatch ? kExitUsage : kExitInput;
  }
}

}  // namespace csdiv::cli
