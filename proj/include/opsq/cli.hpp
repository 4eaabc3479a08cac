// Copyright 2026 The opsq Authors.
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

// Run configuration, report schema and command dispatch behind the opsq
// executable. Exit status: 0 all checks hold / classification as claimed,
// 1 refutation or regression found, 2 usage error.

#ifndef OPSQ_CLI_HPP
#define OPSQ_CLI_HPP

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opsq/falsify.hpp"
#include "opsq/funclass.hpp"
#include "opsq/instances.hpp"
#include "opsq/io.hpp"
#include "opsq/jensen.hpp"
#include "opsq/parallel.hpp"

namespace opsq {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;

/// Invalid command-line or config input.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// "a-b" (inclusive range) or "a,b,c".
inline std::vector<Index> parse_dims(const std::string& text) {
  std::vector<Index> dims;
  const auto to_index = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || v < 1 || v > 64) {
      throw UsageError("--dims: '" + text + "' is not a range a-b or list a,b,c of sizes in 1..64");
    }
    return static_cast<Index>(v);
  };
  const auto dash = text.find('-');
  if (dash != std::string::npos) {
    const Index lo = to_index(text.substr(0, dash));
    const Index hi = to_index(text.substr(dash + 1));
    if (hi < lo) throw UsageError("--dims: empty range '" + text + "'");
    for (Index d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    dims.push_back(to_index(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string command;  // classify | verify | falsify | reproduce
  std::string function_id = "square";
  std::optional<std::string> inequality_id;
  std::string dims;  // empty: per-command default
  std::optional<int> trials;
  std::uint64_t seed = 7;
  double tol = kDefaultTolerance;
  std::string out;  // empty: standard output
  int threads = 1;
  int restarts = 200;
  int steps = 20;
  std::string direction;  // falsify: superquadratic | subquadratic | both; empty: from the claim

  std::string effective_dims() const {
    if (!dims.empty()) return dims;
    return command == "falsify" ? "2,3" : "1-6";
  }
  int effective_trials() const { return trials.value_or(command == "classify" ? 2000 : 500); }

  void validate() const {
    static const std::vector<std::string> commands = {"classify", "verify", "falsify", "reproduce"};
    if (std::find(commands.begin(), commands.end(), command) == commands.end()) {
      throw UsageError("unknown command '" + command + "' (expected classify, verify, falsify, reproduce)");
    }
    if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("--tol must be a positive number");
    if (effective_trials() < 1) throw UsageError("--trials must be >= 1");
    if (threads < 1) throw UsageError("--threads must be >= 1");
    if (restarts < 1) throw UsageError("--restarts must be >= 1");
    if (steps < 0) throw UsageError("--steps must be >= 0");
    if (command == "reproduce") return;
    try {
      builtin_function(function_id);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--function: ") + e.what());
    }
    parse_dims(effective_dims());
    if ((command == "verify" || command == "falsify") && !inequality_id) {
      throw UsageError(command + " requires --inequality");
    }
    if (inequality_id) {
      try {
        parse_inequality(*inequality_id);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--inequality: ") + e.what());
      }
    }
    if (!direction.empty() && direction != "superquadratic" && direction != "subquadratic" &&
        direction != "both") {
      throw UsageError("--direction must be superquadratic, subquadratic or both");
    }
  }
};

inline Json to_json(const RunConfig& c) {
  Json j{{"command", c.command},
         {"function", c.function_id},
         {"dims", c.effective_dims()},
         {"trials", c.effective_trials()},
         {"seed", c.seed},
         {"tol", c.tol},
         {"threads", c.threads},
         {"restarts", c.restarts},
         {"steps", c.steps}};
  j["inequality"] = c.inequality_id ? Json(*c.inequality_id) : Json(nullptr);
  if (!c.direction.empty()) j["direction"] = c.direction;
  return j;
}

// The output path is left out of the echo so that reports of identical runs
// written to different files stay byte-identical.

/// Applies the keys of a config document (same names as the flags) on top
/// of `base`. Unknown keys are usage errors.
inline RunConfig merge_config(RunConfig base, const Json& j) {
  if (!j.is_object()) throw UsageError("config document must be an object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      if (k == "command") base.command = v.get<std::string>();
      else if (k == "function") base.function_id = v.get<std::string>();
      else if (k == "inequality") base.inequality_id = v.is_null() ? std::nullopt : std::optional(v.get<std::string>());
      else if (k == "dims") base.dims = v.is_string() ? v.get<std::string>() : [&] {
        std::string s;
        for (const auto& d : v) s += (s.empty() ? "" : ",") + std::to_string(d.get<int>());
        return s;
      }();
      else if (k == "trials") base.trials = v.get<int>();
      else if (k == "seed") base.seed = v.get<std::uint64_t>();
      else if (k == "tol") base.tol = v.get<double>();
      else if (k == "out") base.out = v.get<std::string>();
      else if (k == "threads") base.threads = v.get<int>();
      else if (k == "restarts") base.restarts = v.get<int>();
      else if (k == "steps") base.steps = v.get<int>();
      else if (k == "direction") base.direction = v.get<std::string>();
      else throw UsageError("config document: unknown key '" + k + "'");
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config document: ") + e.what());
  }
  return base;
}

// ---------------------------------------------------------------------------
// RunReport
// ---------------------------------------------------------------------------

struct RunSummary {
  std::map<std::string, int> counts;  // per Relation name
  int trials_run = 0;
  int rejected_draws = 0;
  double worst_lambda_min = 0.0;
  double worst_lambda_max = 0.0;
  int worst_min_index = -1;
  int worst_max_index = -1;
  double wall_time_seconds = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunReport {
  int schema_version = kSchemaVersion;
  std::string artifact_version = kArtifactVersion;
  Json config = Json::object();
  std::vector<TrialRecord> records;
  RunSummary summary;
  Json result = Json::object();
  int exit_status = kExitOk;
};

inline bool operator==(const TrialRecord& a, const TrialRecord& b) {
  return a.index == b.index && a.digest == b.digest && a.verdict == b.verdict &&
         a.lambda_min == b.lambda_min && a.lambda_max == b.lambda_max;
}

inline bool operator==(const RunReport& a, const RunReport& b) {
  return a.schema_version == b.schema_version && a.artifact_version == b.artifact_version &&
         a.config == b.config && a.records == b.records && a.summary == b.summary &&
         a.result == b.result && a.exit_status == b.exit_status;
}

inline Json to_json(const TrialRecord& r) {
  return Json{{"index", r.index},
              {"digest", to_json(r.digest)},
              {"verdict", to_string(r.verdict)},
              {"lambda_min", r.lambda_min},
              {"lambda_max", r.lambda_max}};
}

inline TrialRecord trial_record_from_json(const Json& j) {
  return {j.at("index").get<int>(), digest_from_json(j.at("digest")),
          relation_from_string(j.at("verdict").get<std::string>()), j.at("lambda_min").get<double>(),
          j.at("lambda_max").get<double>()};
}

inline Json to_json(const RunSummary& s) {
  Json counts = Json::object();
  for (const auto& [k, v] : s.counts) counts[k] = v;
  return Json{{"counts", counts},
              {"trials_run", s.trials_run},
              {"rejected_draws", s.rejected_draws},
              {"worst",
               {{"lambda_min", s.worst_lambda_min},
                {"lambda_max", s.worst_lambda_max},
                {"lambda_min_index", s.worst_min_index},
                {"lambda_max_index", s.worst_max_index}}},
              {"wall_time_seconds", s.wall_time_seconds}};
}

inline Json to_json(const RunReport& r) {
  Json records = Json::array();
  for (const auto& rec : r.records) records.push_back(to_json(rec));
  return Json{{"schema_version", r.schema_version},
              {"artifact_version", r.artifact_version},
              {"config", r.config},
              {"records", records},
              {"summary", to_json(r.summary)},
              {"result", r.result},
              {"exit_status", r.exit_status}};
}

inline RunReport report_from_json(const Json& j) {
  try {
    RunReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw ParseError("unsupported report schema_version " + std::to_string(r.schema_version));
    }
    r.artifact_version = j.at("artifact_version").get<std::string>();
    r.config = j.at("config");
    for (const auto& rec : j.at("records")) r.records.push_back(trial_record_from_json(rec));
    const Json& s = j.at("summary");
    for (auto it = s.at("counts").begin(); it != s.at("counts").end(); ++it) {
      r.summary.counts[it.key()] = it.value().get<int>();
    }
    r.summary.trials_run = s.at("trials_run").get<int>();
    r.summary.rejected_draws = s.at("rejected_draws").get<int>();
    const Json& w = s.at("worst");
    r.summary.worst_lambda_min = w.at("lambda_min").get<double>();
    r.summary.worst_lambda_max = w.at("lambda_max").get<double>();
    r.summary.worst_min_index = w.at("lambda_min_index").get<int>();
    r.summary.worst_max_index = w.at("lambda_max_index").get<int>();
    r.summary.wall_time_seconds = s.at("wall_time_seconds").get<double>();
    r.result = j.at("result");
    r.exit_status = j.at("exit_status").get<int>();
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("report document: ") + e.what());
  }
}

inline std::string serialize(const RunReport& r) { return dump_json(to_json(r)) + "\n"; }

inline RunReport parse_report(const std::string& text) { return report_from_json(parse_json(text)); }

/// Counts and extremes over `records`; keeps wall time and rejections.
inline void summarize(RunReport& r) {
  RunSummary& s = r.summary;
  s.counts.clear();
  for (Relation rel : {Relation::PositiveSemidefinite, Relation::NegativeSemidefinite, Relation::Zero,
                       Relation::Indefinite}) {
    s.counts[std::string(to_string(rel))] = 0;
  }
  s.trials_run = static_cast<int>(r.records.size());
  s.worst_lambda_min = 0.0;
  s.worst_lambda_max = 0.0;
  s.worst_min_index = s.worst_max_index = -1;
  for (const auto& rec : r.records) {
    ++s.counts[std::string(to_string(rec.verdict))];
    if (s.worst_min_index < 0 || rec.lambda_min < s.worst_lambda_min) {
      s.worst_lambda_min = rec.lambda_min;
      s.worst_min_index = rec.index;
    }
    if (s.worst_max_index < 0 || rec.lambda_max > s.worst_lambda_max) {
      s.worst_lambda_max = rec.lambda_max;
      s.worst_max_index = rec.index;
    }
  }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// The sign a deficit should have if f behaves as claimed.
inline Direction expected_direction(const ScalarFunctionSpec& f, const InequalitySpec& ineq) {
  if (ineq.id == InequalityId::VectorState) {
    return f.scalar_class == ScalarClass::Subquadratic ? Direction::Subquadratic : Direction::Superquadratic;
  }
  return f.claimed_class == OperatorClass::OperatorSubquadratic ? Direction::Subquadratic
                                                                : Direction::Superquadratic;
}

namespace detail {

/// Re-evaluates a recorded deficit from its digest alone.
inline bool self_verifies(const ScalarFunctionSpec& f, const DeficitReport& r, double tol) {
  const DeficitReport again = regenerate_instance(r.digest).evaluate(f, tol);
  const double scale = std::max(1.0, spectral_norm(r.deficit));
  return again.deficit.dim() == r.deficit.dim() &&
         (again.deficit.matrix() - r.deficit.matrix()).cwiseAbs().maxCoeff() <= 1e-12 * scale &&
         again.verdict.relation == r.verdict.relation;
}

inline Json search_json(const ScalarFunctionSpec& f, const SearchResult& s, Direction dir) {
  Json j{{"direction", to_string(dir)},
         {"restarts_run", s.restarts_run},
         {"rejected_steps", s.rejected_steps},
         {"best_objective", s.best_objective}};
  j["witness"] = s.witness ? to_json(*s.witness) : Json(nullptr);
  j["witness_verified"] = s.witness ? Json(verify_witness(f, *s.witness)) : Json(nullptr);
  j["fixture"] = s.fixture ? to_json(*s.fixture) : Json(nullptr);
  return j;
}

inline std::vector<Direction> directions_for(const RunConfig& cfg, const ScalarFunctionSpec& f,
                                             const InequalitySpec& ineq) {
  if (cfg.direction == "both") return {Direction::Superquadratic, Direction::Subquadratic};
  if (!cfg.direction.empty()) return {direction_from_string(cfg.direction)};
  if (ineq.id != InequalityId::VectorState &&
      (f.claimed_class == OperatorClass::Neither || f.claimed_class == OperatorClass::Unknown)) {
    return {Direction::Superquadratic, Direction::Subquadratic};
  }
  return {expected_direction(f, ineq)};
}

inline SearchConfig search_config(const RunConfig& cfg, Direction dir) {
  SearchConfig s;
  s.dims = parse_dims(cfg.effective_dims());
  s.restarts = cfg.restarts;
  s.steps_per_restart = cfg.steps;
  s.seed = cfg.seed;
  s.objective_tol = cfg.tol;
  s.direction = dir;
  s.threads = cfg.threads;
  return s;
}

inline void run_classify(const RunConfig& cfg, RunReport& report) {
  const ScalarFunctionSpec f = builtin_function(cfg.function_id);
  const std::vector<Index> dims = parse_dims(cfg.effective_dims());
  ClassifyConfig cc;
  cc.min_dim = *std::min_element(dims.begin(), dims.end());
  cc.max_dim = *std::max_element(dims.begin(), dims.end());
  cc.trials = cfg.effective_trials();
  cc.seed = cfg.seed;
  cc.tol = cfg.tol;
  cc.threads = cfg.threads;
  cc.injected = fixtures_for(f);
  const ClassificationResult cls = classify_operator(f, cc);
  report.records = cls.records;
  report.summary.rejected_draws = cls.rejected_draws;

  Json& res = report.result;
  res["function"] = f.name;
  res["claimed_class"] = to_string(f.claimed_class);
  res["verdict"] = to_string(cls.verdict);
  res["consistent_with_claim"] = consistent_with(cls.verdict, f.claimed_class);
  res["trials_run"] = cls.trials_run;
  res["worst_min_eigenvalue"] = cls.worst_min_eigenvalue;
  res["worst_max_eigenvalue"] = cls.worst_max_eigenvalue;
  res["witness"] = cls.first_witness ? to_json(*cls.first_witness) : Json(nullptr);
  res["witness_verified"] =
      cls.first_witness ? Json(self_verifies(f, *cls.first_witness, cfg.tol)) : Json(nullptr);
  res["worst_witness"] = cls.witness ? to_json(*cls.witness) : Json(nullptr);

  const InequalitySpec ineq{InequalityId::Superquadratic, Mode::Superquadratic};
  Json searches = Json::array();
  bool found = false;
  for (Direction dir : directions_for(cfg, f, ineq)) {
    const SearchResult s = search(f, ineq, search_config(cfg, dir));
    found = found || s.witness.has_value();
    searches.push_back(search_json(f, s, dir));
  }
  res["search"] = searches;

  const bool refuted = cls.verdict == ClassVerdict::Refuted || found;
  const bool as_claimed = consistent_with(cls.verdict, f.claimed_class);
  report.exit_status = (refuted || !as_claimed) ? kExitRefuted : kExitOk;
}

inline void run_verify(const RunConfig& cfg, RunReport& report) {
  const ScalarFunctionSpec f = builtin_function(cfg.function_id);
  const InequalitySpec ineq = parse_inequality(*cfg.inequality_id);
  require_supported(f, ineq);
  const std::vector<Index> dims = parse_dims(cfg.effective_dims());
  const Direction dir = expected_direction(f, ineq);
  const int trials = cfg.effective_trials();

  struct Slot {
    std::optional<DeficitReport> report;
    int rejected = 0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(trials));
  parallel_for(slots.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t base = derive_seed(cfg.seed, i);
    Rng rng(base);
    const Index dim = dims[pick(rng, dims.size())];
    for (int attempt = 0; attempt < 64; ++attempt) {
      InstanceDigest digest = instance_digest(ineq, dim, f.sampling, derive_seed(base, static_cast<std::uint64_t>(attempt)));
      try {
        const Instance inst = regenerate_instance(digest);
        slots[i].report = inst.evaluate(f, cfg.tol, std::move(digest));
        return;
      } catch (const DomainViolation&) {
        ++slots[i].rejected;
      }
    }
  });

  int holds = 0;
  std::optional<DeficitReport> worst;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    report.summary.rejected_draws += slots[i].rejected;
    if (!slots[i].report) continue;
    const DeficitReport& r = *slots[i].report;
    report.records.push_back({static_cast<int>(i), r.digest, r.verdict.relation, r.verdict.lambda_min,
                              r.verdict.lambda_max});
    if (refutes(r, dir)) {
      if (!worst || objective_of(r, dir) > objective_of(*worst, dir)) worst = r;
    } else {
      ++holds;
    }
  }
  Json& res = report.result;
  res["function"] = f.name;
  res["inequality"] = ineq.to_string();
  res["expected_direction"] = to_string(dir);
  res["holds"] = holds;
  res["violations"] = static_cast<int>(report.records.size()) - holds;
  res["worst_violation"] = worst ? to_json(*worst) : Json(nullptr);
  res["worst_violation_verified"] = worst ? Json(self_verifies(f, *worst, cfg.tol)) : Json(nullptr);
  report.exit_status = (worst || report.records.empty()) ? kExitRefuted : kExitOk;
}

inline void run_falsify(const RunConfig& cfg, RunReport& report) {
  const ScalarFunctionSpec f = builtin_function(cfg.function_id);
  const InequalitySpec ineq = parse_inequality(*cfg.inequality_id);
  require_supported(f, ineq);
  Json searches = Json::array();
  bool found = false;
  for (Direction dir : directions_for(cfg, f, ineq)) {
    const SearchResult s = search(f, ineq, search_config(cfg, dir));
    found = found || s.witness.has_value();
    searches.push_back(search_json(f, s, dir));
    for (TrialRecord rec : s.records) {
      // Records from a second direction follow the first.
      rec.index += static_cast<int>(report.records.size());
      report.records.push_back(std::move(rec));
    }
  }
  report.result["function"] = f.name;
  report.result["inequality"] = ineq.to_string();
  report.result["search"] = searches;
  report.result["witness_found"] = found;
  report.exit_status = found ? kExitRefuted : kExitOk;
}

inline void run_reproduce(RunReport& report) {
  const ReproductionReport rep = reproduce_reference_examples();
  Json fixtures = Json::array();
  for (const auto& fx : rep.fixtures) {
    fixtures.push_back(Json{{"name", fx.name},
                            {"passed", fx.passed},
                            {"detail", fx.detail},
                            {"max_error", fx.max_error},
                            {"report", fx.report ? to_json(*fx.report) : Json(nullptr)}});
    if (fx.report) {
      const auto& r = *fx.report;
      report.records.push_back({static_cast<int>(report.records.size()), r.digest, r.verdict.relation,
                                r.verdict.lambda_min, r.verdict.lambda_max});
    }
  }
  report.result["fixtures"] = fixtures;
  report.result["all_passed"] = rep.all_passed();
  report.exit_status = rep.all_passed() ? kExitOk : kExitRefuted;
}

}  // namespace detail

/// Runs one command. Usage problems throw UsageError; everything else is
/// reported through exit_status.
inline RunReport run(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = to_json(cfg);
  try {
    if (cfg.command == "classify") detail::run_classify(cfg, report);
    else if (cfg.command == "verify") detail::run_verify(cfg, report);
    else if (cfg.command == "falsify") detail::run_falsify(cfg, report);
    else detail::run_reproduce(report);
  } catch (const UnsupportedCombination& e) {
    throw UsageError(e.what());
  }
  const int rejected = report.summary.rejected_draws;
  summarize(report);
  report.summary.rejected_draws = rejected;
  report.summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// One-line human summary for standard error.
inline std::string describe(const RunReport& r) {
  std::string s = r.config.value("command", std::string("?")) + ": ";
  const Json& res = r.result;
  if (res.contains("verdict")) s += res.at("verdict").get<std::string>() + ", ";
  if (res.contains("witness_found")) s += res.at("witness_found").get<bool>() ? "witness found, " : "no witness, ";
  if (res.contains("holds")) {
    s += std::to_string(res.at("holds").get<int>()) + " hold / " +
         std::to_string(res.at("violations").get<int>()) + " violated, ";
  }
  if (res.contains("all_passed")) s += res.at("all_passed").get<bool>() ? "all fixtures pass, " : "fixture failure, ";
  s += std::to_string(r.summary.trials_run) + " records, exit " + std::to_string(r.exit_status);
  return s;
}

}  // namespace opsq

#endif  // OPSQ_CLI_HPP
