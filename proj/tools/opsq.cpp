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

// opsq: classify | verify | falsify | reproduce.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "opsq/cli.hpp"

namespace {

struct Flags {
  std::string function_id;
  std::string inequality;
  std::string dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::string out;
  int threads = 0;
  int restarts = 0;
  int steps = 0;
  std::string direction;
  std::string config;
};

struct Options {
  CLI::Option* function_id = nullptr;
  CLI::Option* inequality = nullptr;
  CLI::Option* dims = nullptr;
  CLI::Option* trials = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* threads = nullptr;
  CLI::Option* restarts = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* direction = nullptr;
  CLI::Option* config = nullptr;
};

Options add_flags(CLI::App* cmd, Flags& f) {
  Options o;
  o.function_id = cmd->add_option("--function", f.function_id,
                                  "square | cube | recip | power:<r> | tlogt | affine:<a>:<b>");
  o.inequality = cmd->add_option("--inequality", f.inequality,
                                 "superquadratic | weighted | contraction | projection | isometry | map | "
                                 "multimap | vector-state | kadison | convex:<id>");
  o.dims = cmd->add_option("--dims", f.dims, "matrix sizes: a-b or a,b,c");
  o.trials = cmd->add_option("--trials", f.trials, "randomized instances");
  o.seed = cmd->add_option("--seed", f.seed, "base seed (OPSQ_SEED overrides)");
  o.tol = cmd->add_option("--tol", f.tol, "Loewner tolerance, relative to max(1, ||D||)");
  o.out = cmd->add_option("--out", f.out, "report path (default: standard output)");
  o.threads = cmd->add_option("--threads", f.threads, "worker threads");
  o.restarts = cmd->add_option("--restarts", f.restarts, "search restarts");
  o.steps = cmd->add_option("--steps", f.steps, "hill-climbing steps per restart");
  o.direction = cmd->add_option("--direction", f.direction, "superquadratic | subquadratic | both");
  o.config = cmd->add_option("--config", f.config, "config document with the same keys as the flags");
  return o;
}

opsq::RunConfig build_config(const std::string& command, const Flags& f, const Options& o) {
  opsq::RunConfig cfg;
  cfg.command = command;
  if (o.config->count() > 0) {
    cfg = opsq::merge_config(cfg, opsq::parse_json(opsq::read_text_file(f.config)));
    if (cfg.command != command) throw opsq::UsageError("config document names a different command");
  }
  if (o.function_id->count() > 0) cfg.function_id = f.function_id;
  if (o.inequality->count() > 0) cfg.inequality_id = f.inequality;
  if (o.dims->count() > 0) cfg.dims = f.dims;
  if (o.trials->count() > 0) cfg.trials = f.trials;
  if (o.seed->count() > 0) cfg.seed = f.seed;
  if (o.tol->count() > 0) cfg.tol = f.tol;
  if (o.out->count() > 0) cfg.out = f.out;
  if (o.threads->count() > 0) cfg.threads = f.threads;
  if (o.restarts->count() > 0) cfg.restarts = f.restarts;
  if (o.steps->count() > 0) cfg.steps = f.steps;
  if (o.direction->count() > 0) cfg.direction = f.direction;
  if (const char* env = std::getenv("OPSQ_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw opsq::UsageError(std::string("OPSQ_SEED is not an integer: '") + env + "'");
    cfg.seed = v;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for operator superquadratic functions"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, Options>> commands;
  for (const char* name : {"classify", "verify", "falsify", "reproduce"}) {
    static const std::map<std::string, std::string> help = {
        {"classify", "randomized classification campaign plus counterexample search"},
        {"verify", "check one inequality on randomized instances"},
        {"falsify", "search for a counterexample to one inequality"},
        {"reproduce", "re-run the worked examples as regression fixtures"}};
    CLI::App* cmd = app.add_subcommand(name, help.at(name));
    commands.emplace_back(cmd, add_flags(cmd, flags));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : opsq::kExitUsage;
  }

  try {
    opsq::RunConfig cfg;
    for (const auto& [cmd, opts] : commands) {
      if (cmd->parsed()) cfg = build_config(cmd->get_name(), flags, opts);
    }
    const opsq::RunReport report = opsq::run(cfg);
    const std::string text = opsq::serialize(report);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      opsq::write_text_atomic(cfg.out, text);
    }
    std::cerr << opsq::describe(report) << "\n";
    return report.exit_status;
  } catch (const opsq::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return opsq::kExitUsage;
  } catch (const opsq::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return opsq::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return opsq::kExitRefuted;
  }
}
