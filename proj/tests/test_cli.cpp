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

#include <gtest/gtest.h>

#include <filesystem>

#include "opsq/cli.hpp"
#include "process.hpp"

namespace opsq {
namespace {

namespace fs = std::filesystem;
using testing::run_cli;
using testing::without_wall_time;

RunConfig make(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("opsq_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

TEST(ParseDims, RangesAndLists) {
  EXPECT_EQ(parse_dims("1-4"), (std::vector<Index>{1, 2, 3, 4}));
  EXPECT_EQ(parse_dims("2,3,5"), (std::vector<Index>{2, 3, 5}));
  EXPECT_EQ(parse_dims("7"), (std::vector<Index>{7}));
  for (const char* bad : {"", "0", "65", "4-2", "a-b", "1,,2", "1-", "2.5"}) {
    EXPECT_THROW(parse_dims(bad), UsageError) << bad;
  }
}

TEST(RunConfig, DefaultsAndValidation) {
  EXPECT_EQ(make("classify").effective_trials(), 2000);
  EXPECT_EQ(make("verify").effective_trials(), 500);
  EXPECT_EQ(make("falsify").effective_dims(), "2,3");
  EXPECT_EQ(make("classify").effective_dims(), "1-6");
  EXPECT_THROW(make("frobnicate").validate(), UsageError);
  EXPECT_THROW(make("verify").validate(), UsageError);  // needs --inequality
  RunConfig c = make("classify");
  c.tol = -1;
  EXPECT_THROW(c.validate(), UsageError);
  c = make("classify");
  c.function_id = "sine";
  EXPECT_THROW(c.validate(), UsageError);
  c = make("falsify");
  c.inequality_id = "convex:kadison";
  EXPECT_THROW(c.validate(), UsageError);
  c.inequality_id = "map";
  c.direction = "left";
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(RunConfig, MergeConfigDocument) {
  const RunConfig c = merge_config(make("verify"), parse_json(R"({"function": "cube", "inequality": "map",
      "dims": [2, 4], "trials": 10, "seed": 5, "tol": 1e-9})"));
  EXPECT_EQ(c.function_id, "cube");
  EXPECT_EQ(*c.inequality_id, "map");
  EXPECT_EQ(c.dims, "2,4");
  EXPECT_EQ(*c.trials, 10);
  EXPECT_EQ(c.seed, 5u);
  EXPECT_EQ(c.tol, 1e-9);
  EXPECT_THROW(merge_config(make("verify"), parse_json(R"({"colour": "red"})")), UsageError);
  EXPECT_THROW(merge_config(make("verify"), parse_json(R"({"trials": "many"})")), UsageError);
  EXPECT_THROW(merge_config(make("verify"), parse_json("[1]")), UsageError);
}

TEST(RunReport, RoundTripsThroughJson) {
  RunConfig c = make("verify");
  c.inequality_id = "weighted";
  c.function_id = "cube";
  c.trials = 20;
  const RunReport r = run(c);
  const RunReport back = parse_report(serialize(r));
  EXPECT_EQ(back, r);
  EXPECT_EQ(serialize(back), serialize(r));
  EXPECT_THROW(parse_report(R"({"schema_version": 9})"), ParseError);
}

TEST(Run, ClassifySquareIsSupported) {
  RunConfig c = make("classify");
  c.trials = 200;
  c.restarts = 20;
  const RunReport r = run(c);
  EXPECT_EQ(r.exit_status, kExitOk);
  EXPECT_EQ(r.result.at("verdict"), "SupportedQuadratic");
  EXPECT_TRUE(r.result.at("consistent_with_claim").get<bool>());
  EXPECT_EQ(r.summary.trials_run, 200);
  EXPECT_EQ(r.summary.counts.at("Zero"), 200);
  for (const auto& s : r.result.at("search")) EXPECT_TRUE(s.at("witness").is_null());
}

TEST(Run, ClassifyCubeIsRefutedWithVerifiedWitness) {
  RunConfig c = make("classify");
  c.function_id = "cube";
  c.trials = 20;
  c.restarts = 10;
  const RunReport r = run(c);
  EXPECT_EQ(r.exit_status, kExitRefuted);
  EXPECT_EQ(r.result.at("verdict"), "Refuted");
  EXPECT_TRUE(r.result.at("witness_verified").get<bool>());
  EXPECT_EQ(r.result.at("witness").at("digest").at("params").at("fixture"), "cube-pair");
}

TEST(Run, VerifyReportsHoldsAndViolations) {
  RunConfig c = make("verify");
  c.inequality_id = "projection";
  c.trials = 50;
  RunReport r = run(c);
  EXPECT_EQ(r.exit_status, kExitOk);
  EXPECT_EQ(r.result.at("holds"), 50);

  c.inequality_id = "isometry";
  r = run(c);
  EXPECT_EQ(r.exit_status, kExitRefuted);
  EXPECT_GT(r.result.at("violations").get<int>(), 0);
  EXPECT_TRUE(r.result.at("worst_violation_verified").get<bool>());
}

TEST(Run, UnsupportedCombinationIsAUsageError) {
  RunConfig c = make("verify");
  c.function_id = "recip";
  c.inequality_id = "map";
  EXPECT_THROW(run(c), UsageError);
}

TEST(Run, ReproducePasses) {
  const RunReport r = run(make("reproduce"));
  EXPECT_EQ(r.exit_status, kExitOk);
  EXPECT_TRUE(r.result.at("all_passed").get<bool>());
  EXPECT_EQ(r.records.size(), 3u);
}

TEST(Run, FalsifyRecordsBothDirections) {
  RunConfig c = make("falsify");
  c.inequality_id = "superquadratic";
  c.function_id = "cube";
  c.restarts = 15;
  c.direction = "both";
  const RunReport r = run(c);
  EXPECT_EQ(r.result.at("search").size(), 2u);
  EXPECT_EQ(r.records.size(), 30u);
  EXPECT_EQ(r.exit_status, kExitRefuted);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_cli("reproduce > /dev/null 2>&1").exit_code, 0);
  EXPECT_EQ(run_cli("classify --function cube --trials 10 --restarts 5 2>/dev/null").exit_code, 1);
  EXPECT_EQ(run_cli("classify --function square --trials 50 --restarts 5 2>/dev/null").exit_code, 0);
  EXPECT_EQ(run_cli("classify --function nope 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_cli("verify --function square 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_cli("verify --function recip --inequality map 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_cli("--bogus 2>/dev/null").exit_code, 2);
  EXPECT_EQ(run_cli("classify --trials zero 2>/dev/null").exit_code, 2);
}

TEST(Binary, ReportsAreDeterministicAndParse) {
  const std::string args = "verify --function cube --inequality map --trials 40 --seed 11 2>/dev/null";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_FALSE(a.out.empty());
  EXPECT_EQ(without_wall_time(a.out), without_wall_time(b.out));
  const RunReport r = parse_report(a.out);
  EXPECT_EQ(r.config.at("seed"), 11);
  EXPECT_EQ(r.summary.trials_run, 40);
}

TEST(Binary, SeedEnvironmentOverridesFlag) {
  const auto a = run_cli("verify --function cube --inequality weighted --trials 5 --seed 1 2>/dev/null", "OPSQ_SEED=99");
  const auto b = run_cli("verify --function cube --inequality weighted --trials 5 --seed 99 2>/dev/null");
  EXPECT_EQ(parse_report(a.out).config.at("seed"), 99);
  EXPECT_EQ(without_wall_time(a.out), without_wall_time(b.out));
  EXPECT_EQ(run_cli("reproduce 2>/dev/null", "OPSQ_SEED=abc").exit_code, 2);
}

TEST(Binary, ConfigFileAndOutPath) {
  const fs::path cfg = scratch("cfg.json");
  const fs::path out = scratch("report.json");
  write_text_atomic(cfg, R"({"function": "tlogt", "inequality": "weighted", "trials": 12, "seed": 3})");
  const auto r = run_cli("verify --config " + cfg.string() + " --trials 8 --out " + out.string() + " 2>/dev/null");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.out.empty());
  const RunReport rep = parse_report(read_text_file(out));
  EXPECT_EQ(rep.config.at("function"), "tlogt");
  EXPECT_EQ(rep.config.at("trials"), 8);  // the flag wins over the document
  EXPECT_EQ(rep.config.at("seed"), 3);
  fs::remove_all(cfg.parent_path());
}

}  // namespace
}  // namespace opsq
