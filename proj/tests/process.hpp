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

#ifndef OPSQ_TESTS_PROCESS_HPP
#define OPSQ_TESTS_PROCESS_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <regex>
#include <stdexcept>
#include <string>

namespace opsq::testing {

struct ProcessResult {
  int exit_code = -1;
  std::string out;  // standard output only; standard error goes to the log
};

/// Runs `args` (already shell-quoted) through the CLI binary under test.
inline ProcessResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = (env.empty() ? "" : env + " ") + std::string(OPSQ_CLI_PATH) + " " + args;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for " + cmd);
  ProcessResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// The report text with the wall-clock value blanked out.
inline std::string without_wall_time(const std::string& report) {
  static const std::regex wall(R"("wall_time_seconds": [^,\n}]*)");
  return std::regex_replace(report, wall, R"("wall_time_seconds": null)");
}

}  // namespace opsq::testing

#endif  // OPSQ_TESTS_PROCESS_HPP
