// Copyright 2026 The iacloop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IACLOOP_TOOLS_CLI_HPP_
#define IACLOOP_TOOLS_CLI_HPP_

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "iacloop/bench_harness.hpp"

namespace iacloop::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitLintErrors = 2,
  kExitRuntime = 3,
};

// Invalid config file contents; the message carries file:line:column.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Settings shared by every subcommand. Defaults, then the --config file,
// then command-line flags.
struct GlobalConfig {
  std::optional<std::filesystem::path> schemas_dir;
  bench::BackendKind backend = bench::BackendKind::kSynthetic;
  llm::SyntheticParams synthetic;
  std::optional<std::filesystem::path> script_dir;
  std::string api_base_url = "https://api.openai.com";
  llm::GenerationConfig generation;
  int parallelism = 1;
  int verbosity = 0;
};

// Reads a JSON config file. Unknown keys and wrongly typed values are
// ConfigErrors naming their position.
GlobalConfig load_global_config(const std::filesystem::path& path);
GlobalConfig parse_global_config(std::string_view text, std::string_view file_name);

// Runs one command line. argv[0] is the program name.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iacloop::cli

#endif  // IACLOOP_TOOLS_CLI_HPP_
