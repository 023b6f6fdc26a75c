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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"

namespace iacloop::cli {
namespace {

namespace fs = std::filesystem;
using testing::fixtures_dir;
using testing::read_file;
using testing::TempDir;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "iacloop");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string lint_fixture(const char* name) { return (fixtures_dir() / "lint" / name).string(); }

TEST(CliLint, CleanTemplateIsSilent) {
  const CliRun r = run({"lint", lint_fixture("01-clean-instance.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "");
}

TEST(CliLint, ErrorsExitTwoInTwoLineFormat) {
  const std::string file = lint_fixture("02-getazs-subnet.json");
  const CliRun r = run({"lint", file});
  EXPECT_EQ(r.code, kExitLintErrors);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "E1015 {'Fn::GetAZs': ''} is not of type 'string'");
  EXPECT_EQ(r.out.find("Error location - " + file + ":"), r.out.find('\n') + 1);
}

TEST(CliLint, WarningsOnlyExitZero) {
  const CliRun r = run({"lint", lint_fixture("17-unused-parameter.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.substr(0, 5), "W2001");
}

TEST(CliLint, StrictTypesAndJsonFormat) {
  const std::string file = lint_fixture("09-unknown-type-lenient.json");
  EXPECT_EQ(run({"lint", file}).code, kExitOk);
  const CliRun strict = run({"lint", file, "--strict-types", "--format", "json"});
  EXPECT_EQ(strict.code, kExitLintErrors);
  const json::LocatedNode doc = json::parse_located(strict.out);
  ASSERT_TRUE(doc.is_object());
  EXPECT_NE(strict.out.find("E3002"), std::string::npos);
}

TEST(CliLint, UnparseableFileIsRuntimeFailure) {
  TempDir dir("cli-bad");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{\n  \"a\": }";
  const CliRun r = run({"lint", bad.string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_EQ(r.err.rfind(bad.string() + ":2:8: ", 0), 0u) << r.err;
  EXPECT_EQ(run({"lint", (dir / "missing.json").string()}).code, kExitRuntime);
}

TEST(CliLint, CustomSchemaDirectory) {
  TempDir dir("cli-schemas");
  const fs::path t = dir / "t.json";
  std::ofstream(t) << R"({"Resources": {"I": {"Type": "AWS::EC2::Instance", "Properties": {}}}})";
  // The fixture store also requires ImageId; the builtin one has the same
  // requirement, so both report E3003.
  const CliRun r = run({"lint", t.string(), "--schemas", (fixtures_dir() / "schemas" / "good").string()});
  EXPECT_EQ(r.code, kExitLintErrors);
  EXPECT_NE(r.out.find("E3003 'ImageId' is a required property"), std::string::npos);
  const CliRun vpc = run({"lint", lint_fixture("22-clean-vpc-endpoint.json"), "--schemas",
                       (fixtures_dir() / "schemas" / "good").string(), "--strict-types"});
  EXPECT_EQ(vpc.code, kExitLintErrors);
  EXPECT_NE(vpc.out.find("E3002"), std::string::npos);
}

TEST(CliUsage, UnknownCommandPrintsUsage) {
  const CliRun r = run({"frobnicate"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.out, "");
  EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"lint"}).code, kExitUsage);
  EXPECT_EQ(run({"lint", "x.json", "--bogus"}).code, kExitUsage);
}

TEST(CliUsage, HelpListsEveryFlag) {
  const CliRun top = run({"--help"});
  EXPECT_EQ(top.code, kExitOk);
  for (const char* s : {"--config", "--api-base-url", "lint", "loop", "bench", "report"}) {
    EXPECT_NE(top.out.find(s), std::string::npos) << s;
  }
  const std::vector<std::pair<const char*, std::vector<const char*>>> expected = {
      {"lint", {"--schemas", "--strict-types", "--format"}},
      {"loop",
       {"--prompt-file", "--backend", "--iterations", "--early-stop", "--out", "--script-dir",
        "--model", "--temperature", "--seed", "--p-fix", "--p-spawn", "--stubborn-fraction"}},
      {"bench",
       {"--cases", "--backend", "--trials", "--generations", "--iterations", "--seed", "--out",
        "--parallel"}},
      {"report", {"--in", "--csv", "--svg"}},
  };
  for (const auto& [cmd, flags] : expected) {
    const CliRun r = run({cmd, "--help"});
    EXPECT_EQ(r.code, kExitOk) << cmd;
    for (const char* f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << cmd << " " << f;
  }
}

TEST(CliConfig, ParsesKnownKeys) {
  const GlobalConfig c = parse_global_config(R"({
    "backend": "scripted", "script_dir": "s", "api_base_url": "http://x",
    "model": "m", "temperature": 0.5, "max_retries": 1, "parallelism": 4, "verbosity": 2,
    "synthetic": {"p_fix": 0.9, "kinds": ["wrong_type"]}
  })", "c.json");
  EXPECT_EQ(c.backend, bench::BackendKind::kScripted);
  EXPECT_EQ(c.script_dir, fs::path("s"));
  EXPECT_EQ(c.api_base_url, "http://x");
  EXPECT_EQ(c.generation.model, "m");
  EXPECT_EQ(c.generation.temperature, 0.5);
  EXPECT_EQ(c.generation.max_retries, 1);
  EXPECT_EQ(c.parallelism, 4);
  EXPECT_EQ(c.verbosity, 2);
  EXPECT_EQ(c.synthetic.p_fix, 0.9);
  EXPECT_EQ(c.synthetic.kinds, (std::vector<llm::DefectKind>{llm::DefectKind::kWrongType}));
  const GlobalConfig d = parse_global_config("{}", "c.json");
  EXPECT_EQ(d.backend, bench::BackendKind::kSynthetic);
  EXPECT_EQ(d.api_base_url, "https://api.openai.com");
}

TEST(CliConfig, ErrorsArePositioned) {
  try {
    parse_global_config("{\n  \"backend\": \"synthetic\",\n  \"bakend\": 1\n}", "cfg.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cfg.json:3:3: unknown key 'bakend'", 0), 0u) << e.what();
  }
  EXPECT_THROW(parse_global_config(R"({"parallelism": "four"})", "c"), ConfigError);
  EXPECT_THROW(parse_global_config(R"({"backend": "gpt"})", "c"), ConfigError);
  EXPECT_THROW(parse_global_config("{", "c"), ConfigError);

  TempDir dir("cli-config");
  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << "{\"nope\": true}";
  const CliRun r = run({"--config", cfg.string(), "lint", lint_fixture("01-clean-instance.json")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find(":1:2: unknown key 'nope'"), std::string::npos) << r.err;
}

TEST(CliLoop, ConfigFileThenFlags) {
  TempDir dir("cli-loop");
  const fs::path prompt = dir / "web.txt";
  std::ofstream(prompt) << "Create an EC2 instance\n";
  const fs::path cfg = dir / "cfg.json";
  std::ofstream(cfg) << "{\"backend\": \"scripted\", \"script_dir\": \""
                     << (fixtures_dir() / "scripts" / "counts-3-1-0").string() << "\"}";

  // File beats default: scripted counts 3, 1, 0.
  const CliRun scripted = run({"--config", cfg.string(), "loop", "--prompt-file", prompt.string(),
                            "--early-stop", "--out", (dir / "a.json").string()});
  ASSERT_EQ(scripted.code, kExitOk) << scripted.err;
  const loop::LoopTrace a = loop::trace_from_json(read_file(dir / "a.json"));
  EXPECT_EQ(a.case_id, "web");
  ASSERT_EQ(a.records.size(), 3u);
  EXPECT_EQ(a.records[0].error_count, 3u);
  EXPECT_EQ(scripted.out, "3 records; final 0 errors, 0 warnings\n");

  // Flag beats file.
  const CliRun synthetic = run({"--config", cfg.string(), "loop", "--prompt-file", prompt.string(),
                             "--backend", "synthetic", "--seed", "5", "--iterations", "3",
                             "--out", (dir / "b.json").string()});
  ASSERT_EQ(synthetic.code, kExitOk) << synthetic.err;
  EXPECT_EQ(loop::trace_from_json(read_file(dir / "b.json")).records.size(), 4u);
}

TEST(CliLoop, BackendFailureWritesPartialTrace) {
  TempDir dir("cli-loop-fail");
  const fs::path prompt = dir / "p.txt";
  std::ofstream(prompt) << "Create an EC2 instance";
  const CliRun r = run({"loop", "--prompt-file", prompt.string(), "--backend", "scripted",
                     "--script-dir", (fixtures_dir() / "scripts" / "counts-3-1-0").string(),
                     "--iterations", "2", "--out", (dir / "t.json").string()});
  // Three responses cover records 0..2 exactly.
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const fs::path one = dir / "one";
  fs::create_directories(one);
  fs::copy_file(fixtures_dir() / "scripts" / "counts-3-1-0" / "000.txt", one / "000.txt");
  const CliRun f = run({"loop", "--prompt-file", prompt.string(), "--backend", "scripted",
                     "--script-dir", one.string(), "--out", (dir / "f.json").string()});
  EXPECT_EQ(f.code, kExitRuntime);
  EXPECT_EQ(loop::trace_from_json(read_file(dir / "f.json")).records.size(), 1u);
}

TEST(CliBenchReport, EndToEnd) {
  TempDir dir("cli-bench");
  const fs::path results = dir / "results.json";
  const CliRun b = run({"bench", "--cases", (testing::data_dir() / "cases").string(), "--trials", "2",
                     "--generations", "1", "--iterations", "3", "--seed", "9", "--parallel", "4",
                     "--out", results.string()});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(b.out.find("cells: 66 completed, 0 aborted"), std::string::npos) << b.out;
  const CliRun serial = run({"bench", "--cases", (testing::data_dir() / "cases").string(), "--trials",
                          "2", "--generations", "1", "--iterations", "3", "--seed", "9", "--out",
                          (dir / "serial.json").string()});
  ASSERT_EQ(serial.code, kExitOk);
  EXPECT_EQ(read_file(results), read_file(dir / "serial.json"));

  const CliRun stdout_csv = run({"report", "--in", results.string()});
  EXPECT_EQ(stdout_csv.code, kExitOk);
  EXPECT_EQ(testing::parse_csv(stdout_csv.out).size(), 5u);

  const CliRun rep = run({"report", "--in", results.string(), "--csv", (dir / "s.csv").string(),
                       "--svg", (dir / "s.svg").string(), "--json", (dir / "s.json").string(),
                       "--skip-initial"});
  ASSERT_EQ(rep.code, kExitOk) << rep.err;
  EXPECT_EQ(read_file(dir / "s.csv"), stdout_csv.out);
  EXPECT_TRUE(fs::exists(dir / "s.svg"));
  EXPECT_TRUE(fs::exists(dir / "s.json"));
  EXPECT_EQ(run({"report", "--in", (dir / "missing.json").string()}).code, kExitRuntime);
}

TEST(CliBench, SingleTrialCannotBeReported) {
  TempDir dir("cli-bench-one");
  const fs::path results = dir / "r.json";
  const CliRun b = run({"bench", "--cases", (testing::data_dir() / "cases").string(), "--trials", "1",
                     "--generations", "1", "--iterations", "1", "--out", results.string()});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(run({"report", "--in", results.string()}).code, kExitRuntime);
}

}  // namespace
}  // namespace iacloop::cli
