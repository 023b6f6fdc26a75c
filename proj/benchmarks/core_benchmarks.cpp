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


#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>

#include "iacloop/feedback_loop.hpp"
#include "iacloop/linter.hpp"
#include "iacloop/located_json.hpp"
#include "iacloop/synthetic_backend.hpp"

namespace {

using namespace iacloop;

std::string fixture(const char* relative) {
  std::ifstream in(std::string(IACLOOP_FIXTURES_DIR) + "/" + relative, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void BM_ParseLocated(benchmark::State& state) {
  const std::string text = fixture("getazs/my_iac.json");
  for (auto _ : state) benchmark::DoNotOptimize(json::parse_located(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseLocated);

void BM_LintTemplate(benchmark::State& state) {
  const json::LocatedNode root = json::parse_located(fixture("lint/21-multi-defect-vpc-endpoint.json"));
  const auto& store = schema::builtin_core_schemas();
  for (auto _ : state) benchmark::DoNotOptimize(lint::lint_template(root, store));
}
BENCHMARK(BM_LintTemplate);

void BM_RenderFragment(benchmark::State& state) {
  const json::LocatedNode root = json::parse_located(fixture("lint/01-clean-instance.json"));
  for (auto _ : state) benchmark::DoNotOptimize(json::render_fragment(root));
}
BENCHMARK(BM_RenderFragment);

void BM_SyntheticLoopCell(benchmark::State& state) {
  const auto& store = schema::builtin_core_schemas();
  const loop::BenchmarkCase c = loop::BenchmarkCase::make("vpc", "deploy a VPC");
  loop::LoopConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    llm::SyntheticParams p;
    p.seed = seed++;
    llm::SyntheticBackend backend(p, store);
    benchmark::DoNotOptimize(loop::run_loop(c, backend, store, cfg));
  }
}
BENCHMARK(BM_SyntheticLoopCell);

}  // namespace

BENCHMARK_MAIN();
