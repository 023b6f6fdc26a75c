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

#ifndef IACLOOP_SEED_HPP_
#define IACLOOP_SEED_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace iacloop {

// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for one benchmark cell:
//   h = splitmix64(master)
//   h = splitmix64(h ^ trial); h = splitmix64(h ^ case_index);
//   h = splitmix64(h ^ generation)
// Depends only on the indices, never on scheduling.
std::uint64_t mix64(std::uint64_t master, std::uint64_t trial, std::uint64_t case_index,
                    std::uint64_t generation);

// mt19937_64 with hand-rolled draws, so sequences are identical across
// standard library implementations (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in [0, n); n must be positive.
  std::size_t below(std::size_t n);
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace iacloop

#endif  // IACLOOP_SEED_HPP_
