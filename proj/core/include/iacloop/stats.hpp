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

#ifndef IACLOOP_STATS_HPP_
#define IACLOOP_STATS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace iacloop::bench {

struct IterationTotals {
  std::size_t errors = 0;
  std::size_t warnings = 0;

  friend bool operator==(const IterationTotals&, const IterationTotals&) = default;
};

// Sums over every completed cell of one trial; index 0 is the initial
// generation.
struct TrialResult {
  std::size_t trial_index = 0;
  std::vector<IterationTotals> per_iteration_totals;
  std::size_t completed_cells = 0;
  std::size_t aborted_cells = 0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

struct IterationStats {
  double mean_errors = 0;
  double std_errors = 0;
  double mean_warnings = 0;
  double std_warnings = 0;

  friend bool operator==(const IterationStats&, const IterationStats&) = default;
};

// Per-iteration mean and sample standard deviation (n - 1) across trials.
struct AggregateStats {
  std::vector<IterationStats> iterations;

  std::vector<double> mean_errors() const;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requires at least two trials of equal length. Throws std::invalid_argument
// for fewer than two trials and LengthMismatch for ragged input.
AggregateStats aggregate(std::span<const TrialResult> trials);

// Smallest k such that every step j in [k, k + window - 1] moves by at most
// epsilon * max(means[k], 1). Throws std::invalid_argument when means is
// shorter than window + 1 or window is zero.
std::optional<std::size_t> detect_plateau(std::span<const double> means, double epsilon = 0.02,
                                          std::size_t window = 2);

}  // namespace iacloop::bench

#endif  // IACLOOP_STATS_HPP_
