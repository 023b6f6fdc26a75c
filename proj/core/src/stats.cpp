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

#include "iacloop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace iacloop::bench {

std::vector<double> AggregateStats::mean_errors() const {
  std::vector<double> out;
  out.reserve(iterations.size());
  for (const IterationStats& s : iterations) out.push_back(s.mean_errors);
  return out;
}

namespace {

// Welford's online update.
struct RunningMoments {
  std::size_t n = 0;
  double mean = 0;
  double m2 = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double sample_std() const {
    return n < 2 ? 0.0 : std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)));
  }
};

}  // namespace

AggregateStats aggregate(std::span<const TrialResult> trials) {
  if (trials.size() < 2) {
    throw std::invalid_argument("aggregate needs at least two trials, got " +
                                std::to_string(trials.size()));
  }
  const std::size_t length = trials.front().per_iteration_totals.size();
  for (const TrialResult& t : trials) {
    if (t.per_iteration_totals.size() != length) {
      throw LengthMismatch("trial " + std::to_string(t.trial_index) + " has " +
                           std::to_string(t.per_iteration_totals.size()) +
                           " iterations, expected " + std::to_string(length));
    }
  }
  AggregateStats stats;
  stats.iterations.resize(length);
  for (std::size_t i = 0; i < length; ++i) {
    RunningMoments errors;
    RunningMoments warnings;
    for (const TrialResult& t : trials) {
      errors.add(static_cast<double>(t.per_iteration_totals[i].errors));
      warnings.add(static_cast<double>(t.per_iteration_totals[i].warnings));
    }
    stats.iterations[i] = {errors.mean, errors.sample_std(), warnings.mean, warnings.sample_std()};
  }
  return stats;
}

std::optional<std::size_t> detect_plateau(std::span<const double> means, double epsilon,
                                          std::size_t window) {
  if (window == 0) throw std::invalid_argument("plateau window must be positive");
  if (means.size() < window + 1) {
    throw std::invalid_argument("plateau detection needs at least window + 1 points");
  }
  for (std::size_t k = 0; k + window < means.size(); ++k) {
    const double threshold = epsilon * std::max(means[k], 1.0);
    bool flat = true;
    for (std::size_t j = k; j < k + window; ++j) {
      if (std::abs(means[j] - means[j + 1]) > threshold) {
        flat = false;
        break;
      }
    }
    if (flat) return k;
  }
  return std::nullopt;
}

}  // namespace iacloop::bench
