// Copyright 2026 The rosched Authors
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

#ifndef ROSCHED__CLI_HPP_
#define ROSCHED__CLI_HPP_

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "rosched/generate.hpp"
#include "rosched/scheduling_core.hpp"
#include "rosched/trace.hpp"

namespace rosched
{

/// Exit statuses of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysisFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line. `args` excludes the program name.
int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

/// Two hyperperiods, capped at one million ticks.
Tick trial_horizon(const Forest & forest);

/// Outcome of comparing the two-queue executor (LIFO DDS) with the reference
/// scheduler on one generated forest.
struct TrialResult
{
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::kRM;
  std::size_t trees = 0;
  std::size_t nodes = 0;
  double utilization = 0.0;
  Tick horizon = 0;
  std::size_t segments = 0;
  bool equivalent = false;
  InvariantCounters checks;
  /// Divergence report, empty when equivalent.
  std::string report;
};

TrialResult run_equivalence_trial(GeneratorParams params, PolicyKind policy);

/// Runs `count` independent jobs on up to `threads` workers (0: hardware concurrency).
/// Job i only writes slot i, so results come back in index order.
void parallel_for(std::size_t count, std::size_t threads,
  const std::function<void(std::size_t)> & job);

}  // namespace rosched

#endif  // ROSCHED__CLI_HPP_
