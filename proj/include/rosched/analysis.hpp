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

#ifndef ROSCHED__ANALYSIS_HPP_
#define ROSCHED__ANALYSIS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rosched/graph_model.hpp"
#include "rosched/trace.hpp"

namespace rosched
{

/// Least common multiple of all tree periods. Throws SporadicTask for sporadic trees
/// and Error on 64-bit overflow.
Tick hyperperiod(const Forest & forest);

/// Sum over trees of total tree work divided by period. Throws SporadicTask.
double utilization(const Forest & forest);

struct JobResponse
{
  JobIndex job = 0;
  Tick release = 0;
  Tick completion = 0;
  Tick response = 0;
};

struct TaskResponse
{
  std::string task;
  std::vector<JobResponse> jobs;
  Tick max = 0;
  double mean = 0.0;
  /// Nearest-rank percentile at ResponseTimeReport::percentile_level.
  Tick percentile = 0;
  /// Jobs released before the horizon that did not finish (or were dropped).
  std::size_t incomplete = 0;
};

struct DeadlineMiss
{
  std::string task;
  JobIndex job = 0;
  Tick lateness = 0;
};

struct ResponseTimeReport
{
  double percentile_level = 99.7;
  std::vector<TaskResponse> tasks;
  std::vector<DeadlineMiss> deadline_misses;
};

/// Response time of a job runs from its root's release to the completion of its
/// last subtask instance.
ResponseTimeReport response_times(
  const ScheduleTrace & trace, const Forest & forest, double percentile = 99.7);

/// Response-time bound per callback id.
using ResponseBounds = std::map<std::string, Tick>;

/// Largest observed (completion - eligibility) for every callback in the trace.
ResponseBounds observed_bounds(const ScheduleTrace & trace, const Forest & forest);

struct HarmonicViolation
{
  std::string parent_a;
  std::string parent_b;
  /// 1: t_A + R_A + R_C <= t_B, 2: t_B + R_B + R_C <= t_A + T_A, 0: periods not harmonic.
  int inequality = 0;
  Tick release_a = 0;
  Tick release_b = 0;
  Tick lhs = 0;
  Tick rhs = 0;
};

struct SubscriptionCheck
{
  DdsQueueKey queue;
  std::vector<std::string> parents;
  bool pass = true;
  std::optional<HarmonicViolation> violation;
};

struct HarmonicCheckResult
{
  std::vector<SubscriptionCheck> subscriptions;

  bool pass() const;
};

/// Checks, for every subscription queue fed by more than one forest node, that each
/// ordered parent pair satisfies both phase inequalities for every release in one
/// hyperperiod. Throws NotPeriodic if such parents are not roots of periodic trees,
/// MissingBound if a needed bound is absent.
HarmonicCheckResult check_harmonic_condition(const Forest & forest, const ResponseBounds & bounds);

/// Maximum simultaneous queue length per (topic, subscriber), replayed from dds_events.
std::map<DdsQueueKey, std::size_t> max_dds_depth(const ScheduleTrace & trace);

}  // namespace rosched

#endif  // ROSCHED__ANALYSIS_HPP_
