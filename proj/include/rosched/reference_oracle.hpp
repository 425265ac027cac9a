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

#ifndef ROSCHED__REFERENCE_ORACLE_HPP_
#define ROSCHED__REFERENCE_ORACLE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rosched/executors.hpp"
#include "rosched/trace.hpp"

namespace rosched
{

/// Omniscient LP-FJP tree scheduler. It sees precedence directly: every eligible
/// instance sits in one ready pool with its job's priority, and the dispatcher takes
/// the highest key, breaking ties by most recent release.
ScheduleTrace simulate_reference(
  const Forest & forest, const PriorityPolicy & policy, Tick horizon,
  const RunExtras & extras = {});

struct Divergence
{
  /// Index of the first dispatch whose (instance, start, end) differs.
  std::size_t index = 0;
  std::optional<Segment> left;
  std::optional<Segment> right;
  std::vector<std::string> left_queues;
  std::vector<std::string> right_queues;
};

struct Equivalence
{
  bool equivalent = true;
  std::optional<Divergence> divergence;

  explicit operator bool() const {return equivalent;}
};

/// Segment-for-segment comparison of (instance, start, end).
/// Throws IncomparableTraces if the traces cover different forests or horizons.
Equivalence traces_equivalent(const ScheduleTrace & left, const ScheduleTrace & right);

std::string describe(
  const Equivalence & result, const ScheduleTrace & left, const ScheduleTrace & right);

struct Comparison
{
  ScheduleTrace candidate;
  ScheduleTrace reference;
  Equivalence result;
};

/// Runs the two-queue executor and the reference scheduler on the same input.
/// On divergence both runs are repeated to capture queue contents at the
/// divergent dispatch.
Comparison compare_with_reference(
  const Forest & forest, const PriorityPolicy & policy, DdsOrder dds_order, Tick horizon,
  const RunExtras & extras = {});

}  // namespace rosched

#endif  // ROSCHED__REFERENCE_ORACLE_HPP_
