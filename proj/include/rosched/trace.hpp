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

#ifndef ROSCHED__TRACE_HPP_
#define ROSCHED__TRACE_HPP_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosched/graph_model.hpp"
#include "rosched/scheduling_core.hpp"
#include "rosched/types.hpp"

namespace rosched
{

enum class DdsOrder
{
  kFifo,
  kLifo,
};

std::string_view to_string(DdsOrder order);
DdsOrder parse_dds_order(std::string_view text);

enum class ExecutorKind
{
  kDefault,
  kFifoEvents,
  kTwoQueue,
  kReference,
};

std::string_view to_string(ExecutorKind kind);
ExecutorKind parse_executor_kind(std::string_view text);

struct Segment
{
  InstanceId instance;
  Tick start = 0;
  Tick end = 0;
  PriorityKey priority;

  bool operator==(const Segment &) const = default;
};

struct ReleaseRecord
{
  InstanceId instance;
  Tick eligibility = 0;

  bool operator==(const ReleaseRecord &) const = default;
};

/// A timer activation coalesced away by the default executor.
struct DropRecord
{
  std::size_t task = 0;
  JobIndex job = 0;
  Tick activation = 0;

  bool operator==(const DropRecord &) const = default;
};

enum class DdsAction
{
  kEnqueue,
  kDequeue,
};

struct DdsQueueKey
{
  std::string topic;
  std::string subscriber;

  auto operator<=>(const DdsQueueKey &) const = default;
};

struct DdsEvent
{
  DdsAction action = DdsAction::kEnqueue;
  DdsQueueKey queue;
  std::uint64_t message = 0;
  /// Publishing instance; its job is the payload token.
  InstanceId publisher;
  Tick tick = 0;

  bool operator==(const DdsEvent &) const = default;
};

/// A subscription dispatched for one job that consumed another job's message.
struct MismatchRecord
{
  Tick tick = 0;
  std::string subscriber;
  InstanceId expected;
  InstanceId consumed;

  bool operator==(const MismatchRecord &) const = default;
};

/// Violation counters of the two-queue runtime checks; all zero for other executors.
struct InvariantCounters
{
  /// A child dispatched right after the executor was idle.
  std::uint64_t idle_root = 0;
  /// A released child whose priority differs from the subtask that just finished.
  std::uint64_t child_priority = 0;
  /// A queued event outranking the event being dispatched.
  std::uint64_t queue_bound = 0;
  /// A child pushed below a stack entry of higher priority.
  std::uint64_t push_max = 0;
  /// A child popped while a deeper stack entry outranks it.
  std::uint64_t pop_max = 0;
  /// A dispatched event whose priority differs from its job's policy priority.
  std::uint64_t inheritance = 0;
  /// Number of checks evaluated.
  std::uint64_t checks = 0;

  std::uint64_t violations() const
  {
    return idle_root + child_priority + queue_bound + push_max +
           pop_max + inheritance;
  }

  bool operator==(const InvariantCounters &) const = default;
};

struct QueueSnapshot
{
  std::size_t dispatch_index = 0;
  Tick tick = 0;
  std::vector<std::string> entries;

  bool operator==(const QueueSnapshot &) const = default;
};

/// Names carried by a trace so it can be serialized and rendered without the forest.
struct TaskLabel
{
  std::string name;
  std::vector<std::string> node_callbacks;

  bool operator==(const TaskLabel &) const = default;
};

struct ScheduleTrace
{
  ExecutorKind executor = ExecutorKind::kTwoQueue;
  PolicyKind policy = PolicyKind::kRM;
  DdsOrder dds_order = DdsOrder::kLifo;
  Tick horizon = 0;
  std::uint64_t forest_hash = 0;
  std::string tick_unit = "100us";
  std::vector<TaskLabel> tasks;

  std::vector<Segment> segments;
  std::vector<ReleaseRecord> releases;
  std::vector<DropRecord> drops;
  std::vector<Tick> polling_points;
  std::vector<DdsEvent> dds_events;
  std::map<DdsQueueKey, std::size_t> max_dds_depth;
  std::vector<MismatchRecord> mismatches;
  InvariantCounters checks;
  std::optional<QueueSnapshot> snapshot;

  bool operator==(const ScheduleTrace &) const = default;
};

std::vector<TaskLabel> labels_of(const Forest & forest);

/// "<task>.<callback>@<node>#<job>"
std::string describe(const ScheduleTrace & trace, const InstanceId & id);

}  // namespace rosched

#endif  // ROSCHED__TRACE_HPP_
