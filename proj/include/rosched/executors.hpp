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

#ifndef ROSCHED__EXECUTORS_HPP_
#define ROSCHED__EXECUTORS_HPP_

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rosched/graph_model.hpp"
#include "rosched/scheduling_core.hpp"
#include "rosched/trace.hpp"

namespace rosched
{

/// Per-job actual execution times keyed by (task name, callback id, job index).
/// Instances without an entry run for their full WCET.
using ExecutionTimes = std::map<std::tuple<std::string, std::string, JobIndex>, Tick>;

Tick execution_time(
  const ExecutionTimes * overrides, const TreeTask & task, NodeId node, JobIndex job);

struct RunExtras
{
  const ExecutionTimes * execution_times = nullptr;
  /// Capture the scheduler's queue contents right before this dispatch (0-based).
  std::optional<std::size_t> snapshot_at;
  std::string tick_unit = "100us";
};

/// An entry of the events queue of the two-queue executor.
struct QueuedEvent
{
  bool root = true;
  /// Instance that actually caused this event. The executor never reads it;
  /// the simulator uses it to detect message/job mismatches.
  InstanceId origin;
  /// DDS queue the subscription reads from (children only).
  DdsQueueKey queue;
  Tick eligibility = 0;
  /// Defined at release for roots; assigned from latest_priority for children.
  std::optional<PriorityKey> priority;
};

/// Root priority heap plus priority-annotated LIFO child stack.
class TwoQueueState
{
public:
  /// Release: roots go to the heap, children inherit latest_priority and go on the stack.
  void release_event(QueuedEvent event);

  /// Dispatch: the strictly higher of the two tops is dispatched, ties go to the child.
  /// Returns nullopt when both queues are empty.
  std::optional<QueuedEvent> pick_next();

  bool empty() const {return root_heap_.empty() && child_stack_.empty();}
  const std::optional<PriorityKey> & latest_priority() const {return latest_priority_;}

  /// Child stack, bottom first.
  const std::vector<QueuedEvent> & child_queue() const {return child_stack_;}
  /// Root heap contents, highest priority first.
  std::vector<QueuedEvent> root_queue() const;

  std::vector<std::string> snapshot() const;

  InvariantCounters & counters() {return counters_;}
  const InvariantCounters & counters() const {return counters_;}

private:
  std::vector<QueuedEvent> root_heap_;
  std::vector<QueuedEvent> child_stack_;
  std::optional<PriorityKey> latest_priority_;
  bool was_idle_ = true;
  InvariantCounters counters_;
};

struct DdsMessage
{
  std::uint64_t id = 0;
  InstanceId publisher;
  Tick published = 0;
};

/// Message buffer of one (topic, subscriber) pair. Depth is unbounded.
class DdsQueue
{
public:
  explicit DdsQueue(DdsOrder order = DdsOrder::kFifo)
  : order_(order) {}

  void push(DdsMessage message);
  /// Removes the oldest (FIFO) or newest (LIFO) message. Throws std::logic_error if empty.
  DdsMessage pop();

  bool empty() const {return messages_.empty();}
  std::size_t size() const {return messages_.size();}
  std::size_t max_depth() const {return max_depth_;}
  DdsOrder order() const {return order_;}

private:
  DdsOrder order_;
  std::deque<DdsMessage> messages_;
  std::size_t max_depth_ = 0;
};

/// The LP-FJP events executor with the two-queue events queue.
/// Throws HorizonTooSmall if the forest is non-empty and no job completes.
ScheduleTrace simulate_two_queue(
  const Forest & forest, const PriorityPolicy & policy, DdsOrder dds_order, Tick horizon,
  const RunExtras & extras = {});

/// Ready-set executor: polling points, processing windows, timer coalescing.
/// `policy` only annotates segments.
ScheduleTrace simulate_default_executor(
  const Forest & forest, Tick horizon, const PriorityPolicy & policy = {},
  const RunExtras & extras = {});

/// Stock events executor with one FIFO events queue.
ScheduleTrace simulate_fifo_events(
  const Forest & forest, Tick horizon, const PriorityPolicy & policy = {},
  const RunExtras & extras = {});

}  // namespace rosched

#endif  // ROSCHED__EXECUTORS_HPP_
