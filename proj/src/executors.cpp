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

#include "rosched/executors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rosched
{

Tick execution_time(
  const ExecutionTimes * overrides, const TreeTask & task, NodeId node, JobIndex job)
{
  const auto & n = task.node(node);
  if (overrides) {
    auto it = overrides->find({task.name, n.callback, job});
    if (it != overrides->end()) {
      return it->second;
    }
  }
  return n.wcet;
}

// ---------------------------------------------------------------------------
// TwoQueueState

namespace
{

// Heap comparator: `a` sorts below `b` when `b` has higher priority.
bool heap_less(const QueuedEvent & a, const QueuedEvent & b)
{
  return outranks(*b.priority, *a.priority);
}

std::string event_line(const char * where, const QueuedEvent & e)
{
  std::string s = std::string(where) + " prio=" +
    (e.priority ? to_string(*e.priority) : std::string("undef")) +
    " eligible=" + std::to_string(e.eligibility);
  if (e.root) {
    s += " task=" + std::to_string(e.origin.task) + " job=" + std::to_string(e.origin.job);
  } else {
    s += " sub=" + e.queue.subscriber + " topic=" + e.queue.topic;
  }
  return s;
}

}  // namespace

void TwoQueueState::release_event(QueuedEvent event)
{
  if (event.root) {
    if (!event.priority) {
      throw std::logic_error("root event released without a priority");
    }
    root_heap_.push_back(std::move(event));
    std::push_heap(root_heap_.begin(), root_heap_.end(), heap_less);
    return;
  }
  if (!latest_priority_) {
    throw std::logic_error("child event released before any dispatch");
  }
  event.priority = latest_priority_;
  ++counters_.checks;
  for (const auto & below : child_stack_) {
    if (outranks(*below.priority, *event.priority)) {
      ++counters_.push_max;
      break;
    }
  }
  child_stack_.push_back(std::move(event));
}

std::optional<QueuedEvent> TwoQueueState::pick_next()
{
  if (empty()) {
    was_idle_ = true;
    return std::nullopt;
  }
  bool take_root;
  if (child_stack_.empty()) {
    take_root = true;
  } else if (root_heap_.empty()) {
    take_root = false;
  } else {
    take_root = outranks(*root_heap_.front().priority, *child_stack_.back().priority);
  }

  QueuedEvent next;
  if (take_root) {
    std::pop_heap(root_heap_.begin(), root_heap_.end(), heap_less);
    next = std::move(root_heap_.back());
    root_heap_.pop_back();
  } else {
    next = std::move(child_stack_.back());
    child_stack_.pop_back();
    for (const auto & e : child_stack_) {
      if (outranks(*e.priority, *next.priority)) {
        ++counters_.pop_max;
        break;
      }
    }
  }

  ++counters_.checks;
  auto beats_dispatched = [&](const QueuedEvent & e) {
      return outranks(*e.priority, *next.priority);
    };
  if (std::any_of(root_heap_.begin(), root_heap_.end(), beats_dispatched) ||
    std::any_of(child_stack_.begin(), child_stack_.end(), beats_dispatched))
  {
    ++counters_.queue_bound;
  }
  if (was_idle_ && !next.root) {
    ++counters_.idle_root;
  }
  was_idle_ = false;
  latest_priority_ = next.priority;
  return next;
}

std::vector<QueuedEvent> TwoQueueState::root_queue() const
{
  auto sorted = root_heap_;
  std::sort(
    sorted.begin(), sorted.end(), [](const QueuedEvent & a, const QueuedEvent & b) {
      return outranks(*a.priority, *b.priority);
    });
  return sorted;
}

std::vector<std::string> TwoQueueState::snapshot() const
{
  std::vector<std::string> out;
  out.push_back(
    "latest_priority=" + (latest_priority_ ? to_string(*latest_priority_) : std::string("undef")));
  for (const auto & e : root_queue()) {
    out.push_back(event_line("root_queue", e));
  }
  for (auto it = child_stack_.rbegin(); it != child_stack_.rend(); ++it) {
    out.push_back(event_line("child_queue", *it));
  }
  return out;
}

// ---------------------------------------------------------------------------
// DdsQueue

void DdsQueue::push(DdsMessage message)
{
  messages_.push_back(std::move(message));
  max_depth_ = std::max(max_depth_, messages_.size());
}

DdsMessage DdsQueue::pop()
{
  if (messages_.empty()) {
    throw std::logic_error("dequeue from an empty DDS queue");
  }
  DdsMessage m;
  if (order_ == DdsOrder::kFifo) {
    m = std::move(messages_.front());
    messages_.pop_front();
  } else {
    m = std::move(messages_.back());
    messages_.pop_back();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Simulation plumbing shared by the three executors

namespace
{

struct RootRelease
{
  Tick tick;
  std::size_t task;
  JobIndex job;
};

std::vector<RootRelease> root_releases(const Forest & forest, Tick horizon)
{
  std::vector<RootRelease> out;
  for (const auto & tree : forest.trees) {
    for (JobIndex k = 0;; ++k) {
      auto t = tree.release_time(k);
      if (!t || *t >= horizon) {
        break;
      }
      out.push_back({*t, tree.index, k});
    }
  }
  std::stable_sort(
    out.begin(), out.end(), [](const RootRelease & a, const RootRelease & b) {
      return a.tick != b.tick ? a.tick < b.tick : a.task < b.task;
    });
  return out;
}

ScheduleTrace start_trace(
  const Forest & forest, ExecutorKind executor, PolicyKind policy, DdsOrder order, Tick horizon,
  const RunExtras & extras)
{
  ScheduleTrace trace;
  trace.executor = executor;
  trace.policy = policy;
  trace.dds_order = order;
  trace.horizon = horizon;
  trace.forest_hash = forest.hash();
  trace.tick_unit = extras.tick_unit;
  trace.tasks = labels_of(forest);
  return trace;
}

/// Messages in flight, one DdsQueue per (topic, subscriber).
class DdsLayer
{
public:
  DdsLayer(DdsOrder order, ScheduleTrace & trace)
  : order_(order), trace_(trace) {}

  void publish(const DdsQueueKey & key, const InstanceId & publisher, Tick now)
  {
    DdsMessage m{next_id_++, publisher, now};
    trace_.dds_events.push_back({DdsAction::kEnqueue, key, m.id, publisher, now});
    queue(key).push(m);
  }

  DdsMessage take(const DdsQueueKey & key, Tick now)
  {
    DdsMessage m = queue(key).pop();
    trace_.dds_events.push_back({DdsAction::kDequeue, key, m.id, m.publisher, now});
    return m;
  }

  bool has_data(const DdsQueueKey & key) const
  {
    auto it = queues_.find(key);
    return it != queues_.end() && !it->second.empty();
  }

  void finish()
  {
    for (const auto & [key, q] : queues_) {
      trace_.max_dds_depth[key] = q.max_depth();
    }
  }

private:
  DdsQueue & queue(const DdsQueueKey & key)
  {
    return queues_.try_emplace(key, order_).first->second;
  }

  DdsOrder order_;
  ScheduleTrace & trace_;
  std::map<DdsQueueKey, DdsQueue> queues_;
  std::uint64_t next_id_ = 0;
};

DdsQueueKey queue_of(const TreeTask & tree, NodeId child)
{
  const auto & n = tree.node(child);
  return {n.topic, n.callback};
}

/// Instance a subscription runs as when it consumes `message`.
InstanceId consumer_instance(
  const Forest & forest, const DdsMessage & message, const DdsQueueKey & key)
{
  const auto & tree = forest.trees.at(message.publisher.task);
  auto child = tree.child_for(message.publisher.node, key.subscriber, key.topic);
  if (!child) {
    throw std::logic_error("message routed to a subscriber that is not a child of its publisher");
  }
  return {message.publisher.task, *child, message.publisher.job};
}

bool any_job_completed(const ScheduleTrace & trace, const Forest & forest)
{
  std::map<std::pair<std::size_t, JobIndex>, std::size_t> done;
  for (const auto & s : trace.segments) {
    auto n = ++done[{s.instance.task, s.instance.job}];
    if (n == forest.trees[s.instance.task].nodes.size()) {
      return true;
    }
  }
  return false;
}

void maybe_snapshot(
  ScheduleTrace & trace, const RunExtras & extras, std::size_t dispatch, Tick now,
  const std::vector<std::string> & entries)
{
  if (extras.snapshot_at && *extras.snapshot_at == dispatch) {
    trace.snapshot = QueueSnapshot{dispatch, now, entries};
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Two-queue LP-FJP events executor

ScheduleTrace simulate_two_queue(
  const Forest & forest, const PriorityPolicy & policy, DdsOrder dds_order, Tick horizon,
  const RunExtras & extras)
{
  ScheduleTrace trace =
    start_trace(forest, ExecutorKind::kTwoQueue, policy.kind(), dds_order, horizon, extras);
  DdsLayer dds(dds_order, trace);
  TwoQueueState state;
  const auto releases = root_releases(forest, horizon);
  std::size_t next_release = 0;
  std::size_t dispatches = 0;
  Tick now = 0;

  // Timer expirations are enqueued at scheduling points, after child releases.
  auto enqueue_roots = [&](Tick upto) {
      while (next_release < releases.size() && releases[next_release].tick <= upto) {
        const auto & r = releases[next_release++];
        const auto & tree = forest.trees[r.task];
        QueuedEvent e;
        e.root = true;
        e.origin = {r.task, 0, r.job};
        e.eligibility = r.tick;
        e.priority = policy.priority_of(tree, r.job);
        trace.releases.push_back({e.origin, r.tick});
        state.release_event(std::move(e));
      }
    };

  while (true) {
    enqueue_roots(now);
    if (now >= horizon) {
      break;
    }
    maybe_snapshot(trace, extras, dispatches, now, state.snapshot());
    auto event = state.pick_next();
    if (!event) {
      if (next_release == releases.size()) {
        break;
      }
      now = releases[next_release].tick;
      continue;
    }

    InstanceId instance = event->origin;
    if (!event->root) {
      DdsMessage m = dds.take(event->queue, now);
      instance = consumer_instance(forest, m, event->queue);
      if (instance != event->origin) {
        trace.mismatches.push_back({now, event->queue.subscriber, event->origin, instance});
      }
    }
    const auto & tree = forest.trees[instance.task];
    if (policy.priority_of(forest.trees[event->origin.task], event->origin.job) !=
      *event->priority)
    {
      ++state.counters().inheritance;
    }

    const Tick exec = execution_time(extras.execution_times, tree, instance.node, instance.job);
    trace.segments.push_back({instance, now, now + exec, *event->priority});
    ++dispatches;
    now += exec;
    if (now >= horizon) {
      continue;
    }

    for (NodeId child : tree.node(instance.node).children) {
      const DdsQueueKey key = queue_of(tree, child);
      dds.publish(key, instance, now);
      QueuedEvent e;
      e.root = false;
      e.origin = {instance.task, child, instance.job};
      e.queue = key;
      e.eligibility = now;
      trace.releases.push_back({e.origin, now});
      state.release_event(std::move(e));
      // The child must have inherited the priority of the subtask that just finished.
      if (state.child_queue().back().priority != trace.segments.back().priority) {
        ++state.counters().child_priority;
      }
    }
  }

  dds.finish();
  trace.checks = state.counters();
  if (!forest.trees.empty() && !any_job_completed(trace, forest)) {
    throw HorizonTooSmall(
      "no job completes before horizon " + std::to_string(horizon));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Default (ready-set) executor

ScheduleTrace simulate_default_executor(
  const Forest & forest, Tick horizon, const PriorityPolicy & policy, const RunExtras & extras)
{
  ScheduleTrace trace = start_trace(
    forest, ExecutorKind::kDefault, policy.kind(), DdsOrder::kFifo, horizon, extras);
  DdsLayer dds(DdsOrder::kFifo, trace);
  const auto releases = root_releases(forest, horizon);
  std::size_t next_release = 0;

  // Pending activations per tree root (timers coalesce, sporadic arrivals persist).
  std::vector<std::deque<JobIndex>> pending(forest.trees.size());
  std::map<std::string, std::size_t> root_of_callback;
  for (const auto & tree : forest.trees) {
    root_of_callback[tree.name] = tree.index;
  }
  // Subscription callbacks and the single topic each one reads.
  std::map<std::string, std::string> topic_of;
  for (const auto & tree : forest.trees) {
    for (const auto & n : tree.nodes) {
      if (n.parent) {
        topic_of[n.callback] = n.topic;
      }
    }
  }

  auto activate = [&](Tick upto) {
      while (next_release < releases.size() && releases[next_release].tick <= upto) {
        const auto & r = releases[next_release++];
        pending[r.task].push_back(r.job);
        trace.releases.push_back({{r.task, 0, r.job}, r.tick});
      }
    };

  struct Ready
  {
    bool is_root;
    std::size_t task;      // roots
    DdsQueueKey queue;     // subscriptions
  };

  Tick now = 0;
  while (true) {
    activate(now);
    if (now >= horizon) {
      break;
    }

    std::vector<Ready> ready;
    for (const auto & tree : forest.trees) {
      if (tree.activation == Activation::kPeriodic && !pending[tree.index].empty()) {
        ready.push_back({true, tree.index, {}});
      }
    }
    for (const auto & id : forest.callback_order) {
      if (auto it = root_of_callback.find(id); it != root_of_callback.end()) {
        const auto & tree = forest.trees[it->second];
        if (tree.activation == Activation::kSporadic && !pending[tree.index].empty()) {
          ready.push_back({true, tree.index, {}});
        }
      } else if (auto t = topic_of.find(id); t != topic_of.end()) {
        DdsQueueKey key{t->second, id};
        if (dds.has_data(key)) {
          ready.push_back({false, 0, key});
        }
      }
    }

    if (ready.empty()) {
      if (next_release == releases.size()) {
        break;
      }
      now = releases[next_release].tick;
      continue;
    }

    trace.polling_points.push_back(now);
    for (const auto & r : ready) {
      const auto & tree = forest.trees[r.task];
      if (r.is_root && tree.activation == Activation::kPeriodic) {
        auto & q = pending[r.task];
        for (std::size_t i = 1; i < q.size(); ++i) {
          trace.drops.push_back({r.task, q[i], *tree.release_time(q[i])});
        }
        q.resize(1);
      }
    }

    for (const auto & r : ready) {
      if (now >= horizon) {
        break;
      }
      InstanceId instance;
      if (r.is_root) {
        instance = {r.task, 0, pending[r.task].front()};
        pending[r.task].pop_front();
      } else {
        instance = consumer_instance(forest, dds.take(r.queue, now), r.queue);
      }
      const auto & tree = forest.trees[instance.task];
      const Tick exec = execution_time(extras.execution_times, tree, instance.node, instance.job);
      trace.segments.push_back(
        {instance, now, now + exec, policy.priority_of(tree, instance.job)});
      now += exec;
      if (now < horizon) {
        for (NodeId child : tree.node(instance.node).children) {
          dds.publish(queue_of(tree, child), instance, now);
          trace.releases.push_back({{instance.task, child, instance.job}, now});
        }
      }
      activate(now);
    }
  }

  dds.finish();
  return trace;
}

// ---------------------------------------------------------------------------
// Stock events executor (single FIFO events queue)

ScheduleTrace simulate_fifo_events(
  const Forest & forest, Tick horizon, const PriorityPolicy & policy, const RunExtras & extras)
{
  ScheduleTrace trace = start_trace(
    forest, ExecutorKind::kFifoEvents, policy.kind(), DdsOrder::kFifo, horizon, extras);
  DdsLayer dds(DdsOrder::kFifo, trace);
  const auto releases = root_releases(forest, horizon);
  std::size_t next_release = 0;
  std::size_t dispatches = 0;

  struct Entry
  {
    bool root;
    InstanceId origin;
    DdsQueueKey queue;
  };
  std::deque<Entry> events;

  auto enqueue_roots = [&](Tick upto, bool inclusive) {
      while (next_release < releases.size() &&
        (releases[next_release].tick < upto ||
        (inclusive && releases[next_release].tick == upto)))
      {
        const auto & r = releases[next_release++];
        events.push_back({true, {r.task, 0, r.job}, {}});
        trace.releases.push_back({{r.task, 0, r.job}, r.tick});
      }
    };

  auto snapshot = [&]() {
      std::vector<std::string> out;
      for (const auto & e : events) {
        out.push_back(
          e.root ? "events_queue root task=" + std::to_string(e.origin.task) + " job=" +
          std::to_string(e.origin.job) :
          "events_queue sub=" + e.queue.subscriber + " topic=" + e.queue.topic);
      }
      return out;
    };

  Tick now = 0;
  while (true) {
    enqueue_roots(now, true);
    if (now >= horizon) {
      break;
    }
    maybe_snapshot(trace, extras, dispatches, now, snapshot());
    if (events.empty()) {
      if (next_release == releases.size()) {
        break;
      }
      now = releases[next_release].tick;
      continue;
    }
    Entry e = events.front();
    events.pop_front();

    InstanceId instance = e.origin;
    if (!e.root) {
      DdsMessage m = dds.take(e.queue, now);
      instance = consumer_instance(forest, m, e.queue);
      if (instance != e.origin) {
        trace.mismatches.push_back({now, e.queue.subscriber, e.origin, instance});
      }
    }
    const auto & tree = forest.trees[instance.task];
    const Tick exec = execution_time(extras.execution_times, tree, instance.node, instance.job);
    trace.segments.push_back({instance, now, now + exec, policy.priority_of(tree, instance.job)});
    ++dispatches;
    // Timers that expired while the callback ran were queued before its completion.
    enqueue_roots(now + exec, false);
    now += exec;
    if (now >= horizon) {
      break;
    }
    for (NodeId child : tree.node(instance.node).children) {
      const DdsQueueKey key = queue_of(tree, child);
      dds.publish(key, instance, now);
      events.push_back({false, {instance.task, child, instance.job}, key});
      trace.releases.push_back({{instance.task, child, instance.job}, now});
    }
  }

  dds.finish();
  return trace;
}

}  // namespace rosched
