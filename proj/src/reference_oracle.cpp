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

#include "rosched/reference_oracle.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace rosched
{

namespace
{

struct Pooled
{
  SubtaskInstance instance;
  std::uint64_t sequence = 0;
};

bool preferred(const Pooled & a, const Pooled & b)
{
  if (a.instance.priority != b.instance.priority) {
    return outranks(a.instance.priority, b.instance.priority);
  }
  return a.sequence > b.sequence;
}

}  // namespace

ScheduleTrace simulate_reference(
  const Forest & forest, const PriorityPolicy & policy, Tick horizon, const RunExtras & extras)
{
  ScheduleTrace trace;
  trace.executor = ExecutorKind::kReference;
  trace.policy = policy.kind();
  trace.dds_order = DdsOrder::kLifo;
  trace.horizon = horizon;
  trace.forest_hash = forest.hash();
  trace.tick_unit = extras.tick_unit;
  trace.tasks = labels_of(forest);

  std::vector<JobIndex> next_job(forest.trees.size(), 0);
  std::vector<Pooled> pool;
  std::uint64_t sequence = 0;
  std::size_t dispatches = 0;

  constexpr Tick kNever = std::numeric_limits<Tick>::max();
  auto upcoming = [&](const TreeTask & tree) {
      auto t = tree.release_time(next_job[tree.index]);
      return t && *t < horizon ? *t : kNever;
    };

  auto add = [&](InstanceId id, Tick eligible) {
      Pooled p;
      p.instance.id = id;
      p.instance.eligibility_time = eligible;
      p.instance.priority = policy.priority_of(forest.trees[id.task], id.job);
      p.instance.advance(InstanceState::kEnqueued);
      p.sequence = sequence++;
      trace.releases.push_back({id, eligible});
      pool.push_back(std::move(p));
    };

  // Admit every root release at or before `now`, earliest first, then by declaration.
  auto admit_roots = [&](Tick now) {
      while (true) {
        const TreeTask * best = nullptr;
        Tick best_tick = kNever;
        for (const auto & tree : forest.trees) {
          Tick t = upcoming(tree);
          if (t <= now && t < best_tick) {
            best = &tree;
            best_tick = t;
          }
        }
        if (!best) {
          return;
        }
        add({best->index, 0, next_job[best->index]++}, best_tick);
      }
    };

  Tick now = 0;
  while (true) {
    admit_roots(now);
    if (now >= horizon) {
      break;
    }
    if (extras.snapshot_at && *extras.snapshot_at == dispatches) {
      auto sorted = pool;
      std::sort(sorted.begin(), sorted.end(), preferred);
      QueueSnapshot snap{dispatches, now, {}};
      for (const auto & p : sorted) {
        snap.entries.push_back(
          "ready " + describe(trace, p.instance.id) + " prio=" + to_string(p.instance.priority) +
          " eligible=" + std::to_string(p.instance.eligibility_time));
      }
      trace.snapshot = std::move(snap);
    }

    if (pool.empty()) {
      Tick next = kNever;
      for (const auto & tree : forest.trees) {
        next = std::min(next, upcoming(tree));
      }
      if (next == kNever) {
        break;
      }
      now = next;
      continue;
    }

    auto it = std::min_element(pool.begin(), pool.end(), preferred);
    Pooled chosen = std::move(*it);
    pool.erase(it);
    chosen.instance.advance(InstanceState::kRunning);

    const auto & tree = forest.trees[chosen.instance.id.task];
    const Tick exec = execution_time(
      extras.execution_times, tree, chosen.instance.id.node, chosen.instance.id.job);
    trace.segments.push_back({chosen.instance.id, now, now + exec, chosen.instance.priority});
    ++dispatches;
    now += exec;
    chosen.instance.advance(InstanceState::kDone);

    if (now < horizon) {
      for (NodeId child : tree.node(chosen.instance.id.node).children) {
        add({chosen.instance.id.task, child, chosen.instance.id.job}, now);
      }
    }
  }
  return trace;
}

Equivalence traces_equivalent(const ScheduleTrace & left, const ScheduleTrace & right)
{
  if (left.forest_hash != right.forest_hash) {
    throw IncomparableTraces("traces were produced from different forests");
  }
  if (left.horizon != right.horizon) {
    throw IncomparableTraces("traces cover different horizons");
  }
  const auto & a = left.segments;
  const auto & b = right.segments;
  const std::size_t common = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < common && a[i].instance == b[i].instance && a[i].start == b[i].start &&
    a[i].end == b[i].end)
  {
    ++i;
  }
  if (i == common && a.size() == b.size()) {
    return {};
  }

  Divergence d;
  d.index = i;
  if (i < a.size()) {
    d.left = a[i];
  }
  if (i < b.size()) {
    d.right = b[i];
  }
  if (left.snapshot && left.snapshot->dispatch_index == i) {
    d.left_queues = left.snapshot->entries;
  }
  if (right.snapshot && right.snapshot->dispatch_index == i) {
    d.right_queues = right.snapshot->entries;
  }
  return {false, std::move(d)};
}

std::string describe(
  const Equivalence & result, const ScheduleTrace & left, const ScheduleTrace & right)
{
  if (result.equivalent) {
    return "equivalent (" + std::to_string(left.segments.size()) + " segments)";
  }
  const auto & d = *result.divergence;
  std::ostringstream os;
  auto seg = [&](const ScheduleTrace & t, const std::optional<Segment> & s) {
      if (!s) {
        return std::string("<none>");
      }
      return describe(t, s->instance) + " [" + std::to_string(s->start) + "," +
             std::to_string(s->end) + ") prio=" + to_string(s->priority);
    };
  os << "diverged at dispatch " << d.index << '\n';
  os << "  " << to_string(left.executor) << ": " << seg(left, d.left) << '\n';
  os << "  " << to_string(right.executor) << ": " << seg(right, d.right) << '\n';
  for (const auto & line : d.left_queues) {
    os << "  " << to_string(left.executor) << " | " << line << '\n';
  }
  for (const auto & line : d.right_queues) {
    os << "  " << to_string(right.executor) << " | " << line << '\n';
  }
  return os.str();
}

Comparison compare_with_reference(
  const Forest & forest, const PriorityPolicy & policy, DdsOrder dds_order, Tick horizon,
  const RunExtras & extras)
{
  Comparison c{
    simulate_two_queue(forest, policy, dds_order, horizon, extras),
    simulate_reference(forest, policy, horizon, extras),
    {}};
  c.result = traces_equivalent(c.candidate, c.reference);
  if (!c.result) {
    RunExtras again = extras;
    again.snapshot_at = c.result.divergence->index;
    c.candidate = simulate_two_queue(forest, policy, dds_order, horizon, again);
    c.reference = simulate_reference(forest, policy, horizon, again);
    c.result = traces_equivalent(c.candidate, c.reference);
  }
  return c;
}

}  // namespace rosched
