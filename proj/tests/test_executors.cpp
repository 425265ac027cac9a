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

#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "rosched/executors.hpp"
#include "rosched/generate.hpp"
#include "test_support.hpp"

namespace rosched
{
namespace
{

using testing::SimpleSegment;
using testing::simple_segments;
using testing::subscription;
using testing::timer;

// --- Default executor --------------------------------------------------------

TEST(DefaultExecutor, ThreeTimerGoldenTrace)
{
  const Forest f = unfold(testing::three_timers());
  const auto t = simulate_default_executor(f, 30);
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{
      {"tau1", 0, 3}, {"tau2", 3, 13}, {"tau3", 13, 23}, {"tau1", 23, 26}}));
  EXPECT_EQ(t.polling_points, (std::vector<Tick>{0, 23}));
  ASSERT_EQ(t.drops.size(), 1u);
  EXPECT_EQ(t.drops[0], (DropRecord{0, 2, 20}));
}

struct OracleRun
{
  std::vector<SimpleSegment> segments;
  std::vector<Tick> polling_points;
  std::vector<std::pair<std::string, Tick>> drops;
};

// Tick-by-tick model of the ready-set executor for independent timers.
OracleRun tick_oracle(const std::vector<CallbackSpec> & timers, Tick horizon)
{
  OracleRun run;
  std::vector<std::deque<Tick>> pending(timers.size());
  std::deque<std::size_t> window;
  Tick busy_until = 0;
  for (Tick t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < timers.size(); ++i) {
      if (t >= timers[i].phase && (t - timers[i].phase) % timers[i].period == 0) {
        pending[i].push_back(t);
      }
    }
    if (t < busy_until) {
      continue;
    }
    if (window.empty()) {
      for (std::size_t i = 0; i < timers.size(); ++i) {
        if (!pending[i].empty()) {
          window.push_back(i);
          while (pending[i].size() > 1) {
            run.drops.push_back({timers[i].id, pending[i].back()});
            pending[i].pop_back();
          }
        }
      }
      if (window.empty()) {
        continue;
      }
      run.polling_points.push_back(t);
    }
    const std::size_t i = window.front();
    window.pop_front();
    pending[i].pop_front();
    run.segments.push_back({timers[i].id, t, t + timers[i].wcet});
    busy_until = t + timers[i].wcet;
  }
  std::sort(run.drops.begin(), run.drops.end(), [](const auto & a, const auto & b) {
      return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
  return run;
}

OracleRun as_oracle_run(const ScheduleTrace & t)
{
  OracleRun run{simple_segments(t), t.polling_points, {}};
  for (const auto & d : t.drops) {
    run.drops.push_back({t.tasks[d.task].name, d.activation});
  }
  std::sort(run.drops.begin(), run.drops.end(), [](const auto & a, const auto & b) {
      return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
  return run;
}

TEST(DefaultExecutor, OverloadedPairMatchesTickOracle)
{
  AppGraph g;
  g.callbacks = {timer("light", 3, 10), timer("heavy", 9, 10)};
  const auto t = simulate_default_executor(unfold(g), 200);
  const auto oracle = tick_oracle(g.callbacks, 200);
  const auto got = as_oracle_run(t);
  EXPECT_EQ(got.segments, oracle.segments);
  EXPECT_EQ(got.polling_points, oracle.polling_points);
  EXPECT_EQ(got.drops, oracle.drops);
  EXPECT_FALSE(t.drops.empty());
}

TEST(DefaultExecutor, RandomTimerSetsMatchTickOracle)
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    AppGraph g;
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int i = 0; i < n; ++i) {
      const Tick period = std::uniform_int_distribution<Tick>(5, 40)(rng);
      g.callbacks.push_back(
        timer(
          "t" + std::to_string(i), std::uniform_int_distribution<Tick>(1, 15)(rng), period,
          std::uniform_int_distribution<Tick>(0, period - 1)(rng)));
    }
    const auto got = as_oracle_run(simulate_default_executor(unfold(g), 300));
    const auto oracle = tick_oracle(g.callbacks, 300);
    ASSERT_EQ(got.segments, oracle.segments) << "trial " << trial;
    ASSERT_EQ(got.polling_points, oracle.polling_points) << "trial " << trial;
    ASSERT_EQ(got.drops, oracle.drops) << "trial " << trial;
  }
}

TEST(DefaultExecutor, SubscriptionsRunAfterTimersInWindow)
{
  AppGraph g;
  g.topics = {"x"};
  g.callbacks = {timer("pub", 2, 20, 0, {"x"}), subscription("sub", 3, "x"), timer("other", 4, 20)};
  const auto t = simulate_default_executor(unfold(g), 20);
  // The message published at 2 is only seen at the next polling point.
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{{"pub", 0, 2}, {"other", 2, 6}, {"sub", 6, 9}}));
  EXPECT_EQ(t.polling_points, (std::vector<Tick>{0, 6}));
}

// --- FIFO events executor ----------------------------------------------------

TEST(FifoEvents, ThreeTimerGoldenTrace)
{
  const auto t = simulate_fifo_events(unfold(testing::three_timers()), 30);
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{
      {"tau1", 0, 3}, {"tau2", 3, 13}, {"tau3", 13, 23}, {"tau1", 23, 26}, {"tau1", 26, 29}}));
  EXPECT_TRUE(t.drops.empty());
  EXPECT_TRUE(t.polling_points.empty());
}

TEST(FifoEvents, ChildrenQueueBehindEarlierRoots)
{
  AppGraph g;
  g.topics = {"x"};
  g.callbacks = {timer("a", 5, 100, 0, {"x"}), subscription("c", 1, "x"), timer("b", 2, 100, 3)};
  const auto t = simulate_fifo_events(unfold(g), 100);
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{{"a", 0, 5}, {"b", 5, 7}, {"c", 7, 8}}));
}

// --- Two-queue structure -----------------------------------------------------

QueuedEvent root_event(std::int64_t prio, std::size_t task)
{
  QueuedEvent e;
  e.root = true;
  e.origin = {task, 0, 0};
  e.priority = PriorityKey{prio, task, 0};
  return e;
}

QueuedEvent child_event(const std::string & sub)
{
  QueuedEvent e;
  e.root = false;
  e.queue = {"topic", sub};
  return e;
}

TEST(TwoQueueState, ChildrenInheritLatestPriority)
{
  TwoQueueState q;
  q.release_event(root_event(10, 0));
  q.release_event(root_event(20, 1));
  auto first = q.pick_next();
  ASSERT_TRUE(first && first->root);
  EXPECT_EQ(first->priority->primary, 10);
  q.release_event(child_event("c"));
  EXPECT_EQ(q.child_queue().back().priority->primary, 10);
  auto second = q.pick_next();
  ASSERT_TRUE(second);
  EXPECT_FALSE(second->root);
  auto third = q.pick_next();
  ASSERT_TRUE(third && third->root);
  EXPECT_EQ(third->priority->primary, 20);
  EXPECT_FALSE(q.pick_next());
  EXPECT_EQ(q.counters().violations(), 0u);
}

TEST(TwoQueueState, TieBetweenTopsGoesToChild)
{
  TwoQueueState q;
  q.release_event(root_event(10, 0));
  ASSERT_TRUE(q.pick_next());
  // Same key as the running job: the root cannot be strictly higher.
  q.release_event(root_event(10, 0));
  q.release_event(child_event("c"));
  auto next = q.pick_next();
  ASSERT_TRUE(next);
  EXPECT_FALSE(next->root);
}

TEST(TwoQueueState, HigherRootPreemptsStackBetweenSubtasks)
{
  TwoQueueState q;
  q.release_event(root_event(20, 1));
  ASSERT_TRUE(q.pick_next());
  q.release_event(child_event("c"));
  q.release_event(root_event(10, 0));
  auto next = q.pick_next();
  ASSERT_TRUE(next && next->root);
  EXPECT_EQ(next->priority->primary, 10);
  EXPECT_EQ(q.latest_priority()->primary, 10);
}

TEST(TwoQueueState, ChildBeforeAnyDispatchIsRejected)
{
  TwoQueueState q;
  EXPECT_THROW(q.release_event(child_event("c")), std::logic_error);
  QueuedEvent r;
  EXPECT_THROW(q.release_event(r), std::logic_error);
}

// --- Two-queue executor ------------------------------------------------------

TEST(TwoQueue, ThreeTimerRateMonotonicTrace)
{
  const Forest f = unfold(testing::three_timers());
  const auto t = simulate_two_queue(f, make_policy(PolicyKind::kRM, f), DdsOrder::kLifo, 30);
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{
      {"tau1", 0, 3}, {"tau2", 3, 13}, {"tau1", 13, 16}, {"tau3", 16, 26}, {"tau1", 26, 29}}));
  EXPECT_EQ(t.checks.violations(), 0u);
}

TEST(TwoQueue, SubtasksOfAJobRunBeforeLowerRoots)
{
  AppGraph g;
  g.topics = {"x"};
  g.callbacks = {
    timer("hi", 2, 10, 0, {"x"}), subscription("c1", 2, "x"), subscription("c2", 2, "x"),
    timer("lo", 3, 40)};
  const Forest f = unfold(g);
  const auto t = simulate_two_queue(f, make_policy(PolicyKind::kRM, f), DdsOrder::kLifo, 10);
  // LIFO stack: the last released sibling runs first.
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{
      {"hi", 0, 2}, {"c2", 2, 4}, {"c1", 4, 6}, {"lo", 6, 9}}));
}

TEST(TwoQueue, ExecutionTimeOverridesShortenSegments)
{
  AppGraph g;
  g.callbacks = {timer("a", 5, 10)};
  const Forest f = unfold(g);
  ExecutionTimes times{{{"a", "a", 1}, 2}};
  RunExtras extras;
  extras.execution_times = &times;
  const auto t =
    simulate_two_queue(f, make_policy(PolicyKind::kRM, f), DdsOrder::kLifo, 30, extras);
  EXPECT_EQ(
    simple_segments(t),
    (std::vector<SimpleSegment>{{"a", 0, 5}, {"a", 10, 12}, {"a", 20, 25}}));
}

TEST(TwoQueue, HorizonWithoutCompletionThrows)
{
  AppGraph g;
  g.callbacks = {timer("a", 5, 10, 20)};
  const Forest f = unfold(g);
  EXPECT_THROW(
    simulate_two_queue(f, make_policy(PolicyKind::kRM, f), DdsOrder::kLifo, 10), HorizonTooSmall);
}

TEST(TwoQueue, SegmentCrossingHorizonIsKeptWithoutChildren)
{
  AppGraph g;
  g.topics = {"x"};
  g.callbacks = {timer("a", 2, 10, 0), timer("b", 5, 20, 0, {"x"}), subscription("c", 1, "x")};
  const Forest f = unfold(g);
  const auto t = simulate_two_queue(f, make_policy(PolicyKind::kRM, f), DdsOrder::kLifo, 5);
  EXPECT_EQ(
    simple_segments(t), (std::vector<SimpleSegment>{{"a", 0, 2}, {"b", 2, 7}}));
}

TEST(TwoQueue, RunsAreDeterministic)
{
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    const Forest f = unfold(generate_taskset(p).graph);
    const auto policy = make_policy(PolicyKind::kEDF, f);
    EXPECT_EQ(
      simulate_two_queue(f, policy, DdsOrder::kFifo, 2000),
      simulate_two_queue(f, policy, DdsOrder::kFifo, 2000));
  }
}

// Scheduling never looks at message contents, so the DDS order may change which
// job a subscription serves but never when or which callback runs.
TEST(TwoQueue, DdsOrderNeverChangesTiming)
{
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.shared_topic_probability = 0.6;
    const Forest f = unfold(generate_taskset(p).graph);
    const auto policy = make_policy(PolicyKind::kRM, f);
    const auto lifo = simulate_two_queue(f, policy, DdsOrder::kLifo, 2000);
    const auto fifo = simulate_two_queue(f, policy, DdsOrder::kFifo, 2000);
    ASSERT_EQ(simple_segments(lifo), simple_segments(fifo)) << "seed " << seed;
    EXPECT_TRUE(lifo.mismatches.empty()) << "seed " << seed;
  }
}

// --- DDS queues --------------------------------------------------------------

TEST(DdsQueue, FifoAndLifoOrder)
{
  DdsQueue fifo(DdsOrder::kFifo);
  DdsQueue lifo(DdsOrder::kLifo);
  for (std::uint64_t i = 0; i < 3; ++i) {
    fifo.push({i, {}, i});
    lifo.push({i, {}, i});
  }
  EXPECT_EQ(fifo.pop().id, 0u);
  EXPECT_EQ(lifo.pop().id, 2u);
  EXPECT_EQ(fifo.max_depth(), 3u);
  DdsQueue empty;
  EXPECT_THROW(empty.pop(), std::logic_error);
}

TEST(DdsQueue, SingleElementQueuesAreOrderFree)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    DdsQueue fifo(DdsOrder::kFifo);
    DdsQueue lifo(DdsOrder::kLifo);
    std::uint64_t next = 0;
    for (int step = 0; step < 50; ++step) {
      if (fifo.empty() && std::bernoulli_distribution(0.6)(rng)) {
        fifo.push({next, {}, 0});
        lifo.push({next, {}, 0});
        ++next;
      } else if (!fifo.empty()) {
        ASSERT_EQ(fifo.pop().id, lifo.pop().id);
      }
      ASSERT_LE(fifo.size(), 1u);
    }
  }
}

}  // namespace
}  // namespace rosched
