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

#include <regex>

#include "rosched/executors.hpp"
#include "rosched/generate.hpp"
#include "rosched/reference_oracle.hpp"
#include "rosched/taskset_io.hpp"
#include "test_support.hpp"

namespace rosched
{
namespace
{

TEST(TasksetIo, ThreeTimerFixture)
{
  const auto doc = load_taskset(testing::fixture("three_timers.taskset"));
  ASSERT_EQ(doc.graph.callbacks.size(), 3u);
  EXPECT_TRUE(doc.graph.topics.empty());
  const std::tuple<const char *, Tick, Tick> expected[] = {
    {"tau1", 10, 3}, {"tau2", 30, 10}, {"tau3", 30, 10}};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto & cb = doc.graph.callbacks[i];
    EXPECT_EQ(cb.id, std::get<0>(expected[i]));
    EXPECT_EQ(cb.kind, CallbackKind::kTimer);
    EXPECT_EQ(cb.period, std::get<1>(expected[i]));
    EXPECT_EQ(cb.wcet, std::get<2>(expected[i]));
  }
  EXPECT_EQ(doc.horizon, std::optional<Tick>(30));
}

TEST(TasksetIo, SyntheticFixtures)
{
  const std::pair<const char *, std::vector<Tick>> cases[] = {
    {"shared_topic_50.taskset", {1, 1, 5, 2, 2}},
    {"shared_topic_70.taskset", {2, 1, 12, 2, 2}},
    {"shared_topic_90.taskset", {3, 1, 12, 2, 4}}};
  for (const auto & [file, wcets] : cases) {
    const auto doc = load_taskset(testing::fixture(file));
    ASSERT_EQ(doc.graph.callbacks.size(), 5u);
    std::vector<Tick> got;
    for (const auto & cb : doc.graph.callbacks) {
      got.push_back(cb.wcet);
    }
    EXPECT_EQ(got, wcets) << file;
    EXPECT_EQ(doc.graph.callbacks[0].period, 25u);
    EXPECT_EQ(doc.graph.callbacks[1].period, 41u);
    EXPECT_EQ(doc.graph.callbacks[2].period, 51u);
    EXPECT_EQ(doc.graph.callbacks[3].kind, CallbackKind::kSubscription);
    EXPECT_EQ(doc.graph.callbacks[4].kind, CallbackKind::kSubscription);
  }
}

TEST(TasksetIo, EveryFixtureRoundTrips)
{
  for (const char * file : {
      "sample_app.taskset", "three_timers.taskset", "shared_topic_unit.taskset", "shared_topic_50.taskset", "shared_topic_70.taskset",
      "shared_topic_90.taskset", "harmonic_pass.taskset", "harmonic_fail.taskset"})
  {
    const auto doc = load_taskset(testing::fixture(file));
    const auto text = serialize_taskset(doc);
    EXPECT_EQ(parse_taskset(text), doc) << file;
    EXPECT_EQ(serialize_taskset(parse_taskset(text)), text) << file;
  }
}

TEST(TasksetIo, GeneratedDocumentsRoundTrip)
{
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    const auto doc = generate_taskset(p);
    EXPECT_EQ(parse_taskset(serialize_taskset(doc)), doc);
  }
}

TEST(TasksetIo, UndeclaredTopicIsNamed)
{
  const char * text = R"({"topics": [], "callbacks": [
    {"id": "t", "kind": "timer", "wcet": 1, "period": 10, "publishes": ["/ghost"]}]})";
  try {
    parse_taskset(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError & e) {
    EXPECT_NE(std::string(e.what()).find("/ghost"), std::string::npos);
    EXPECT_EQ(e.field(), "callbacks[0].publishes[0]");
  }
}

TEST(TasksetIo, UnknownFieldIsRejected)
{
  const char * text = R"({"callbacks": [
    {"id": "t", "kind": "timer", "wcet": 1, "period": 10, "priority": 3}]})";
  try {
    parse_taskset(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError & e) {
    EXPECT_EQ(e.field(), "callbacks[0].priority");
  }
  EXPECT_THROW(parse_taskset(R"({"colour": "red"})"), SchemaError);
}

TEST(TasksetIo, IllTypedFieldIsRejected)
{
  try {
    parse_taskset(R"({"callbacks": [{"id": "t", "kind": "timer", "wcet": -1, "period": 10}]})");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError & e) {
    EXPECT_EQ(e.field(), "callbacks[0].wcet");
  }
  EXPECT_THROW(parse_taskset(R"({"policy": "lottery"})"), SchemaError);
  EXPECT_THROW(parse_taskset(R"({"callbacks": [{"id": "t"}]})"), SchemaError);
  EXPECT_THROW(parse_taskset(R"({"callbacks": [{"id": "t", "kind": "cron", "wcet": 1}]})"),
    SchemaError);
}

TEST(TasksetIo, MalformedJsonReportsLineAndColumn)
{
  try {
    parse_taskset("{\n  \"policy\": \"rm\",\n  \"topics\": [,]\n}");
    FAIL() << "expected ParseError";
  } catch (const ParseError & e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 14u);
  }
}

TEST(TasksetIo, CyclesSurfaceFromParsing)
{
  const char * text = R"({"topics": ["a", "b"], "callbacks": [
    {"id": "t", "kind": "timer", "wcet": 1, "period": 10, "publishes": ["a"]},
    {"id": "x", "kind": "subscription", "wcet": 1, "subscribes": "a", "publishes": ["b"]},
    {"id": "y", "kind": "subscription", "wcet": 1, "subscribes": "b", "publishes": ["a"]}]})";
  EXPECT_THROW(parse_taskset(text), CycleError);
}

TEST(TasksetIo, FixedPrioritiesMustNameTasks)
{
  const char * text = R"({"fixed_priorities": {"nobody": 1}, "callbacks": [
    {"id": "t", "kind": "timer", "wcet": 1, "period": 10}]})";
  EXPECT_THROW(parse_taskset(text), SchemaError);
}

TEST(TasksetIo, ExecutionTimeOverridesAreChecked)
{
  const std::string head = R"({"callbacks": [
    {"id": "t", "kind": "timer", "wcet": 4, "period": 10}], "execution_times": [)";
  const auto doc =
    parse_taskset(head + R"({"task": "t", "callback": "t", "job": 2, "time": 3}]})");
  EXPECT_EQ(execution_times_of(doc).at({"t", "t", 2}), 3u);
  EXPECT_THROW(
    parse_taskset(head + R"({"task": "t", "callback": "t", "job": 2, "time": 5}]})"),
    SchemaError);
  EXPECT_THROW(
    parse_taskset(head + R"({"task": "t", "callback": "u", "job": 2, "time": 1}]})"),
    SchemaError);
}

TEST(TasksetIo, HorizonDefaultsToHyperperiod)
{
  auto doc = load_taskset(testing::fixture("shared_topic_50.taskset"));
  const Forest f = unfold(doc.graph);
  EXPECT_EQ(default_horizon(doc, f), 52275u);
  doc.horizon = 100;
  EXPECT_EQ(default_horizon(doc, f), 100u);
}

ScheduleTrace sample_trace()
{
  const auto doc = load_taskset(testing::fixture("harmonic_fail.taskset"));
  const Forest f = unfold(doc.graph);
  const auto policy = make_policy(doc.policy, f, doc.fixed_priorities);
  RunExtras extras;
  extras.snapshot_at = 2;
  return simulate_two_queue(f, policy, DdsOrder::kFifo, 400, extras);
}

TEST(TraceIo, SerializationRoundTrips)
{
  const auto trace = sample_trace();
  ASSERT_TRUE(trace.snapshot.has_value());
  ASSERT_FALSE(trace.mismatches.empty());
  const auto text = serialize_trace(trace);
  const auto back = parse_trace(text);
  EXPECT_EQ(back, trace);
  EXPECT_EQ(serialize_trace(back), text);
}

TEST(TraceIo, DefaultExecutorTraceRoundTrips)
{
  const auto trace = simulate_default_executor(unfold(testing::three_timers()), 30);
  EXPECT_EQ(parse_trace(serialize_trace(trace)), trace);
}

TEST(TraceIo, SegmentsSectionIsPlainCsv)
{
  const auto text = serialize_trace(simulate_fifo_events(unfold(testing::three_timers()), 30));
  EXPECT_NE(
    text.find("[segments]\nstart,end,task,subtask,job,priority,priority_class,priority_job\n"
    "0,3,tau1,tau1@0,0,"),
    std::string::npos);
}

TEST(TraceIo, MalformedTraceIsRejected)
{
  EXPECT_THROW(parse_trace("not a trace"), ParseError);
  auto text = serialize_trace(sample_trace());
  text.replace(text.find("[segments]\n") + 11, 0, "header\n1,2\n");
  EXPECT_THROW(parse_trace(text), ParseError);
}

TEST(GanttSvg, OneBarPerSegmentWithLinearExtents)
{
  const auto trace = sample_trace();
  const auto svg = render_gantt_svg(trace);
  const std::regex bar(
    R"re(<rect class="segment" x="([0-9.]+)" y="[0-9.]+" width="([0-9.]+)"[^>]*data-start="(\d+)" data-end="(\d+)")re");
  const std::regex scale_re(R"re(data-scale="([0-9.]+)" data-origin="([0-9.]+)")re");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(svg, m, scale_re));
  const double scale = std::stod(m[1]);
  const double origin = std::stod(m[2]);
  std::size_t bars = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), bar); it != std::sregex_iterator();
    ++it, ++bars)
  {
    const auto & s = trace.segments.at(bars);
    EXPECT_EQ(std::stoull((*it)[3]), s.start);
    EXPECT_EQ(std::stoull((*it)[4]), s.end);
    EXPECT_NEAR(std::stod((*it)[1]), origin + scale * static_cast<double>(s.start), 1e-3);
    EXPECT_NEAR(std::stod((*it)[2]), scale * static_cast<double>(s.end - s.start), 1e-3);
  }
  EXPECT_EQ(bars, trace.segments.size());
}

TEST(GanttSvg, PollingPointsAreDrawn)
{
  const auto svg = render_gantt_svg(simulate_default_executor(unfold(testing::three_timers()), 30));
  std::size_t lines = 0;
  for (auto pos = svg.find("class=\"polling-point\""); pos != std::string::npos;
    pos = svg.find("class=\"polling-point\"", pos + 1))
  {
    ++lines;
  }
  EXPECT_EQ(lines, 2u);
}

}  // namespace
}  // namespace rosched
