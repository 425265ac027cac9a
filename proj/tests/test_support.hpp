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

#ifndef ROSCHED__TEST_SUPPORT_HPP_
#define ROSCHED__TEST_SUPPORT_HPP_

#include <string>
#include <vector>

#include "rosched/graph_model.hpp"
#include "rosched/taskset_io.hpp"

namespace rosched::testing
{

inline std::string fixture(const std::string & name)
{
  return std::string(ROSCHED_FIXTURE_DIR) + "/" + name;
}

inline CallbackSpec timer(
  const std::string & id, Tick wcet, Tick period, Tick phase = 0,
  std::vector<std::string> publishes = {})
{
  CallbackSpec cb;
  cb.id = id;
  cb.kind = CallbackKind::kTimer;
  cb.wcet = wcet;
  cb.period = period;
  cb.phase = phase;
  cb.published_topics = std::move(publishes);
  return cb;
}

inline CallbackSpec subscription(
  const std::string & id, Tick wcet, const std::string & topic,
  std::vector<std::string> publishes = {})
{
  CallbackSpec cb;
  cb.id = id;
  cb.kind = CallbackKind::kSubscription;
  cb.wcet = wcet;
  cb.subscribed_topic = topic;
  cb.published_topics = std::move(publishes);
  return cb;
}

inline CallbackSpec sporadic(
  const std::string & id, Tick wcet, Tick min_interarrival, std::vector<Tick> arrivals,
  std::vector<std::string> publishes = {})
{
  CallbackSpec cb;
  cb.id = id;
  cb.kind = CallbackKind::kExternalSporadic;
  cb.wcet = wcet;
  cb.min_interarrival = min_interarrival;
  cb.arrivals = std::move(arrivals);
  cb.published_topics = std::move(publishes);
  return cb;
}

/// Fig. 2 style taskset: tau1 (T=10, C=3), tau2 (T=30, C=10), tau3 (T=30, C=10).
inline AppGraph three_timers()
{
  AppGraph g;
  g.callbacks = {timer("tau1", 3, 10), timer("tau2", 10, 30), timer("tau3", 10, 30)};
  return g;
}

struct SimpleSegment
{
  std::string task;
  Tick start;
  Tick end;

  bool operator==(const SimpleSegment &) const = default;
};

inline std::vector<SimpleSegment> simple_segments(const ScheduleTrace & t)
{
  std::vector<SimpleSegment> out;
  for (const auto & s : t.segments) {
    out.push_back({t.tasks[s.instance.task].node_callbacks[s.instance.node], s.start, s.end});
  }
  return out;
}

}  // namespace rosched::testing

#endif  // ROSCHED__TEST_SUPPORT_HPP_
