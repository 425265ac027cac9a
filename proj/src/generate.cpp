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

#include "rosched/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rosched/analysis.hpp"

namespace rosched
{

namespace
{

class Draw
{
public:
  explicit Draw(std::uint64_t seed)
  : rng_(seed) {}

  std::size_t between(std::size_t lo, std::size_t hi)
  {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  Tick ticks(Tick lo, Tick hi)
  {
    return std::uniform_int_distribution<Tick>(lo, hi)(rng_);
  }

  double real(double lo, double hi)
  {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  bool chance(double p) {return std::bernoulli_distribution(p)(rng_);}

private:
  std::mt19937_64 rng_;
};

void check_params(const GeneratorParams & p)
{
  if (p.min_trees == 0 || p.min_trees > p.max_trees) {
    throw Error("tree count bounds must satisfy 1 <= min <= max");
  }
  if (p.max_depth == 0 || p.max_fanout == 0) {
    throw Error("depth and fan-out bounds must be positive");
  }
  if (p.periods.empty() || std::find(p.periods.begin(), p.periods.end(), 0) != p.periods.end()) {
    throw Error("period set must be non-empty and positive");
  }
  if (!(p.min_utilization > 0.0 && p.min_utilization <= p.max_utilization &&
    p.max_utilization <= 1.0))
  {
    throw Error("utilization bounds must satisfy 0 < min <= max <= 1");
  }
}

// One attempt at a graph shape. Subscriptions are layered: every publisher of a topic
// sits on the same level, so all copies of a subscription have the same depth.
AppGraph draw_shape(const GeneratorParams & p, Draw & draw)
{
  AppGraph g;
  const std::size_t trees = draw.between(p.min_trees, p.max_trees);
  const std::size_t depth = draw.between(1, p.max_depth);

  std::vector<std::vector<std::size_t>> levels(1);
  for (std::size_t i = 0; i < trees; ++i) {
    CallbackSpec cb;
    cb.id = "timer_" + std::to_string(i);
    cb.kind = CallbackKind::kTimer;
    cb.period = p.periods[draw.between(0, p.periods.size() - 1)];
    if (draw.chance(p.phase_probability)) {
      cb.phase = draw.ticks(0, cb.period - 1);
    }
    if (draw.chance(p.constrained_deadline_probability)) {
      cb.relative_deadline = draw.ticks((cb.period + 1) / 2, cb.period);
    }
    levels[0].push_back(g.callbacks.size());
    g.callbacks.push_back(std::move(cb));
  }

  std::vector<std::size_t> fanout(trees, 0);
  for (std::size_t level = 1; level < depth; ++level) {
    levels.emplace_back();
    struct LevelTopic
    {
      std::string name;
      std::size_t subscribers;
    };
    std::vector<LevelTopic> topics;
    for (std::size_t pub : levels[level - 1]) {
      std::size_t budget = p.max_fanout - fanout[pub];
      if (!topics.empty() && budget > 0 && draw.chance(p.shared_topic_probability)) {
        const auto & t = topics[draw.between(0, topics.size() - 1)];
        auto & published = g.callbacks[pub].published_topics;
        if (t.subscribers <= budget &&
          std::find(published.begin(), published.end(), t.name) == published.end())
        {
          published.push_back(t.name);
          fanout[pub] += t.subscribers;
          budget -= t.subscribers;
        }
      }
      if (budget == 0 || !draw.chance(0.7)) {
        continue;
      }
      const std::size_t subs = draw.between(1, budget);
      const std::string topic =
        "topic_" + std::to_string(level) + "_" + std::to_string(topics.size());
      g.topics.push_back(topic);
      g.callbacks[pub].published_topics.push_back(topic);
      fanout[pub] += subs;
      topics.push_back({topic, subs});
      for (std::size_t s = 0; s < subs; ++s) {
        CallbackSpec cb;
        cb.id = "sub_" + std::to_string(level) + "_" + std::to_string(levels[level].size());
        cb.kind = CallbackKind::kSubscription;
        cb.subscribed_topic = topic;
        levels[level].push_back(g.callbacks.size());
        g.callbacks.push_back(std::move(cb));
        fanout.push_back(0);
      }
    }
    if (levels[level].empty()) {
      break;
    }
  }
  return g;
}

}  // namespace

TasksetDocument generate_taskset(const GeneratorParams & params)
{
  check_params(params);
  Draw draw(params.seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    AppGraph g = draw_shape(params, draw);
    for (auto & cb : g.callbacks) {
      cb.wcet = draw.ticks(1, 10);
    }
    const double target = draw.real(params.min_utilization, params.max_utilization);
    const double raw = utilization(unfold(g));
    for (auto & cb : g.callbacks) {
      cb.wcet = std::max<Tick>(
        1, static_cast<Tick>(std::llround(static_cast<double>(cb.wcet) * target / raw)));
    }
    double u = utilization(unfold(g));
    while (u > params.max_utilization) {
      auto largest = std::max_element(
        g.callbacks.begin(), g.callbacks.end(),
        [](const CallbackSpec & a, const CallbackSpec & b) {return a.wcet < b.wcet;});
      if (largest->wcet == 1) {
        break;
      }
      --largest->wcet;
      u = utilization(unfold(g));
    }
    if (u > params.max_utilization) {
      continue;
    }
    require_valid(g);
    TasksetDocument doc;
    doc.graph = std::move(g);
    doc.seed = params.seed;
    return doc;
  }
  throw Error(
    "no graph within the bounds meets utilization " + std::to_string(params.max_utilization));
}

}  // namespace rosched
