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

#include "rosched/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace rosched
{

namespace
{

Tick checked_lcm(Tick a, Tick b)
{
  const Tick g = std::gcd(a, b);
  const Tick q = a / g;
  if (b != 0 && q > std::numeric_limits<Tick>::max() / b) {
    throw Error("hyperperiod overflows 64-bit ticks");
  }
  return q * b;
}

void require_periodic(const Forest & forest)
{
  for (const auto & tree : forest.trees) {
    if (tree.activation != Activation::kPeriodic) {
      throw SporadicTask("task '" + tree.name + "' is sporadic");
    }
  }
}

}  // namespace

Tick hyperperiod(const Forest & forest)
{
  require_periodic(forest);
  Tick h = 1;
  for (const auto & tree : forest.trees) {
    h = checked_lcm(h, tree.period);
  }
  return h;
}

double utilization(const Forest & forest)
{
  require_periodic(forest);
  double u = 0.0;
  for (const auto & tree : forest.trees) {
    u += static_cast<double>(tree.total_work()) / static_cast<double>(tree.period);
  }
  return u;
}

ResponseTimeReport response_times(
  const ScheduleTrace & trace, const Forest & forest, double percentile)
{
  struct Progress
  {
    std::size_t done = 0;
    Tick completion = 0;
  };
  std::map<std::pair<std::size_t, JobIndex>, Progress> progress;
  for (const auto & s : trace.segments) {
    auto & p = progress[{s.instance.task, s.instance.job}];
    ++p.done;
    p.completion = std::max(p.completion, s.end);
  }

  // Every job whose root was released inside the horizon.
  std::set<std::pair<std::size_t, JobIndex>> released;
  for (const auto & r : trace.releases) {
    if (r.instance.node == 0) {
      released.insert({r.instance.task, r.instance.job});
    }
  }
  for (const auto & d : trace.drops) {
    released.insert({d.task, d.job});
  }

  ResponseTimeReport report;
  report.percentile_level = percentile;
  for (const auto & tree : forest.trees) {
    TaskResponse tr;
    tr.task = tree.name;
    for (auto it = released.lower_bound({tree.index, 0});
      it != released.end() && it->first == tree.index; ++it)
    {
      auto p = progress.find(*it);
      if (p == progress.end() || p->second.done < tree.nodes.size()) {
        ++tr.incomplete;
        continue;
      }
      const Tick release = *tree.release_time(it->second);
      JobResponse jr{it->second, release, p->second.completion, p->second.completion - release};
      if (jr.completion > release + tree.relative_deadline) {
        report.deadline_misses.push_back(
          {tree.name, jr.job, jr.completion - release - tree.relative_deadline});
      }
      tr.jobs.push_back(jr);
    }
    if (!tr.jobs.empty()) {
      std::vector<Tick> sorted;
      double sum = 0.0;
      for (const auto & j : tr.jobs) {
        sorted.push_back(j.response);
        sum += static_cast<double>(j.response);
      }
      std::sort(sorted.begin(), sorted.end());
      tr.max = sorted.back();
      tr.mean = sum / static_cast<double>(sorted.size());
      // Nearest rank; the epsilon keeps exact products such as 90% of 10 from rounding up.
      auto rank = static_cast<std::size_t>(
        std::ceil(percentile * static_cast<double>(sorted.size()) / 100.0 - 1e-9));
      rank = std::clamp<std::size_t>(rank, 1, sorted.size());
      tr.percentile = sorted[rank - 1];
    }
    report.tasks.push_back(std::move(tr));
  }
  return report;
}

ResponseBounds observed_bounds(const ScheduleTrace & trace, const Forest & forest)
{
  std::map<InstanceId, Tick> eligible;
  for (const auto & r : trace.releases) {
    eligible[r.instance] = r.eligibility;
  }
  ResponseBounds out;
  for (const auto & s : trace.segments) {
    auto it = eligible.find(s.instance);
    if (it == eligible.end()) {
      continue;
    }
    const auto & cb = forest.trees[s.instance.task].node(s.instance.node).callback;
    auto & bound = out[cb];
    bound = std::max(bound, s.end - it->second);
  }
  return out;
}

bool HarmonicCheckResult::pass() const
{
  return std::all_of(
    subscriptions.begin(), subscriptions.end(),
    [](const SubscriptionCheck & s) {return s.pass;});
}

namespace
{

Tick bound_of(const ResponseBounds & bounds, const std::string & id)
{
  auto it = bounds.find(id);
  if (it == bounds.end()) {
    throw MissingBound("no response-time bound for '" + id + "'");
  }
  return it->second;
}

std::optional<HarmonicViolation> check_pair(
  const TreeTask & a, const TreeTask & b, Tick r_a, Tick r_b, Tick r_c)
{
  const Tick t_a = a.period;
  const Tick t_b = b.period;
  if (std::max(t_a, t_b) % std::min(t_a, t_b) != 0) {
    HarmonicViolation v{a.name, b.name, 0, a.phase, b.phase, t_a, t_b};
    return v;
  }
  const Tick span = std::max(a.phase, b.phase) + checked_lcm(t_a, t_b);
  for (Tick rel_a = a.phase; rel_a < span; rel_a += t_a) {
    Tick rel_b = b.phase;
    if (rel_a > b.phase) {
      rel_b = b.phase + (rel_a - b.phase + t_b - 1) / t_b * t_b;
    }
    if (rel_b >= rel_a + t_a) {
      continue;
    }
    if (rel_a + r_a + r_c > rel_b) {
      return HarmonicViolation{a.name, b.name, 1, rel_a, rel_b, rel_a + r_a + r_c, rel_b};
    }
    if (rel_b + r_b + r_c > rel_a + t_a) {
      return HarmonicViolation{a.name, b.name, 2, rel_a, rel_b, rel_b + r_b + r_c, rel_a + t_a};
    }
  }
  return std::nullopt;
}

}  // namespace

HarmonicCheckResult check_harmonic_condition(const Forest & forest, const ResponseBounds & bounds)
{
  // Distinct forest nodes feeding each (topic, subscriber) queue.
  std::map<DdsQueueKey, std::vector<std::pair<std::size_t, NodeId>>> feeders;
  for (const auto & tree : forest.trees) {
    for (const auto & n : tree.nodes) {
      if (n.parent) {
        feeders[{n.topic, n.callback}].push_back({tree.index, *n.parent});
      }
    }
  }

  HarmonicCheckResult result;
  for (const auto & [queue, parents] : feeders) {
    SubscriptionCheck check;
    check.queue = queue;
    for (const auto & [tree, node] : parents) {
      check.parents.push_back(forest.trees[tree].node(node).callback);
    }
    if (parents.size() > 1) {
      for (const auto & [tree, node] : parents) {
        const auto & t = forest.trees[tree];
        if (node != 0 || t.activation != Activation::kPeriodic) {
          throw NotPeriodic(
            "parent '" + t.node(node).callback + "' of '" + queue.subscriber +
            "' is not a strictly periodic root");
        }
      }
      const Tick r_c = bound_of(bounds, queue.subscriber);
      for (std::size_t i = 0; i < parents.size() && check.pass; ++i) {
        for (std::size_t j = 0; j < parents.size() && check.pass; ++j) {
          if (i == j) {
            continue;
          }
          const auto & a = forest.trees[parents[i].first];
          const auto & b = forest.trees[parents[j].first];
          auto v = check_pair(a, b, bound_of(bounds, a.name), bound_of(bounds, b.name), r_c);
          if (v) {
            check.pass = false;
            check.violation = v;
          }
        }
      }
    }
    result.subscriptions.push_back(std::move(check));
  }
  return result;
}

std::map<DdsQueueKey, std::size_t> max_dds_depth(const ScheduleTrace & trace)
{
  std::map<DdsQueueKey, std::size_t> depth;
  std::map<DdsQueueKey, std::size_t> peak;
  for (const auto & e : trace.dds_events) {
    auto & d = depth[e.queue];
    if (e.action == DdsAction::kEnqueue) {
      ++d;
    } else if (d > 0) {
      --d;
    }
    auto & p = peak[e.queue];
    p = std::max(p, d);
  }
  return peak;
}

}  // namespace rosched
