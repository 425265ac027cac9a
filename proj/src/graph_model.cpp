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

#include "rosched/graph_model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace rosched
{

std::string_view to_string(CallbackKind kind)
{
  switch (kind) {
    case CallbackKind::kTimer:
      return "timer";
    case CallbackKind::kSubscription:
      return "subscription";
    case CallbackKind::kExternalSporadic:
      return "external_sporadic";
  }
  return "unknown";
}

const CallbackSpec * AppGraph::find(std::string_view id) const
{
  auto it = std::find_if(
    callbacks.begin(), callbacks.end(), [&](const CallbackSpec & c) {return c.id == id;});
  return it == callbacks.end() ? nullptr : &*it;
}

std::vector<const CallbackSpec *> AppGraph::subscribers_of(std::string_view topic) const
{
  std::vector<const CallbackSpec *> out;
  for (const auto & cb : callbacks) {
    if (cb.kind == CallbackKind::kSubscription && cb.subscribed_topic == topic) {
      out.push_back(&cb);
    }
  }
  return out;
}

std::vector<Edge> AppGraph::edges() const
{
  std::vector<Edge> out;
  for (const auto & pub : callbacks) {
    for (const auto & topic : pub.published_topics) {
      for (const auto * sub : subscribers_of(topic)) {
        out.push_back({pub.id, topic, sub->id});
      }
    }
  }
  return out;
}

namespace
{

ValidationReport schema_failure(std::string field, std::string message)
{
  ValidationReport r;
  r.ok = false;
  r.field = std::move(field);
  r.message = std::move(message);
  return r;
}

// Identifiers end up in comma-separated trace files and instance labels.
bool valid_identifier(const std::string & id)
{
  return !id.empty() && std::all_of(
    id.begin(), id.end(), [](unsigned char c) {
      return std::isalnum(c) || c == '_' || c == '-' || c == '/' || c == '.' || c == ':';
    });
}

std::optional<ValidationReport> check_callback(
  const AppGraph & graph, const CallbackSpec & cb, std::size_t index)
{
  const std::string at = "callbacks[" + std::to_string(index) + "]";
  const std::set<std::string> topics(graph.topics.begin(), graph.topics.end());

  if (!valid_identifier(cb.id)) {
    return schema_failure(
      at + ".id", "callback id '" + cb.id + "' must be non-empty [A-Za-z0-9_./:-]");
  }
  if (cb.wcet == 0) {
    return schema_failure(at + ".wcet", "callback '" + cb.id + "' must have wcet > 0");
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < cb.published_topics.size(); ++i) {
    const auto & t = cb.published_topics[i];
    const std::string f = at + ".publishes[" + std::to_string(i) + "]";
    if (!topics.count(t)) {
      return schema_failure(f, "callback '" + cb.id + "' publishes to undeclared topic '" + t + "'");
    }
    if (!seen.insert(t).second) {
      return schema_failure(f, "callback '" + cb.id + "' publishes to topic '" + t + "' twice");
    }
  }

  switch (cb.kind) {
    case CallbackKind::kTimer:
      if (cb.period == 0) {
        return schema_failure(at + ".period", "timer '" + cb.id + "' must have period > 0");
      }
      if (!cb.subscribed_topic.empty()) {
        return schema_failure(at + ".subscribes", "timer '" + cb.id + "' cannot subscribe");
      }
      if (cb.min_interarrival != 0 || !cb.arrivals.empty()) {
        return schema_failure(
          at + ".arrivals", "timer '" + cb.id + "' cannot declare sporadic arrivals");
      }
      break;
    case CallbackKind::kSubscription:
      if (cb.subscribed_topic.empty()) {
        return schema_failure(
          at + ".subscribes", "subscription '" + cb.id + "' must subscribe to one topic");
      }
      if (!topics.count(cb.subscribed_topic)) {
        return schema_failure(
          at + ".subscribes", "subscription '" + cb.id + "' subscribes to undeclared topic '" +
          cb.subscribed_topic + "'");
      }
      if (cb.period != 0 || cb.phase != 0 || cb.min_interarrival != 0 || !cb.arrivals.empty()) {
        return schema_failure(
          at + ".period", "subscription '" + cb.id + "' cannot declare activation timing");
      }
      if (cb.relative_deadline) {
        return schema_failure(
          at + ".deadline", "subscription '" + cb.id + "' cannot declare a deadline");
      }
      break;
    case CallbackKind::kExternalSporadic:
      if (cb.min_interarrival == 0) {
        return schema_failure(
          at + ".min_interarrival", "sporadic '" + cb.id + "' must have min_interarrival > 0");
      }
      if (!cb.subscribed_topic.empty()) {
        return schema_failure(at + ".subscribes", "sporadic '" + cb.id + "' cannot subscribe");
      }
      if (cb.period != 0 || cb.phase != 0) {
        return schema_failure(at + ".period", "sporadic '" + cb.id + "' cannot declare a period");
      }
      for (std::size_t i = 1; i < cb.arrivals.size(); ++i) {
        if (cb.arrivals[i] < cb.arrivals[i - 1] + cb.min_interarrival) {
          return schema_failure(
            at + ".arrivals[" + std::to_string(i) + "]",
            "sporadic '" + cb.id + "' arrivals must be sorted and at least min_interarrival apart");
        }
      }
      break;
  }

  if (cb.relative_deadline) {
    const Tick bound = cb.kind == CallbackKind::kTimer ? cb.period : cb.min_interarrival;
    if (*cb.relative_deadline == 0 || *cb.relative_deadline > bound) {
      return schema_failure(
        at + ".deadline", "callback '" + cb.id + "' needs 0 < deadline <= period");
    }
  }
  return std::nullopt;
}

// Depth-first search with colours; returns the first cycle found in declaration order.
std::vector<std::string> find_cycle(const AppGraph & graph)
{
  std::unordered_map<std::string, std::vector<std::string>> succ;
  for (const auto & e : graph.edges()) {
    succ[e.publisher].push_back(e.subscriber);
  }
  enum class Colour { kWhite, kGrey, kBlack };
  std::unordered_map<std::string, Colour> colour;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;

  std::function<bool(const std::string &)> visit = [&](const std::string & id) {
      colour[id] = Colour::kGrey;
      stack.push_back(id);
      for (const auto & next : succ[id]) {
        if (colour[next] == Colour::kGrey) {
          auto from = std::find(stack.begin(), stack.end(), next);
          cycle.assign(from, stack.end());
          return true;
        }
        if (colour[next] == Colour::kWhite && visit(next)) {
          return true;
        }
      }
      stack.pop_back();
      colour[id] = Colour::kBlack;
      return false;
    };

  for (const auto & cb : graph.callbacks) {
    if (colour[cb.id] == Colour::kWhite && visit(cb.id)) {
      break;
    }
  }
  return cycle;
}

}  // namespace

ValidationReport validate(const AppGraph & graph)
{
  std::set<std::string> topic_ids;
  for (std::size_t i = 0; i < graph.topics.size(); ++i) {
    if (!valid_identifier(graph.topics[i])) {
      return schema_failure(
        "topics[" + std::to_string(i) + "]",
        "topic '" + graph.topics[i] + "' must be non-empty [A-Za-z0-9_./:-]");
    }
    if (!topic_ids.insert(graph.topics[i]).second) {
      return schema_failure(
        "topics[" + std::to_string(i) + "]", "duplicate topic '" + graph.topics[i] + "'");
    }
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < graph.callbacks.size(); ++i) {
    if (!ids.insert(graph.callbacks[i].id).second) {
      return schema_failure(
        "callbacks[" + std::to_string(i) + "].id",
        "duplicate callback id '" + graph.callbacks[i].id + "'");
    }
    if (auto bad = check_callback(graph, graph.callbacks[i], i)) {
      return *bad;
    }
  }

  auto cycle = find_cycle(graph);
  if (!cycle.empty()) {
    ValidationReport r;
    r.ok = false;
    std::string joined;
    for (const auto & id : cycle) {
      joined += (joined.empty() ? "" : " -> ") + id;
    }
    r.message = "publish/subscribe cycle: " + joined + " -> " + cycle.front();
    r.cycle = std::move(cycle);
    return r;
  }
  return {};
}

void require_valid(const AppGraph & graph)
{
  auto report = validate(graph);
  if (report) {
    return;
  }
  if (!report.cycle.empty()) {
    throw CycleError(report.cycle, report.message);
  }
  throw SchemaError(report.field, report.message);
}

Tick TreeTask::total_work() const
{
  Tick sum = 0;
  for (const auto & n : nodes) {
    sum += n.wcet;
  }
  return sum;
}

std::size_t TreeTask::depth() const
{
  std::size_t d = 0;
  for (const auto & n : nodes) {
    d = std::max(d, n.depth);
  }
  return d;
}

std::optional<Tick> TreeTask::release_time(JobIndex job) const
{
  if (activation == Activation::kPeriodic) {
    return phase + job * period;
  }
  if (job < arrivals.size()) {
    return arrivals[job];
  }
  return std::nullopt;
}

std::optional<NodeId> TreeTask::child_for(
  NodeId parent, std::string_view subscriber, std::string_view topic) const
{
  for (NodeId c : nodes.at(parent).children) {
    if (nodes[c].callback == subscriber && nodes[c].topic == topic) {
      return c;
    }
  }
  return std::nullopt;
}

std::size_t Forest::node_count() const
{
  std::size_t n = 0;
  for (const auto & t : trees) {
    n += t.nodes.size();
  }
  return n;
}

std::vector<Provenance> Forest::provenance() const
{
  std::vector<Provenance> out;
  for (const auto & t : trees) {
    for (const auto & n : t.nodes) {
      Provenance p;
      p.tree = t.index;
      p.node = n.id;
      p.callback = n.callback;
      if (n.parent) {
        p.publisher = t.nodes[*n.parent].callback;
        p.topic = n.topic;
      }
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::map<std::string, std::size_t> Forest::duplication_counts() const
{
  std::map<std::string, std::size_t> out;
  for (const auto & t : trees) {
    for (const auto & n : t.nodes) {
      ++out[n.callback];
    }
  }
  return out;
}

std::string Forest::describe() const
{
  std::ostringstream os;
  for (const auto & t : trees) {
    os << "tree " << t.index << ' ' << t.name << ' '
       << (t.activation == Activation::kPeriodic ? "periodic" : "sporadic")
       << " T=" << t.period << " D=" << t.relative_deadline << " phi=" << t.phase;
    if (t.activation == Activation::kSporadic) {
      os << " arrivals=";
      for (std::size_t i = 0; i < t.arrivals.size(); ++i) {
        os << (i ? "," : "") << t.arrivals[i];
      }
    }
    os << '\n';
    for (const auto & n : t.nodes) {
      os << "  node " << n.id << ' ' << n.callback << " wcet=" << n.wcet << " parent=";
      if (n.parent) {
        os << *n.parent << " via " << n.topic;
      } else {
        os << '-';
      }
      os << '\n';
    }
  }
  return os.str();
}

std::uint64_t Forest::hash() const
{
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : describe()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

bool Forest::all_periodic() const
{
  return std::all_of(
    trees.begin(), trees.end(),
    [](const TreeTask & t) {return t.activation == Activation::kPeriodic;});
}

Forest unfold(const AppGraph & graph)
{
  require_valid(graph);

  Forest forest;
  for (const auto & cb : graph.callbacks) {
    forest.callback_order.push_back(cb.id);
  }
  for (const auto & cb : graph.callbacks) {
    if (!cb.is_root()) {
      continue;
    }
    TreeTask tree;
    tree.name = cb.id;
    tree.index = forest.trees.size();
    if (cb.kind == CallbackKind::kTimer) {
      tree.activation = Activation::kPeriodic;
      tree.period = cb.period;
      tree.phase = cb.phase;
    } else {
      tree.activation = Activation::kSporadic;
      tree.period = cb.min_interarrival;
      tree.arrivals = cb.arrivals;
    }
    tree.relative_deadline = cb.relative_deadline.value_or(tree.period);

    std::function<NodeId(const CallbackSpec &, std::optional<NodeId>, const std::string &,
      std::size_t)> grow = [&](const CallbackSpec & spec, std::optional<NodeId> parent,
        const std::string & topic, std::size_t depth) {
        const NodeId id = tree.nodes.size();
        tree.nodes.push_back({id, spec.id, spec.wcet, parent, {}, topic, depth});
        for (const auto & out : spec.published_topics) {
          for (const auto * sub : graph.subscribers_of(out)) {
            NodeId child = grow(*sub, id, out, depth + 1);
            tree.nodes[id].children.push_back(child);
          }
        }
        return id;
      };
    grow(cb, std::nullopt, "", 1);
    forest.trees.push_back(std::move(tree));
  }
  return forest;
}

}  // namespace rosched
