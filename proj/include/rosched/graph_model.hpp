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

#ifndef ROSCHED__GRAPH_MODEL_HPP_
#define ROSCHED__GRAPH_MODEL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosched/types.hpp"

namespace rosched
{

enum class CallbackKind
{
  kTimer,
  kSubscription,
  kExternalSporadic,
};

std::string_view to_string(CallbackKind kind);

/// One callback of the application. Which fields are meaningful depends on `kind`.
struct CallbackSpec
{
  std::string id;
  CallbackKind kind = CallbackKind::kTimer;
  Tick wcet = 0;
  // timer
  Tick period = 0;
  Tick phase = 0;
  // external_sporadic
  Tick min_interarrival = 0;
  std::vector<Tick> arrivals;
  // subscription
  std::string subscribed_topic;
  std::vector<std::string> published_topics;
  // roots only; defaults to period / min_interarrival
  std::optional<Tick> relative_deadline;

  bool is_root() const {return kind != CallbackKind::kSubscription;}

  bool operator==(const CallbackSpec &) const = default;
};

struct Edge
{
  std::string publisher;
  std::string topic;
  std::string subscriber;

  bool operator==(const Edge &) const = default;
};

/// The declared publish/subscribe graph. Callback order is declaration order and
/// determines task indices, tie-breaks and sibling order after unfolding.
struct AppGraph
{
  std::vector<CallbackSpec> callbacks;
  std::vector<std::string> topics;

  const CallbackSpec * find(std::string_view id) const;

  /// Subscribers of `topic`, in declaration order.
  std::vector<const CallbackSpec *> subscribers_of(std::string_view topic) const;

  /// All (publisher, topic, subscriber) triples, ordered by publisher declaration,
  /// then published-topic order, then subscriber declaration.
  std::vector<Edge> edges() const;

  bool operator==(const AppGraph &) const = default;
};

struct ValidationReport
{
  bool ok = true;
  /// Callback ids along the offending cycle, in edge order.
  std::vector<std::string> cycle;
  /// Dotted path of the invalid field, e.g. "callbacks[2].period".
  std::string field;
  std::string message;

  explicit operator bool() const {return ok;}
};

ValidationReport validate(const AppGraph & graph);

/// Throws CycleError or SchemaError when validate() reports a problem.
void require_valid(const AppGraph & graph);

enum class Activation
{
  kPeriodic,
  kSporadic,
};

struct TreeNode
{
  NodeId id = 0;
  std::string callback;
  Tick wcet = 0;
  std::optional<NodeId> parent;
  /// Declared edge order: parent's published topics in order, subscribers in declaration order.
  std::vector<NodeId> children;
  /// Topic over which this node was triggered; empty for the root.
  std::string topic;
  std::size_t depth = 1;
};

/// A recurrent tree task. nodes[0] is the root; ids are preorder indices.
struct TreeTask
{
  std::string name;
  std::size_t index = 0;
  std::vector<TreeNode> nodes;
  Tick period = 0;              // period, or minimum inter-arrival time
  Tick relative_deadline = 0;
  Tick phase = 0;
  Activation activation = Activation::kPeriodic;
  std::vector<Tick> arrivals;   // sporadic only

  const TreeNode & root() const {return nodes.front();}
  const TreeNode & node(NodeId id) const {return nodes.at(id);}
  Tick total_work() const;
  std::size_t depth() const;

  /// Release tick of job `job`, or nullopt if a sporadic task has no such arrival.
  std::optional<Tick> release_time(JobIndex job) const;

  /// Child of `parent` for `subscriber` triggered over `topic`, if any.
  std::optional<NodeId> child_for(NodeId parent, std::string_view subscriber,
    std::string_view topic) const;
};

/// Where a forest node came from in the AppGraph.
struct Provenance
{
  std::size_t tree = 0;
  NodeId node = 0;
  std::string callback;
  /// Incoming edge; both empty for roots.
  std::string publisher;
  std::string topic;
};

struct Forest
{
  std::vector<TreeTask> trees;
  /// Every callback id of the source graph in declaration order.
  std::vector<std::string> callback_order;

  std::size_t node_count() const;
  std::vector<Provenance> provenance() const;
  /// Number of forest nodes per originating callback.
  std::map<std::string, std::size_t> duplication_counts() const;
  /// Stable 64-bit FNV-1a digest of the canonical forest description.
  std::uint64_t hash() const;
  std::string describe() const;
  bool all_periodic() const;
};

/// Unfolds a validated graph into one tree per timer / external_sporadic callback,
/// duplicating each subscription once per distinct root path.
Forest unfold(const AppGraph & graph);

}  // namespace rosched

#endif  // ROSCHED__GRAPH_MODEL_HPP_
