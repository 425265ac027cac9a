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

#ifndef ROSCHED__SCHEDULING_CORE_HPP_
#define ROSCHED__SCHEDULING_CORE_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "rosched/graph_model.hpp"
#include "rosched/types.hpp"

namespace rosched
{

/// Job-level priority. Smaller tuple means higher priority: `primary` is the
/// policy value (period, absolute deadline or user integer), `tiebreak_class`
/// the task declaration index, `job` the job index within the task.
struct PriorityKey
{
  std::int64_t primary = 0;
  std::uint64_t tiebreak_class = 0;
  JobIndex job = 0;

  auto operator<=>(const PriorityKey &) const = default;
};

/// The one comparator every scheduler uses: true if `a` has strictly higher priority.
inline bool outranks(const PriorityKey & a, const PriorityKey & b)
{
  return a < b;
}

std::string to_string(const PriorityKey & key);

enum class PolicyKind
{
  kRM,
  kEDF,
  kFixed,
};

std::string_view to_string(PolicyKind kind);
PolicyKind parse_policy_kind(std::string_view text);

/// One release of a tree task. The priority is fixed at release and shared by
/// every subtask instance of the job.
struct Job
{
  std::size_t task = 0;
  std::string task_name;
  JobIndex index = 0;
  Tick release_time = 0;
  Tick absolute_deadline = 0;
  Tick period = 0;
};

Job make_job(const TreeTask & task, JobIndex index);

using FixedAssignments = std::map<std::string, std::int64_t>;

class PriorityPolicy
{
public:
  PriorityPolicy() = default;
  PriorityPolicy(PolicyKind kind, FixedAssignments assignments)
  : kind_(kind), assignments_(std::move(assignments)) {}

  PolicyKind kind() const {return kind_;}
  const FixedAssignments & assignments() const {return assignments_;}

  PriorityKey priority_of(const Job & job) const;
  PriorityKey priority_of(const TreeTask & task, JobIndex index) const
  {
    return priority_of(make_job(task, index));
  }

private:
  PolicyKind kind_ = PolicyKind::kRM;
  FixedAssignments assignments_;
};

/// FIXED requires an assignment for every tree of `forest`.
PriorityPolicy make_policy(
  PolicyKind kind, const Forest & forest, const FixedAssignments & assignments = {});

/// Identity of one subtask instance: (tree, node, job).
struct InstanceId
{
  std::size_t task = 0;
  NodeId node = 0;
  JobIndex job = 0;

  auto operator<=>(const InstanceId &) const = default;
};

enum class InstanceState
{
  kPending,
  kEnqueued,
  kRunning,
  kDone,
};

struct SubtaskInstance
{
  InstanceId id;
  Tick eligibility_time = 0;
  PriorityKey priority;
  InstanceState state = InstanceState::kPending;

  /// Moves to `next`; throws std::logic_error on a non-monotone transition.
  void advance(InstanceState next);
};

}  // namespace rosched

#endif  // ROSCHED__SCHEDULING_CORE_HPP_
