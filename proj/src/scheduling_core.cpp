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

#include "rosched/scheduling_core.hpp"

#include <stdexcept>

namespace rosched
{

std::string to_string(const PriorityKey & key)
{
  return std::to_string(key.primary) + "/" + std::to_string(key.tiebreak_class) + "/" +
         std::to_string(key.job);
}

std::string_view to_string(PolicyKind kind)
{
  switch (kind) {
    case PolicyKind::kRM:
      return "rm";
    case PolicyKind::kEDF:
      return "edf";
    case PolicyKind::kFixed:
      return "fixed";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view text)
{
  if (text == "rm") {
    return PolicyKind::kRM;
  }
  if (text == "edf") {
    return PolicyKind::kEDF;
  }
  if (text == "fixed") {
    return PolicyKind::kFixed;
  }
  throw SchemaError("policy", "unknown policy '" + std::string(text) + "'");
}

Job make_job(const TreeTask & task, JobIndex index)
{
  auto release = task.release_time(index);
  if (!release) {
    throw Error("task '" + task.name + "' has no job " + std::to_string(index));
  }
  Job job;
  job.task = task.index;
  job.task_name = task.name;
  job.index = index;
  job.release_time = *release;
  job.absolute_deadline = *release + task.relative_deadline;
  job.period = task.period;
  return job;
}

PriorityKey PriorityPolicy::priority_of(const Job & job) const
{
  PriorityKey key;
  key.tiebreak_class = job.task;
  key.job = job.index;
  switch (kind_) {
    case PolicyKind::kRM:
      key.primary = static_cast<std::int64_t>(job.period);
      break;
    case PolicyKind::kEDF:
      key.primary = static_cast<std::int64_t>(job.absolute_deadline);
      break;
    case PolicyKind::kFixed: {
        auto it = assignments_.find(job.task_name);
        if (it == assignments_.end()) {
          throw MissingAssignment("no fixed priority for task '" + job.task_name + "'");
        }
        key.primary = it->second;
        break;
      }
  }
  return key;
}

PriorityPolicy make_policy(
  PolicyKind kind, const Forest & forest, const FixedAssignments & assignments)
{
  if (kind == PolicyKind::kFixed) {
    for (const auto & tree : forest.trees) {
      if (!assignments.count(tree.name)) {
        throw MissingAssignment("no fixed priority for task '" + tree.name + "'");
      }
    }
  }
  return PriorityPolicy(kind, kind == PolicyKind::kFixed ? assignments : FixedAssignments{});
}

void SubtaskInstance::advance(InstanceState next)
{
  if (static_cast<int>(next) != static_cast<int>(state) + 1) {
    throw std::logic_error("non-monotone subtask instance state transition");
  }
  state = next;
}

}  // namespace rosched
