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

#include "rosched/trace.hpp"

namespace rosched
{

std::string_view to_string(DdsOrder order)
{
  return order == DdsOrder::kFifo ? "fifo" : "lifo";
}

DdsOrder parse_dds_order(std::string_view text)
{
  if (text == "fifo") {
    return DdsOrder::kFifo;
  }
  if (text == "lifo") {
    return DdsOrder::kLifo;
  }
  throw SchemaError("dds_order", "unknown DDS ordering '" + std::string(text) + "'");
}

std::string_view to_string(ExecutorKind kind)
{
  switch (kind) {
    case ExecutorKind::kDefault:
      return "default";
    case ExecutorKind::kFifoEvents:
      return "events-fifo";
    case ExecutorKind::kTwoQueue:
      return "two-queue";
    case ExecutorKind::kReference:
      return "reference";
  }
  return "unknown";
}

ExecutorKind parse_executor_kind(std::string_view text)
{
  for (auto kind : {ExecutorKind::kDefault, ExecutorKind::kFifoEvents, ExecutorKind::kTwoQueue,
      ExecutorKind::kReference})
  {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  throw SchemaError("executor", "unknown executor '" + std::string(text) + "'");
}

std::vector<TaskLabel> labels_of(const Forest & forest)
{
  std::vector<TaskLabel> out;
  for (const auto & tree : forest.trees) {
    TaskLabel label;
    label.name = tree.name;
    for (const auto & node : tree.nodes) {
      label.node_callbacks.push_back(node.callback);
    }
    out.push_back(std::move(label));
  }
  return out;
}

std::string describe(const ScheduleTrace & trace, const InstanceId & id)
{
  std::string task = "?";
  std::string callback = "?";
  if (id.task < trace.tasks.size()) {
    task = trace.tasks[id.task].name;
    if (id.node < trace.tasks[id.task].node_callbacks.size()) {
      callback = trace.tasks[id.task].node_callbacks[id.node];
    }
  }
  return task + "." + callback + "@" + std::to_string(id.node) + "#" + std::to_string(id.job);
}

}  // namespace rosched
