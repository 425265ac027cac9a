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

#ifndef ROSCHED__TASKSET_IO_HPP_
#define ROSCHED__TASKSET_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rosched/executors.hpp"
#include "rosched/graph_model.hpp"
#include "rosched/scheduling_core.hpp"
#include "rosched/trace.hpp"

namespace rosched
{

struct ExecutionOverride
{
  std::string task;
  std::string callback;
  JobIndex job = 0;
  Tick time = 0;

  bool operator==(const ExecutionOverride &) const = default;
};

/// A taskset file: the application graph plus how to run it.
struct TasksetDocument
{
  std::string tick_unit = "100us";
  AppGraph graph;
  PolicyKind policy = PolicyKind::kRM;
  DdsOrder dds_order = DdsOrder::kLifo;
  std::optional<Tick> horizon;
  FixedAssignments fixed_priorities;
  std::vector<ExecutionOverride> execution_times;
  /// Generator seed, when the document was produced by generate_taskset.
  std::optional<std::uint64_t> seed;

  bool operator==(const TasksetDocument &) const = default;
};

/// Parses and validates a taskset. Throws ParseError (with line/column) on malformed
/// JSON, SchemaError on unknown or ill-typed fields, CycleError on dependency loops.
TasksetDocument parse_taskset(std::string_view text);

/// Canonical form: fixed key order, only the fields meaningful for each callback kind.
std::string serialize_taskset(const TasksetDocument & doc);

TasksetDocument load_taskset(const std::filesystem::path & path);

/// Override table for the simulators. Throws SchemaError on unknown task or callback
/// names and on times outside [1, wcet].
ExecutionTimes execution_times_of(const TasksetDocument & doc);

/// Horizon from the document, else one hyperperiod. Throws SchemaError if neither exists.
Tick default_horizon(const TasksetDocument & doc, const Forest & forest);

/// Canonical text form of a trace; equal traces give byte-identical output.
std::string serialize_trace(const ScheduleTrace & trace);
ScheduleTrace parse_trace(std::string_view text);

/// Gantt chart with one <rect class="segment"> per trace segment, one row per task.
std::string render_gantt_svg(const ScheduleTrace & trace);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::string_view contents);

}  // namespace rosched

#endif  // ROSCHED__TASKSET_IO_HPP_
