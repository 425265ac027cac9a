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

#ifndef ROSCHED__GENERATE_HPP_
#define ROSCHED__GENERATE_HPP_

#include <cstdint>
#include <vector>

#include "rosched/taskset_io.hpp"

namespace rosched
{

struct GeneratorParams
{
  std::uint64_t seed = 1;
  std::size_t min_trees = 1;
  std::size_t max_trees = 6;
  /// Maximum number of subtasks on a root-to-leaf path of any unfolded tree.
  std::size_t max_depth = 4;
  /// Maximum number of children of any unfolded node.
  std::size_t max_fanout = 3;
  std::vector<Tick> periods = {100, 200, 250, 400, 500, 1000};
  /// Target total utilization is drawn uniformly from [min_utilization, max_utilization].
  double min_utilization = 0.3;
  double max_utilization = 0.95;
  /// Probability that a publisher also publishes an existing topic of the next level.
  double shared_topic_probability = 0.25;
  /// Probability that a timer gets a constrained deadline below its period.
  double constrained_deadline_probability = 0.3;
  /// Probability that a timer gets a nonzero phase.
  double phase_probability = 0.5;
};

/// Draws a random periodic application graph. The same parameters always give the
/// same document; the seed is recorded in it. Throws Error if no graph within the
/// bounds reaches the utilization cap.
TasksetDocument generate_taskset(const GeneratorParams & params);

}  // namespace rosched

#endif  // ROSCHED__GENERATE_HPP_
