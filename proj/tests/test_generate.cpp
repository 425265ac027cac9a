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

#include <gtest/gtest.h>

#include "rosched/analysis.hpp"
#include "rosched/generate.hpp"

namespace rosched
{
namespace
{

TEST(Generate, SameSeedSameDocument)
{
  GeneratorParams p;
  p.seed = 42;
  EXPECT_EQ(generate_taskset(p), generate_taskset(p));
  EXPECT_EQ(generate_taskset(p).seed, std::optional<std::uint64_t>(42));
  GeneratorParams q = p;
  q.seed = 43;
  EXPECT_NE(serialize_taskset(generate_taskset(p)), serialize_taskset(generate_taskset(q)));
}

TEST(Generate, RespectsBounds)
{
  std::size_t shared = 0;
  std::size_t deep = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    const auto doc = generate_taskset(p);
    const Forest f = unfold(doc.graph);
    ASSERT_GE(f.trees.size(), 1u);
    ASSERT_LE(f.trees.size(), 6u);
    EXPECT_LE(utilization(f), 0.95);
    for (const auto & t : f.trees) {
      EXPECT_LE(t.depth(), 4u);
      EXPECT_LE(t.relative_deadline, t.period);
      EXPECT_LT(t.phase, t.period);
      EXPECT_NE(std::find(p.periods.begin(), p.periods.end(), t.period), p.periods.end());
      for (const auto & n : t.nodes) {
        EXPECT_LE(n.children.size(), 3u);
      }
      deep += t.depth() == 4 ? 1 : 0;
    }
    for (const auto & [cb, count] : f.duplication_counts()) {
      shared += count > 1 ? 1 : 0;
    }
  }
  // The generator must actually exercise deep trees and shared topics.
  EXPECT_GT(deep, 50u);
  EXPECT_GT(shared, 50u);
}

TEST(Generate, TighterBoundsAreHonoured)
{
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorParams p;
    p.seed = seed;
    p.max_trees = 2;
    p.max_depth = 2;
    p.max_fanout = 1;
    p.max_utilization = 0.5;
    const Forest f = unfold(generate_taskset(p).graph);
    EXPECT_LE(f.trees.size(), 2u);
    EXPECT_LE(utilization(f), 0.5);
    for (const auto & t : f.trees) {
      EXPECT_LE(t.depth(), 2u);
      EXPECT_LE(t.root().children.size(), 1u);
    }
  }
}

TEST(Generate, RejectsBadParameters)
{
  GeneratorParams p;
  p.min_trees = 3;
  p.max_trees = 2;
  EXPECT_THROW(generate_taskset(p), Error);
  p = {};
  p.periods = {};
  EXPECT_THROW(generate_taskset(p), Error);
  p = {};
  p.max_utilization = 1.5;
  EXPECT_THROW(generate_taskset(p), Error);
}

}  // namespace
}  // namespace rosched
