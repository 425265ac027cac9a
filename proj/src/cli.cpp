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

#include "rosched/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rosched/analysis.hpp"
#include "rosched/executors.hpp"
#include "rosched/reference_oracle.hpp"
#include "rosched/taskset_io.hpp"

namespace rosched
{

Tick trial_horizon(const Forest & forest)
{
  constexpr Tick kCap = 1'000'000;
  const Tick h = hyperperiod(forest);
  return h > kCap / 2 ? kCap : 2 * h;
}

TrialResult run_equivalence_trial(GeneratorParams params, PolicyKind policy)
{
  const TasksetDocument doc = generate_taskset(params);
  const Forest forest = unfold(doc.graph);
  TrialResult r;
  r.seed = params.seed;
  r.policy = policy;
  r.trees = forest.trees.size();
  r.nodes = forest.node_count();
  r.utilization = utilization(forest);
  r.horizon = trial_horizon(forest);
  const auto c =
    compare_with_reference(forest, make_policy(policy, forest), DdsOrder::kLifo, r.horizon);
  r.segments = c.candidate.segments.size();
  r.equivalent = c.result.equivalent;
  r.checks = c.candidate.checks;
  if (!r.equivalent) {
    r.report = describe(c.result, c.candidate, c.reference);
  }
  return r;
}

void parallel_for(
  std::size_t count, std::size_t threads, const std::function<void(std::size_t)> & job)
{
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, count);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  if (threads > 0) {
    worker();
  }
  for (auto & t : pool) {
    t.join();
  }
  for (auto & e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

namespace
{

const std::vector<std::string> kPolicies = {"rm", "edf", "fixed"};
const std::vector<std::string> kDdsOrders = {"fifo", "lifo"};
const std::vector<std::string> kExecutors = {"default", "events-fifo", "two-queue", "reference"};

struct RunOptions
{
  std::string taskset;
  std::string policy;
  std::string dds;
  std::optional<Tick> horizon;
};

void add_run_options(CLI::App & cmd, RunOptions & o)
{
  cmd.add_option("taskset", o.taskset, "Taskset file")->required();
  cmd.add_option("--policy", o.policy, "Priority policy (default: from the taskset)")
  ->check(CLI::IsMember(kPolicies));
  cmd.add_option("--dds", o.dds, "DDS queue order (default: from the taskset)")
  ->check(CLI::IsMember(kDdsOrders));
  cmd.add_option("--horizon", o.horizon, "Simulated ticks (default: taskset, else one hyperperiod)")
  ->check(CLI::PositiveNumber);
}

// Everything needed to run one simulation of a loaded taskset.
struct Prepared
{
  TasksetDocument doc;
  Forest forest;
  PriorityPolicy policy;
  DdsOrder dds = DdsOrder::kLifo;
  Tick horizon = 0;
  ExecutionTimes times;

  RunExtras extras() const {return {&times, std::nullopt, doc.tick_unit};}
};

Prepared prepare(const RunOptions & o)
{
  Prepared p;
  p.doc = load_taskset(o.taskset);
  p.forest = unfold(p.doc.graph);
  const PolicyKind kind = o.policy.empty() ? p.doc.policy : parse_policy_kind(o.policy);
  p.policy = make_policy(kind, p.forest, p.doc.fixed_priorities);
  p.dds = o.dds.empty() ? p.doc.dds_order : parse_dds_order(o.dds);
  p.horizon = o.horizon ? *o.horizon : default_horizon(p.doc, p.forest);
  p.times = execution_times_of(p.doc);
  return p;
}

ScheduleTrace run_executor(const Prepared & p, ExecutorKind executor)
{
  switch (executor) {
    case ExecutorKind::kDefault:
      return simulate_default_executor(p.forest, p.horizon, p.policy, p.extras());
    case ExecutorKind::kFifoEvents:
      return simulate_fifo_events(p.forest, p.horizon, p.policy, p.extras());
    case ExecutorKind::kTwoQueue:
      return simulate_two_queue(p.forest, p.policy, p.dds, p.horizon, p.extras());
    case ExecutorKind::kReference:
      return simulate_reference(p.forest, p.policy, p.horizon, p.extras());
  }
  throw Error("unknown executor");
}

void emit(const std::string & path, const std::string & text, std::ostream & out)
{
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

int cmd_unfold(const std::string & path, std::ostream & out)
{
  const auto doc = load_taskset(path);
  const auto forest = unfold(doc.graph);
  out << forest.describe();
  out << "duplication\n";
  for (const auto & [callback, count] : forest.duplication_counts()) {
    out << "  " << callback << ' ' << count << '\n';
  }
  out << "provenance\n";
  for (const auto & p : forest.provenance()) {
    out << "  " << forest.trees[p.tree].name << '@' << p.node << " <- " << p.callback;
    if (!p.topic.empty()) {
      out << " via " << p.publisher << ':' << p.topic;
    }
    out << '\n';
  }
  out << "forest " << std::hex << std::setw(16) << std::setfill('0') << forest.hash()
      << std::dec << std::setfill(' ') << '\n';
  return kExitOk;
}

int cmd_simulate(
  const RunOptions & o, const std::string & executor, const std::string & output,
  std::size_t trials, std::size_t threads, std::ostream & out, std::ostream & err)
{
  const Prepared p = prepare(o);
  const ExecutorKind kind = parse_executor_kind(executor);
  std::vector<std::string> texts(std::max<std::size_t>(trials, 1));
  parallel_for(
    texts.size(), threads,
    [&](std::size_t i) {texts[i] = serialize_trace(run_executor(p, kind));});
  for (std::size_t i = 1; i < texts.size(); ++i) {
    if (texts[i] != texts[0]) {
      err << "trial " << i << " produced a different trace than trial 0\n";
      return kExitAnalysisFailure;
    }
  }
  emit(output, texts[0], out);
  return kExitOk;
}

int cmd_compare_file(const RunOptions & o, std::ostream & out)
{
  const Prepared p = prepare(o);
  const auto c = compare_with_reference(p.forest, p.policy, p.dds, p.horizon, p.extras());
  out << describe(c.result, c.candidate, c.reference);
  if (c.result.equivalent) {
    out << '\n';
  }
  const auto v = c.candidate.checks.violations();
  out << "runtime checks " << c.candidate.checks.checks << ", violations " << v << '\n';
  return c.result.equivalent && v == 0 ? kExitOk : kExitAnalysisFailure;
}

int cmd_compare_trials(
  std::size_t trials, std::uint64_t seed, const std::string & policy, std::size_t threads,
  std::ostream & out)
{
  const PolicyKind kind = policy.empty() ? PolicyKind::kRM : parse_policy_kind(policy);
  if (kind == PolicyKind::kFixed) {
    throw Error("random trials support rm and edf");
  }
  std::vector<TrialResult> results(trials);
  parallel_for(
    trials, threads, [&](std::size_t i) {
      GeneratorParams params;
      params.seed = seed + i;
      results[i] = run_equivalence_trial(params, kind);
    });
  std::size_t diverged = 0;
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto & r = results[i];
    out << "trial " << i << " seed " << r.seed << " trees " << r.trees << " nodes " << r.nodes
        << " U " << std::fixed << std::setprecision(4) << r.utilization << std::defaultfloat
        << " horizon " << r.horizon << " segments " << r.segments << ' '
        << (r.equivalent ? "equivalent" : "DIVERGED") << '\n';
    if (!r.equivalent) {
      ++diverged;
      out << r.report;
    }
    violations += r.checks.violations();
  }
  out << trials << " trials, " << diverged << " diverged, " << violations
      << " invariant violations\n";
  return diverged == 0 && violations == 0 ? kExitOk : kExitAnalysisFailure;
}

ResponseBounds load_bounds(const std::string & path)
{
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw Error("bounds file '" + path + "': " + e.what());
  }
  if (!j.is_object()) {
    throw SchemaError("bounds", "bounds file must map callback ids to ticks");
  }
  ResponseBounds out;
  for (const auto & [key, value] : j.items()) {
    if (!value.is_number_unsigned()) {
      throw SchemaError("bounds." + key, "bound of '" + key + "' must be a non-negative integer");
    }
    out[key] = value.get<Tick>();
  }
  return out;
}

int cmd_analyze(
  const RunOptions & o, const std::string & executor, double percentile, bool strict,
  const std::string & bounds_path, std::ostream & out)
{
  const Prepared p = prepare(o);
  const ScheduleTrace trace = run_executor(p, parse_executor_kind(executor));
  bool failed = false;

  out << std::fixed << std::setprecision(4);
  if (p.forest.all_periodic()) {
    out << "utilization " << utilization(p.forest) << '\n';
    out << "hyperperiod " << hyperperiod(p.forest) << '\n';
  } else {
    out << "utilization n/a (sporadic tasks)\n";
  }
  out << "executor " << to_string(trace.executor) << " policy " << to_string(trace.policy)
      << " dds " << to_string(trace.dds_order) << " horizon " << trace.horizon << '\n';

  const auto report = response_times(trace, p.forest, percentile);
  out << "response times (max, mean, p" << std::setprecision(1) << percentile
      << std::setprecision(4) << ")\n";
  for (const auto & t : report.tasks) {
    out << "  " << t.task << " jobs " << t.jobs.size() << " max " << t.max << " mean "
        << t.mean << " pct " << t.percentile << " incomplete " << t.incomplete << '\n';
  }
  out << "deadline misses " << report.deadline_misses.size() << '\n';
  for (const auto & m : report.deadline_misses) {
    out << "  " << m.task << " job " << m.job << " late by " << m.lateness << '\n';
  }
  failed |= !report.deadline_misses.empty();

  ResponseBounds bounds = observed_bounds(trace, p.forest);
  if (!bounds_path.empty()) {
    for (const auto & [k, v] : load_bounds(bounds_path)) {
      bounds[k] = v;
    }
  }
  try {
    const auto h = check_harmonic_condition(p.forest, bounds);
    out << "harmonic condition " << (h.pass() ? "pass" : "fail") << '\n';
    for (const auto & s : h.subscriptions) {
      if (s.parents.size() < 2) {
        continue;
      }
      out << "  " << s.queue.topic << " -> " << s.queue.subscriber << " parents ";
      for (std::size_t i = 0; i < s.parents.size(); ++i) {
        out << (i ? "," : "") << s.parents[i];
      }
      out << ' ' << (s.pass ? "pass" : "fail");
      if (s.violation) {
        const auto & v = *s.violation;
        out << " (" << v.parent_a << ',' << v.parent_b << ") ";
        if (v.inequality == 0) {
          out << "periods " << v.lhs << " and " << v.rhs << " are not harmonic";
        } else {
          out << "inequality " << v.inequality << " at t_A=" << v.release_a << " t_B="
              << v.release_b << ": " << v.lhs << " > " << v.rhs;
        }
      }
      out << '\n';
    }
    failed |= !h.pass();
  } catch (const NotPeriodic & e) {
    out << "harmonic condition n/a (" << e.what() << ")\n";
  } catch (const MissingBound & e) {
    out << "harmonic condition n/a (" << e.what() << ")\n";
  }

  out << "dds max depth\n";
  for (const auto & [queue, depth] : max_dds_depth(trace)) {
    out << "  " << queue.topic << " -> " << queue.subscriber << ' ' << depth << '\n';
  }
  out << "runtime check violations " << trace.checks.violations() << '\n';
  failed |= trace.checks.violations() != 0;
  return strict && failed ? kExitAnalysisFailure : kExitOk;
}

int cmd_render(const std::string & trace_path, const std::string & output, std::ostream & out)
{
  emit(output, render_gantt_svg(parse_trace(read_file(trace_path))), out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Scheduling simulator for ROS 2 callback graphs", "rosched"};
  app.require_subcommand(1);

  std::string unfold_path;
  auto * unfold_cmd = app.add_subcommand("unfold", "Print the unfolded forest");
  unfold_cmd->add_option("taskset", unfold_path, "Taskset file")->required();

  RunOptions sim;
  std::string sim_executor = "two-queue";
  std::string sim_output;
  std::size_t sim_trials = 1;
  std::size_t threads = 0;
  auto * sim_cmd = app.add_subcommand("simulate", "Simulate one executor and write its trace");
  add_run_options(*sim_cmd, sim);
  sim_cmd->add_option("--executor", sim_executor, "Executor")->check(CLI::IsMember(kExecutors));
  sim_cmd->add_option("-o,--output", sim_output, "Trace file (default: stdout)");
  sim_cmd->add_option("--trials", sim_trials, "Run N identical simulations in parallel")
  ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");

  RunOptions cmp;
  std::size_t cmp_trials = 0;
  std::uint64_t cmp_seed = 1;
  auto * cmp_cmd = app.add_subcommand(
    "compare", "Compare the two-queue executor with the reference scheduler");
  cmp_cmd->add_option("taskset", cmp.taskset, "Taskset file");
  cmp_cmd->add_option("--policy", cmp.policy, "Priority policy")->check(CLI::IsMember(kPolicies));
  cmp_cmd->add_option("--dds", cmp.dds, "DDS queue order")->check(CLI::IsMember(kDdsOrders));
  cmp_cmd->add_option("--horizon", cmp.horizon, "Simulated ticks")->check(CLI::PositiveNumber);
  cmp_cmd->add_option("--trials", cmp_trials, "Compare on N generated forests instead of a file");
  cmp_cmd->add_option("--seed", cmp_seed, "Seed of the first generated forest");
  cmp_cmd->add_option("--threads", threads, "Worker threads (0: all cores)");

  RunOptions ana;
  std::string ana_executor = "two-queue";
  double percentile = 99.7;
  bool strict = false;
  std::string bounds_path;
  auto * ana_cmd = app.add_subcommand(
    "analyze", "Report utilization, response times, harmonic condition and DDS depths");
  add_run_options(*ana_cmd, ana);
  ana_cmd->add_option("--executor", ana_executor, "Executor")->check(CLI::IsMember(kExecutors));
  ana_cmd->add_option("--percentile", percentile, "Response-time percentile")
  ->check(CLI::Range(0.0, 100.0));
  ana_cmd->add_flag("--strict", strict, "Exit 1 on deadline misses or failed checks");
  ana_cmd->add_option("--bounds", bounds_path, "JSON object of response-time bounds per callback");

  std::string render_path;
  std::string render_output;
  auto * render_cmd = app.add_subcommand("render", "Render a trace as an SVG Gantt chart");
  render_cmd->add_option("trace", render_path, "Trace file")->required();
  render_cmd->add_option("-o,--output", render_output, "SVG file (default: stdout)");

  GeneratorParams gen;
  std::string gen_output;
  auto * gen_cmd = app.add_subcommand("gen", "Generate a random taskset");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--min-trees", gen.min_trees, "Minimum number of timers")
  ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-trees", gen.max_trees, "Maximum number of timers")
  ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-depth", gen.max_depth, "Maximum tree depth")
  ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-fanout", gen.max_fanout, "Maximum children per node")
  ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--periods", gen.periods, "Period set in ticks")->delimiter(',');
  gen_cmd->add_option("--min-utilization", gen.min_utilization, "Lower utilization target");
  gen_cmd->add_option("--max-utilization", gen.max_utilization, "Upper utilization target");
  gen_cmd->add_option("-o,--output", gen_output, "Taskset file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (unfold_cmd->parsed()) {
      return cmd_unfold(unfold_path, out);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(sim, sim_executor, sim_output, sim_trials, threads, out, err);
    }
    if (cmp_cmd->parsed()) {
      if (cmp_trials > 0) {
        return cmd_compare_trials(cmp_trials, cmp_seed, cmp.policy, threads, out);
      }
      if (cmp.taskset.empty()) {
        err << "compare needs a taskset file or --trials\n";
        return kExitInputError;
      }
      return cmd_compare_file(cmp, out);
    }
    if (ana_cmd->parsed()) {
      return cmd_analyze(ana, ana_executor, percentile, strict, bounds_path, out);
    }
    if (render_cmd->parsed()) {
      return cmd_render(render_path, render_output, out);
    }
    if (gen_cmd->parsed()) {
      emit(gen_output, serialize_taskset(generate_taskset(gen)), out);
      return kExitOk;
    }
  } catch (const Error & e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace rosched
