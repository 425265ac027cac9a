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

#include "rosched/taskset_io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rosched/analysis.hpp"

namespace rosched
{

using nlohmann::json;
using nlohmann::ordered_json;

namespace
{

// Strict accessor for one JSON object: every key must be consumed exactly once.
class ObjectReader
{
public:
  ObjectReader(const json & object, std::string path)
  : object_(object), path_(std::move(path))
  {
    if (!object_.is_object()) {
      throw SchemaError(path_, path_ + " must be an object");
    }
  }

  bool has(const std::string & key) const {return object_.contains(key);}

  const json & raw(const std::string & key)
  {
    seen_.insert(key);
    return object_.at(key);
  }

  std::string field(const std::string & key) const
  {
    return path_.empty() ? key : path_ + "." + key;
  }

  Tick tick(const std::string & key)
  {
    const auto & v = raw(key);
    if (!v.is_number_unsigned()) {
      throw SchemaError(field(key), field(key) + " must be a non-negative integer");
    }
    return v.get<Tick>();
  }

  std::optional<Tick> optional_tick(const std::string & key)
  {
    if (!has(key)) {
      return std::nullopt;
    }
    return tick(key);
  }

  std::string string(const std::string & key)
  {
    const auto & v = raw(key);
    if (!v.is_string()) {
      throw SchemaError(field(key), field(key) + " must be a string");
    }
    return v.get<std::string>();
  }

  std::vector<std::string> strings(const std::string & key)
  {
    const auto & v = raw(key);
    if (!v.is_array()) {
      throw SchemaError(field(key), field(key) + " must be an array of strings");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        throw SchemaError(
          field(key) + "[" + std::to_string(i) + "]", field(key) + " must contain strings");
      }
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

  std::vector<Tick> ticks(const std::string & key)
  {
    const auto & v = raw(key);
    if (!v.is_array()) {
      throw SchemaError(field(key), field(key) + " must be an array of integers");
    }
    std::vector<Tick> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_unsigned()) {
        throw SchemaError(
          field(key) + "[" + std::to_string(i) + "]",
          field(key) + " must contain non-negative integers");
      }
      out.push_back(v[i].get<Tick>());
    }
    return out;
  }

  void finish() const
  {
    for (const auto & [key, value] : object_.items()) {
      if (!seen_.count(key)) {
        throw SchemaError(field(key), "unknown field '" + field(key) + "'");
      }
    }
  }

private:
  const json & object_;
  std::string path_;
  std::set<std::string> seen_;
};

CallbackKind parse_kind(const std::string & text, const std::string & field)
{
  for (auto k : {CallbackKind::kTimer, CallbackKind::kSubscription,
      CallbackKind::kExternalSporadic})
  {
    if (to_string(k) == text) {
      return k;
    }
  }
  throw SchemaError(field, "unknown callback kind '" + text + "'");
}

CallbackSpec parse_callback(const json & j, const std::string & path)
{
  ObjectReader r(j, path);
  CallbackSpec cb;
  if (!r.has("id") || !r.has("kind") || !r.has("wcet")) {
    throw SchemaError(path, path + " requires id, kind and wcet");
  }
  cb.id = r.string("id");
  cb.kind = parse_kind(r.string("kind"), r.field("kind"));
  cb.wcet = r.tick("wcet");
  if (r.has("period")) {
    cb.period = r.tick("period");
  }
  if (r.has("phase")) {
    cb.phase = r.tick("phase");
  }
  if (r.has("min_interarrival")) {
    cb.min_interarrival = r.tick("min_interarrival");
  }
  if (r.has("arrivals")) {
    cb.arrivals = r.ticks("arrivals");
  }
  if (r.has("subscribes")) {
    cb.subscribed_topic = r.string("subscribes");
  }
  if (r.has("publishes")) {
    cb.published_topics = r.strings("publishes");
  }
  cb.relative_deadline = r.optional_tick("deadline");
  r.finish();
  return cb;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

TasksetDocument parse_taskset(std::string_view text)
{
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error & e) {
    // nlohmann reports the byte just past the offending character.
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(
      line, column,
      "parse error at line " + std::to_string(line) + ", column " + std::to_string(column) +
      ": " + e.what());
  }

  ObjectReader r(root, "");
  TasksetDocument doc;
  if (r.has("tick_unit")) {
    doc.tick_unit = r.string("tick_unit");
  }
  if (r.has("policy")) {
    doc.policy = parse_policy_kind(r.string("policy"));
  }
  if (r.has("dds_order")) {
    doc.dds_order = parse_dds_order(r.string("dds_order"));
  }
  doc.seed = r.optional_tick("seed");
  doc.horizon = r.optional_tick("horizon");
  if (doc.horizon && *doc.horizon == 0) {
    throw SchemaError("horizon", "horizon must be positive");
  }
  if (r.has("topics")) {
    doc.graph.topics = r.strings("topics");
  }
  if (r.has("callbacks")) {
    const auto & list = r.raw("callbacks");
    if (!list.is_array()) {
      throw SchemaError("callbacks", "callbacks must be an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      doc.graph.callbacks.push_back(
        parse_callback(list[i], "callbacks[" + std::to_string(i) + "]"));
    }
  }
  if (r.has("fixed_priorities")) {
    const auto & obj = r.raw("fixed_priorities");
    if (!obj.is_object()) {
      throw SchemaError("fixed_priorities", "fixed_priorities must be an object");
    }
    for (const auto & [task, value] : obj.items()) {
      if (!value.is_number_integer()) {
        throw SchemaError(
          "fixed_priorities." + task, "fixed priority of '" + task + "' must be an integer");
      }
      doc.fixed_priorities[task] = value.get<std::int64_t>();
    }
  }
  if (r.has("execution_times")) {
    const auto & list = r.raw("execution_times");
    if (!list.is_array()) {
      throw SchemaError("execution_times", "execution_times must be an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "execution_times[" + std::to_string(i) + "]";
      ObjectReader e(list[i], path);
      if (!e.has("task") || !e.has("callback") || !e.has("job") || !e.has("time")) {
        throw SchemaError(path, path + " requires task, callback, job and time");
      }
      ExecutionOverride o;
      o.task = e.string("task");
      o.callback = e.string("callback");
      o.job = e.tick("job");
      o.time = e.tick("time");
      e.finish();
      doc.execution_times.push_back(std::move(o));
    }
  }
  r.finish();

  require_valid(doc.graph);
  for (const auto & [task, value] : doc.fixed_priorities) {
    const auto * cb = doc.graph.find(task);
    if (!cb || !cb->is_root()) {
      throw SchemaError(
        "fixed_priorities." + task, "fixed priority given for unknown task '" + task + "'");
    }
  }
  execution_times_of(doc);
  return doc;
}

std::string serialize_taskset(const TasksetDocument & doc)
{
  ordered_json root;
  if (doc.seed) {
    root["seed"] = *doc.seed;
  }
  root["tick_unit"] = doc.tick_unit;
  root["policy"] = std::string(to_string(doc.policy));
  root["dds_order"] = std::string(to_string(doc.dds_order));
  if (doc.horizon) {
    root["horizon"] = *doc.horizon;
  }
  root["topics"] = doc.graph.topics;
  root["callbacks"] = ordered_json::array();
  for (const auto & cb : doc.graph.callbacks) {
    ordered_json c;
    c["id"] = cb.id;
    c["kind"] = std::string(to_string(cb.kind));
    c["wcet"] = cb.wcet;
    switch (cb.kind) {
      case CallbackKind::kTimer:
        c["period"] = cb.period;
        c["phase"] = cb.phase;
        break;
      case CallbackKind::kSubscription:
        c["subscribes"] = cb.subscribed_topic;
        break;
      case CallbackKind::kExternalSporadic:
        c["min_interarrival"] = cb.min_interarrival;
        c["arrivals"] = cb.arrivals;
        break;
    }
    c["publishes"] = cb.published_topics;
    if (cb.relative_deadline) {
      c["deadline"] = *cb.relative_deadline;
    }
    root["callbacks"].push_back(std::move(c));
  }
  if (!doc.fixed_priorities.empty()) {
    ordered_json fixed = ordered_json::object();
    for (const auto & [task, value] : doc.fixed_priorities) {
      fixed[task] = value;
    }
    root["fixed_priorities"] = std::move(fixed);
  }
  if (!doc.execution_times.empty()) {
    root["execution_times"] = ordered_json::array();
    for (const auto & o : doc.execution_times) {
      ordered_json e;
      e["task"] = o.task;
      e["callback"] = o.callback;
      e["job"] = o.job;
      e["time"] = o.time;
      root["execution_times"].push_back(std::move(e));
    }
  }
  return root.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path & path, std::string_view contents)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot write '" + path.string() + "'");
  }
  out << contents;
}

TasksetDocument load_taskset(const std::filesystem::path & path)
{
  return parse_taskset(read_file(path));
}

ExecutionTimes execution_times_of(const TasksetDocument & doc)
{
  ExecutionTimes out;
  for (std::size_t i = 0; i < doc.execution_times.size(); ++i) {
    const auto & o = doc.execution_times[i];
    const std::string path = "execution_times[" + std::to_string(i) + "]";
    const auto * task = doc.graph.find(o.task);
    if (!task || !task->is_root()) {
      throw SchemaError(path + ".task", "unknown task '" + o.task + "'");
    }
    const auto * cb = doc.graph.find(o.callback);
    if (!cb) {
      throw SchemaError(path + ".callback", "unknown callback '" + o.callback + "'");
    }
    if (o.time == 0 || o.time > cb->wcet) {
      throw SchemaError(
        path + ".time", "execution time of '" + o.callback + "' must lie in [1, wcet]");
    }
    out[{o.task, o.callback, o.job}] = o.time;
  }
  return out;
}

Tick default_horizon(const TasksetDocument & doc, const Forest & forest)
{
  if (doc.horizon) {
    return *doc.horizon;
  }
  if (!forest.all_periodic()) {
    throw SchemaError("horizon", "tasksets with sporadic tasks need an explicit horizon");
  }
  return forest.trees.empty() ? 1 : hyperperiod(forest);
}

// ---------------------------------------------------------------------------
// Trace text format

namespace
{

std::string subtask_label(const ScheduleTrace & t, const InstanceId & id)
{
  return t.tasks.at(id.task).node_callbacks.at(id.node) + "@" + std::to_string(id.node);
}

std::string hex64(std::uint64_t v)
{
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

std::vector<std::string> split(std::string_view line, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

const char * kCheckNames[] = {
  "idle_root", "child_priority", "queue_bound", "push_max",
  "pop_max", "inheritance", "checks"};

std::uint64_t * check_slot(InvariantCounters & c, std::string_view name)
{
  std::uint64_t * slots[] = {
    &c.idle_root, &c.child_priority, &c.queue_bound, &c.push_max,
    &c.pop_max, &c.inheritance, &c.checks};
  for (std::size_t i = 0; i < std::size(slots); ++i) {
    if (name == kCheckNames[i]) {
      return slots[i];
    }
  }
  return nullptr;
}

}  // namespace

std::string serialize_trace(const ScheduleTrace & t)
{
  std::ostringstream os;
  os << "rosched-trace 1\n";
  os << "forest " << hex64(t.forest_hash) << " tick_unit " << t.tick_unit << '\n';
  os << "executor " << to_string(t.executor) << " policy " << to_string(t.policy) << " dds "
     << to_string(t.dds_order) << " horizon " << t.horizon << '\n';

  os << "[tasks]\nindex,name,callbacks\n";
  for (std::size_t i = 0; i < t.tasks.size(); ++i) {
    os << i << ',' << t.tasks[i].name << ',';
    for (std::size_t n = 0; n < t.tasks[i].node_callbacks.size(); ++n) {
      os << (n ? ";" : "") << t.tasks[i].node_callbacks[n];
    }
    os << '\n';
  }

  os << "[segments]\nstart,end,task,subtask,job,priority,priority_class,priority_job\n";
  for (const auto & s : t.segments) {
    os << s.start << ',' << s.end << ',' << t.tasks.at(s.instance.task).name << ','
       << subtask_label(t, s.instance) << ',' << s.instance.job << ',' << s.priority.primary
       << ',' << s.priority.tiebreak_class << ',' << s.priority.job << '\n';
  }

  os << "[releases]\ntick,task,subtask,job\n";
  for (const auto & r : t.releases) {
    os << r.eligibility << ',' << t.tasks.at(r.instance.task).name << ','
       << subtask_label(t, r.instance) << ',' << r.instance.job << '\n';
  }

  os << "[drops]\ntick,task,job\n";
  for (const auto & d : t.drops) {
    os << d.activation << ',' << t.tasks.at(d.task).name << ',' << d.job << '\n';
  }

  os << "[polling_points]\ntick\n";
  for (Tick p : t.polling_points) {
    os << p << '\n';
  }

  os << "[dds_events]\ntick,action,topic,subscriber,message,publisher_task,publisher_subtask,"
    "publisher_job\n";
  for (const auto & e : t.dds_events) {
    os << e.tick << ',' << (e.action == DdsAction::kEnqueue ? "enqueue" : "dequeue") << ','
       << e.queue.topic << ',' << e.queue.subscriber << ',' << e.message << ','
       << t.tasks.at(e.publisher.task).name << ',' << subtask_label(t, e.publisher) << ','
       << e.publisher.job << '\n';
  }

  os << "[dds_max_depth]\ntopic,subscriber,depth\n";
  for (const auto & [key, depth] : t.max_dds_depth) {
    os << key.topic << ',' << key.subscriber << ',' << depth << '\n';
  }

  os << "[mismatches]\ntick,subscriber,expected_task,expected_subtask,expected_job,"
    "consumed_task,consumed_subtask,consumed_job\n";
  for (const auto & m : t.mismatches) {
    os << m.tick << ',' << m.subscriber << ',' << t.tasks.at(m.expected.task).name << ','
       << subtask_label(t, m.expected) << ',' << m.expected.job << ','
       << t.tasks.at(m.consumed.task).name << ',' << subtask_label(t, m.consumed) << ','
       << m.consumed.job << '\n';
  }

  os << "[checks]\nname,count\n";
  {
    InvariantCounters c = t.checks;
    for (const char * name : kCheckNames) {
      os << name << ',' << *check_slot(c, name) << '\n';
    }
  }

  if (t.snapshot) {
    os << "[snapshot]\ndispatch," << t.snapshot->dispatch_index << "\ntick," << t.snapshot->tick
       << '\n';
    for (const auto & e : t.snapshot->entries) {
      os << "entry," << e << '\n';
    }
  }
  return os.str();
}

ScheduleTrace parse_trace(std::string_view text)
{
  ScheduleTrace t;
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) {
    lines.pop_back();
  }
  std::size_t line_no = 0;
  auto fail = [&](const std::string & why) -> ParseError {
      return ParseError(line_no, 1, "trace line " + std::to_string(line_no) + ": " + why);
    };
  auto number = [&](const std::string & s) -> std::uint64_t {
      if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
        throw fail("expected a non-negative integer, got '" + s + "'");
      }
      return std::stoull(s);
    };
  auto signed_number = [&](const std::string & s) -> std::int64_t {
      try {
        std::size_t used = 0;
        auto v = std::stoll(s, &used);
        if (used != s.size()) {
          throw fail("bad integer '" + s + "'");
        }
        return v;
      } catch (const std::logic_error &) {
        throw fail("bad integer '" + s + "'");
      }
    };
  std::map<std::string, std::size_t> task_index;
  auto task_of = [&](const std::string & name) {
      auto it = task_index.find(name);
      if (it == task_index.end()) {
        throw fail("unknown task '" + name + "'");
      }
      return it->second;
    };
  auto node_of = [&](const std::string & label) -> NodeId {
      auto at = label.rfind('@');
      if (at == std::string::npos) {
        throw fail("bad subtask label '" + label + "'");
      }
      return number(label.substr(at + 1));
    };

  if (lines.size() < 3 || lines[0] != "rosched-trace 1") {
    line_no = 1;
    throw fail("missing 'rosched-trace 1' header");
  }
  {
    line_no = 2;
    auto f = split(lines[1], ' ');
    if (f.size() != 4 || f[0] != "forest" || f[2] != "tick_unit") {
      throw fail("bad forest line");
    }
    t.forest_hash = std::stoull(f[1], nullptr, 16);
    t.tick_unit = f[3];
    line_no = 3;
    auto g = split(lines[2], ' ');
    if (g.size() != 8 || g[0] != "executor" || g[2] != "policy" || g[4] != "dds" ||
      g[6] != "horizon")
    {
      throw fail("bad executor line");
    }
    t.executor = parse_executor_kind(g[1]);
    t.policy = parse_policy_kind(g[3]);
    t.dds_order = parse_dds_order(g[5]);
    t.horizon = number(g[7]);
  }

  std::string section;
  bool header_pending = false;
  std::optional<QueueSnapshot> snap;
  for (std::size_t i = 3; i < lines.size(); ++i) {
    line_no = i + 1;
    const auto & line = lines[i];
    if (!line.empty() && line.front() == '[') {
      section = line;
      header_pending = section != "[snapshot]";
      if (section == "[snapshot]") {
        snap.emplace();
      }
      continue;
    }
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto f = split(line, ',');
    auto want = [&](std::size_t n) {
        if (f.size() != n) {
          throw fail("expected " + std::to_string(n) + " fields");
        }
      };
    if (section == "[tasks]") {
      want(3);
      TaskLabel label{f[1], split(f[2], ';')};
      task_index[label.name] = t.tasks.size();
      t.tasks.push_back(std::move(label));
    } else if (section == "[segments]") {
      want(8);
      Segment s;
      s.start = number(f[0]);
      s.end = number(f[1]);
      s.instance = {task_of(f[2]), node_of(f[3]), number(f[4])};
      s.priority = {signed_number(f[5]), number(f[6]), number(f[7])};
      t.segments.push_back(s);
    } else if (section == "[releases]") {
      want(4);
      t.releases.push_back({{task_of(f[1]), node_of(f[2]), number(f[3])}, number(f[0])});
    } else if (section == "[drops]") {
      want(3);
      t.drops.push_back({task_of(f[1]), number(f[2]), number(f[0])});
    } else if (section == "[polling_points]") {
      want(1);
      t.polling_points.push_back(number(f[0]));
    } else if (section == "[dds_events]") {
      want(8);
      DdsEvent e;
      e.tick = number(f[0]);
      if (f[1] != "enqueue" && f[1] != "dequeue") {
        throw fail("bad DDS action '" + f[1] + "'");
      }
      e.action = f[1] == "enqueue" ? DdsAction::kEnqueue : DdsAction::kDequeue;
      e.queue = {f[2], f[3]};
      e.message = number(f[4]);
      e.publisher = {task_of(f[5]), node_of(f[6]), number(f[7])};
      t.dds_events.push_back(std::move(e));
    } else if (section == "[dds_max_depth]") {
      want(3);
      t.max_dds_depth[{f[0], f[1]}] = number(f[2]);
    } else if (section == "[mismatches]") {
      want(8);
      t.mismatches.push_back(
        {number(f[0]), f[1], {task_of(f[2]), node_of(f[3]), number(f[4])},
          {task_of(f[5]), node_of(f[6]), number(f[7])}});
    } else if (section == "[checks]") {
      want(2);
      auto * slot = check_slot(t.checks, f[0]);
      if (!slot) {
        throw fail("unknown check '" + f[0] + "'");
      }
      *slot = number(f[1]);
    } else if (section == "[snapshot]") {
      auto comma = line.find(',');
      const std::string key = line.substr(0, comma);
      const std::string value = comma == std::string::npos ? "" : line.substr(comma + 1);
      if (key == "dispatch") {
        snap->dispatch_index = number(value);
      } else if (key == "tick") {
        snap->tick = number(value);
      } else if (key == "entry") {
        snap->entries.push_back(value);
      } else {
        throw fail("bad snapshot line");
      }
    } else {
      throw fail("data outside a section");
    }
  }
  t.snapshot = std::move(snap);
  return t;
}

// ---------------------------------------------------------------------------
// Gantt rendering

std::string render_gantt_svg(const ScheduleTrace & t)
{
  Tick span = t.horizon;
  for (const auto & s : t.segments) {
    span = std::max(span, s.end);
  }
  span = std::max<Tick>(span, 1);
  const double scale = std::clamp(1600.0 / static_cast<double>(span), 0.01, 20.0);
  const double left = 120.0;
  const double row = 28.0;
  const double bar = 18.0;
  const double top = 20.0;
  const double width = left + static_cast<double>(span) * scale + 20.0;
  const double height = top + row * static_cast<double>(t.tasks.size()) + 30.0;

  static const char * kPalette[] = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac"};

  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" data-scale=\"" << scale << "\" data-origin=\"" << left << "\">\n";
  os << "<title>" << to_string(t.executor) << " schedule, " << to_string(t.policy) << ", horizon "
     << t.horizon << " ticks of " << t.tick_unit << "</title>\n";
  for (std::size_t i = 0; i < t.tasks.size(); ++i) {
    const double y = top + row * static_cast<double>(i);
    os << "<text x=\"4\" y=\"" << y + bar * 0.75 << "\" font-size=\"12\">" << t.tasks[i].name
       << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << y + bar << "\" x2=\"" << width - 20.0
       << "\" y2=\"" << y + bar << "\" stroke=\"#999\"/>\n";
  }
  for (const auto & s : t.segments) {
    const double x = left + static_cast<double>(s.start) * scale;
    const double w = static_cast<double>(s.end - s.start) * scale;
    const double y = top + row * static_cast<double>(s.instance.task);
    os << "<rect class=\"segment\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
       << "\" height=\"" << bar << "\" fill=\"" << kPalette[s.instance.node % std::size(kPalette)]
       << "\" stroke=\"#222\" data-start=\"" << s.start << "\" data-end=\"" << s.end
       << "\"><title>" << describe(t, s.instance) << " [" << s.start << ", " << s.end
       << ")</title></rect>\n";
  }
  for (Tick p : t.polling_points) {
    const double x = left + static_cast<double>(p) * scale;
    os << "<line class=\"polling-point\" x1=\"" << x << "\" y1=\"" << top - 6.0 << "\" x2=\""
       << x << "\" y2=\"" << height - 24.0
       << "\" stroke=\"red\" stroke-dasharray=\"3,3\"/>\n";
  }
  for (const auto & d : t.drops) {
    const double x = left + static_cast<double>(d.activation) * scale;
    const double y = top + row * static_cast<double>(d.task);
    os << "<path class=\"drop\" d=\"M" << x - 4.0 << ',' << y - 4.0 << " L" << x + 4.0 << ','
       << y + 4.0 << " M" << x + 4.0 << ',' << y - 4.0 << " L" << x - 4.0 << ',' << y + 4.0
       << "\" stroke=\"blue\"/>\n";
  }
  const double axis_y = height - 12.0;
  const Tick step = std::max<Tick>(1, span / 10);
  for (Tick tick = 0; tick <= span; tick += step) {
    os << "<text x=\"" << left + static_cast<double>(tick) * scale << "\" y=\"" << axis_y
       << "\" font-size=\"10\">" << tick << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rosched
