// Copyright 2026 The Mazebench Authors
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

// Transcript records and scoring: per-task correctness against gold,
// hidden-role Crim/Self/Both accuracies, and breakdowns by round, by the
// observer's shown and true role, and by graph query kind.

#pragma once

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "maze/errors.hpp"
#include "maze/textio.hpp"

namespace maze {

// One model response to one dataset record. `parsed`/`parse_note` are
// stored for audit; scoring always re-parses raw_text so a transcript can
// never disagree with its own score.
struct EvalRecord {
  std::string task;
  std::string subset;
  std::string instance_id;
  std::uint64_t seed = 0;
  std::optional<int> round;
  std::optional<std::string> query;
  json gold = json::object();
  std::string model;
  std::string raw_text;
  json parsed;  // null when unparseable
  std::string parse_note;
  json extra = json::object();

  bool operator==(const EvalRecord&) const = default;
};

inline json parsed_to_json(const ParsedAnswer& answer) {
  json j = json::object();
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, HiddenRoleAnswer>) {
          j["criminal"] = a.criminal.value;
          j["self_role"] = a.self_role ? std::string(to_string(*a.self_role))
                                       : std::string("Unknown");
        } else if constexpr (std::is_same_v<T, SpyAnswer>) {
          j["spy"] = a.spy.value;
        } else if constexpr (std::is_same_v<T, RatingAnswer>) {
          j["rating"] = a.rating;
        } else if constexpr (std::is_same_v<T, GraphNumberAnswer>) {
          j["answer"] = a.value;
        } else if constexpr (std::is_same_v<T, GraphYesNoAnswer>) {
          j["answer"] = a.yes ? "Yes" : "No";
        } else if constexpr (std::is_same_v<T, GraphNamesAnswer>) {
          json names = json::array();
          for (PersonId p : a.names) names.push_back(std::string(1, p.label()));
          j["answer"] = names;
        } else if constexpr (std::is_same_v<T, GraphPairCountsAnswer>) {
          j["good"] = a.good;
          j["bad"] = a.bad;
        } else if constexpr (std::is_same_v<T, DecisionAnswer>) {
          j["decision"] = a.accept ? "Accept" : "Reject";
        } else if constexpr (std::is_same_v<T, ProfileAnswer>) {
          j["age_group"] = a.age_group;
          j["gender"] = a.gender;
        }
      },
      answer);
  return j;
}

inline json eval_record_to_json(const EvalRecord& r) {
  json j = json::object();
  j["task"] = r.task;
  j["subset"] = r.subset;
  j["instance_id"] = r.instance_id;
  j["seed"] = r.seed;
  if (r.round) j["round"] = *r.round;
  if (r.query) j["query"] = *r.query;
  j["gold"] = r.gold;
  j["model"] = r.model;
  j["raw_text"] = r.raw_text;
  j["parsed"] = r.parsed;
  j["parse_note"] = r.parse_note;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j;
}

inline EvalRecord eval_record_from_json(const json& j, int line) {
  if (!j.is_object()) {
    throw MalformedRecordError(line, "record is not an object");
  }
  EvalRecord r;
  try {
    r.task = j.at("task").get<std::string>();
    r.subset = j.value("subset", std::string());
    r.instance_id = j.at("instance_id").get<std::string>();
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("round")) r.round = j.at("round").get<int>();
    if (j.contains("query")) r.query = j.at("query").get<std::string>();
    r.gold = j.value("gold", json::object());
    r.model = j.value("model", std::string());
    r.raw_text = j.at("raw_text").get<std::string>();
    r.parsed = j.value("parsed", json());
    r.parse_note = j.value("parse_note", std::string());
  } catch (const json::exception& e) {
    throw MalformedRecordError(line, e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "task" || key == "subset" || key == "instance_id" ||
        key == "seed" || key == "round" || key == "query" || key == "gold" ||
        key == "model" || key == "raw_text" || key == "parsed" ||
        key == "parse_note") {
      continue;
    }
    r.extra[key] = value;
  }
  return r;
}

inline void write_eval_records(std::ostream& out,
                               const std::vector<EvalRecord>& records) {
  for (const EvalRecord& r : records) {
    out << eval_record_to_json(r).dump() << "\n";
  }
}

inline std::vector<EvalRecord> read_eval_records(std::istream& in) {
  std::vector<EvalRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedRecordError(line_no, e.what());
    }
    records.push_back(eval_record_from_json(j, line_no));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Scoring

struct GroupStats {
  int count = 0;
  int correct = 0;       // full-credit answers (Both for hidden-role)
  int crim_correct = 0;  // hidden-role only
  int self_correct = 0;  // hidden-role only

  double accuracy() const { return count == 0 ? 0.0 : double(correct) / count; }
  double crim_acc() const {
    return count == 0 ? 0.0 : double(crim_correct) / count;
  }
  double self_acc() const {
    return count == 0 ? 0.0 : double(self_correct) / count;
  }
  double both_acc() const { return accuracy(); }
};

struct MetricsTable {
  std::string task;
  GroupStats overall;
  std::map<int, GroupStats> by_round;
  std::map<std::string, GroupStats> by_assigned_role;  // hidden-role
  std::map<std::string, GroupStats> by_true_role;      // hidden-role
  std::map<std::string, GroupStats> by_query;          // graph
  int unparseable = 0;
};

namespace detail {

struct Correctness {
  bool crim = false;
  bool self = false;
  bool full = false;
};

inline bool json_int_equals(const json& j, long long v) {
  return j.is_number_integer() && j.get<long long>() == v;
}

inline Correctness judge(const EvalRecord& r, Task task,
                         const ParseOutcome& outcome) {
  Correctness c;
  if (!outcome.ok()) return c;
  const ParsedAnswer& a = *outcome.answer;
  switch (task) {
    case Task::HiddenRole: {
      const auto& h = std::get<HiddenRoleAnswer>(a);
      c.crim = json_int_equals(r.gold.value("criminal", json()), h.criminal.value);
      const std::string parsed_role = h.self_role
                                          ? std::string(to_string(*h.self_role))
                                          : std::string("Unknown");
      c.self = r.gold.value("p1_role", std::string()) == parsed_role;
      c.full = c.crim && c.self;
      break;
    }
    case Task::FindTheSpy:
      c.full = json_int_equals(r.gold.value("spy", json()),
                               std::get<SpyAnswer>(a).spy.value);
      break;
    case Task::RatingEstimation:
      c.full = json_int_equals(r.gold.value("rating", json()),
                               std::get<RatingAnswer>(a).rating);
      break;
    case Task::SocialGraph: {
      const std::optional<QueryKind> kind =
          r.query ? query_kind_from_string(*r.query) : std::optional<QueryKind>{};
      if (!kind) break;
      switch (*kind) {
        case QueryKind::Pairwise:
          c.full = r.gold.value("answer", std::string()) ==
                   (std::get<GraphYesNoAnswer>(a).yes ? "Yes" : "No");
          break;
        case QueryKind::Neighbors: {
          const auto& names = std::get<GraphNamesAnswer>(a).names;
          json parsed_names = json::array();
          for (PersonId p : names) parsed_names.push_back(std::string(1, p.label()));
          c.full = r.gold.value("answer", json::array()) == parsed_names;
          break;
        }
        case QueryKind::GroupCount:
          c.full = json_int_equals(r.gold.value("answer", json()),
                                   std::get<GraphNumberAnswer>(a).value);
          break;
        case QueryKind::PairCounts: {
          const auto& pc = std::get<GraphPairCountsAnswer>(a);
          c.full = json_int_equals(r.gold.value("good", json()), pc.good) &&
                   json_int_equals(r.gold.value("bad", json()), pc.bad);
          break;
        }
      }
      break;
    }
    case Task::ReviewDecision:
      c.full = r.gold.value("decision", std::string()) ==
               (std::get<DecisionAnswer>(a).accept ? "Accept" : "Reject");
      break;
    case Task::UserProfile: {
      const auto& p = std::get<ProfileAnswer>(a);
      c.full = r.gold.value("age_group", std::string()) == p.age_group &&
               r.gold.value("gender", std::string()) == p.gender;
      break;
    }
  }
  return c;
}

inline void tally(GroupStats& g, const Correctness& c, Task task) {
  g.count += 1;
  g.correct += c.full ? 1 : 0;
  if (task == Task::HiddenRole) {
    g.crim_correct += c.crim ? 1 : 0;
    g.self_correct += c.self ? 1 : 0;
  }
}

}  // namespace detail

// Scores a single-task transcript. Unparseable output counts as incorrect
// everywhere; an unknown task string or a record of a different task is an
// error, not a skip.
inline MetricsTable score(const std::vector<EvalRecord>& records) {
  MetricsTable table;
  if (records.empty()) return table;
  table.task = records.front().task;
  const auto task = task_from_string(table.task);
  if (!task) throw MixedTasksError("unknown task '" + table.task + "'");

  for (const EvalRecord& r : records) {
    if (r.task != table.task) {
      throw MixedTasksError("transcript mixes tasks '" + table.task +
                            "' and '" + r.task + "'");
    }
    const std::optional<QueryKind> kind =
        r.query ? query_kind_from_string(*r.query) : std::optional<QueryKind>{};
    const ParseOutcome outcome = parse_answer(*task, r.raw_text, kind);
    if (!outcome.ok()) table.unparseable += 1;
    const detail::Correctness c = detail::judge(r, *task, outcome);

    detail::tally(table.overall, c, *task);
    if (r.round) detail::tally(table.by_round[*r.round], c, *task);
    if (*task == Task::HiddenRole) {
      const std::string shown = r.gold.value("p1_shown_role", std::string());
      const std::string true_role = r.gold.value("p1_role", std::string());
      if (!shown.empty()) detail::tally(table.by_assigned_role[shown], c, *task);
      if (!true_role.empty()) detail::tally(table.by_true_role[true_role], c, *task);
    }
    if (*task == Task::SocialGraph && r.query) {
      detail::tally(table.by_query[*r.query], c, *task);
    }
  }
  return table;
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

inline void stats_row(std::ostream& out, const std::string& label,
                      const GroupStats& g, bool hidden_role) {
  char buf[160];
  if (hidden_role) {
    std::snprintf(buf, sizeof(buf), "  %-22s %6s %6s %6s %7d\n", label.c_str(),
                  fmt3(g.crim_acc()).c_str(), fmt3(g.self_acc()).c_str(),
                  fmt3(g.both_acc()).c_str(), g.count);
  } else {
    std::snprintf(buf, sizeof(buf), "  %-22s %6s %7d\n", label.c_str(),
                  fmt3(g.accuracy()).c_str(), g.count);
  }
  out << buf;
}

}  // namespace detail

inline void render_metrics_table(std::ostream& out, const MetricsTable& table) {
  const bool hidden_role = table.task == to_string(Task::HiddenRole);
  out << "Task: " << (table.task.empty() ? "(none)" : table.task)
      << "    Records: " << table.overall.count
      << "    Unparseable: " << table.unparseable << "\n\n";
  if (table.overall.count == 0) return;
  if (hidden_role) {
    out << "  " << std::string(22, ' ') << "  Crim   Self   Both       N\n";
  } else {
    out << "  " << std::string(22, ' ') << "   Acc       N\n";
  }
  detail::stats_row(out, "Overall", table.overall, hidden_role);
  for (const auto& [round, stats] : table.by_round) {
    detail::stats_row(out, "Round " + std::to_string(round), stats, hidden_role);
  }
  for (const auto& [role, stats] : table.by_assigned_role) {
    detail::stats_row(out, "Shown " + role, stats, hidden_role);
  }
  for (const auto& [role, stats] : table.by_true_role) {
    detail::stats_row(out, "True " + role, stats, hidden_role);
  }
  for (const auto& [query, stats] : table.by_query) {
    detail::stats_row(out, "Query " + query, stats, hidden_role);
  }
}

inline json metrics_to_json(const MetricsTable& table) {
  const bool hidden_role = table.task == to_string(Task::HiddenRole);
  const auto stats_json = [&](const GroupStats& g) {
    json j = json::object();
    j["count"] = g.count;
    if (hidden_role) {
      j["crim_acc"] = g.crim_acc();
      j["self_acc"] = g.self_acc();
      j["both_acc"] = g.both_acc();
    } else {
      j["accuracy"] = g.accuracy();
    }
    return j;
  };
  json j = json::object();
  j["task"] = table.task;
  j["unparseable"] = table.unparseable;
  j["overall"] = stats_json(table.overall);
  json rounds = json::object();
  for (const auto& [round, stats] : table.by_round) {
    rounds[std::to_string(round)] = stats_json(stats);
  }
  j["by_round"] = rounds;
  if (hidden_role) {
    json shown = json::object();
    for (const auto& [role, stats] : table.by_assigned_role) {
      shown[role] = stats_json(stats);
    }
    j["by_assigned_role"] = shown;
    json true_roles = json::object();
    for (const auto& [role, stats] : table.by_true_role) {
      true_roles[role] = stats_json(stats);
    }
    j["by_true_role"] = true_roles;
  }
  if (!table.by_query.empty()) {
    json queries = json::object();
    for (const auto& [query, stats] : table.by_query) {
      queries[query] = stats_json(stats);
    }
    j["by_query"] = queries;
  }
  return j;
}

}  // namespace maze
