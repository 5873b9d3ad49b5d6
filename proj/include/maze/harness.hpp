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

// Dataset pipeline: difficulty presets, record builders for both task
// families, independent re-verification of emitted files, and a small
// deterministic parallel map used by generation and verification.

#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "maze/core.hpp"
#include "maze/metrics.hpp"
#include "maze/rng.hpp"
#include "maze/role_engine.hpp"
#include "maze/social_graph.hpp"
#include "maze/solver.hpp"
#include "maze/textio.hpp"

namespace maze {

inline constexpr const char* kGeneratorVersion = "0.1.0";

// Orders results by index regardless of scheduling; rethrows the first
// worker exception after joining.
template <typename Out, typename Fn>
std::vector<Out> parallel_map(std::size_t count, Fn fn, int jobs = 0) {
  std::vector<Out> results(count);
  if (count == 0) return results;
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(count));

  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

// Game shapes used for the easy/hard dataset subsets. Both play three
// rounds of the full variant with one rumormonger and one lunatic; hard
// widens the table from six players to ten.
inline GameConfig hidden_role_preset(Difficulty subset) {
  GameConfig config;
  config.players = subset == Difficulty::Easy ? 6 : 10;
  config.rounds = 3;
  config.rumormongers = 1;
  config.lunatics = 1;
  config.variant = Variant::Full;
  return config;
}

namespace detail {

inline std::string instance_id(Task task, const std::string& subset, int index) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s-%s-%05d", to_string(task), subset.c_str(),
                index);
  return buf;
}

inline json config_to_json(const GameConfig& config) {
  json j = json::object();
  j["players"] = config.players;
  j["rounds"] = config.rounds;
  j["rumormongers"] = config.rumormongers;
  j["lunatics"] = config.lunatics;
  j["deception_prob"] = config.deception_prob;
  j["variant"] = std::string(to_string(config.variant));
  j["p1_role_weights"] = config.p1_role_weights;
  return j;
}

inline GameConfig config_from_json(const json& j) {
  GameConfig config;
  config.players = j.at("players").get<int>();
  config.rounds = j.at("rounds").get<int>();
  config.rumormongers = j.at("rumormongers").get<int>();
  config.lunatics = j.at("lunatics").get<int>();
  config.deception_prob = j.at("deception_prob").get<double>();
  const auto variant = variant_from_string(j.at("variant").get<std::string>());
  if (!variant) throw Error("unknown variant in config echo");
  config.variant = *variant;
  const auto weights = j.at("p1_role_weights").get<std::vector<double>>();
  if (weights.size() != config.p1_role_weights.size()) {
    throw Error("p1_role_weights echo has wrong length");
  }
  std::copy(weights.begin(), weights.end(), config.p1_role_weights.begin());
  return config;
}

inline json base_metadata(std::uint64_t master_seed, int index) {
  json j = json::object();
  j["generator"] = kGeneratorVersion;
  j["template"] = kTemplateVersion;
  j["master_seed"] = master_seed;
  j["index"] = index;
  return j;
}

}  // namespace detail

// T records for one uniquely solvable game already carrying its accepted
// sub-seed in config.seed: one per round, reasoning chain on the last.
inline std::vector<DatasetRecord> build_hidden_role_records(
    const GameInstance& instance, const std::string& subset, int index,
    std::uint64_t master_seed) {
  const GameConfig& config = instance.config;
  std::vector<DatasetRecord> records;
  records.reserve(static_cast<std::size_t>(config.rounds));

  json gold = json::object();
  gold["criminal"] = instance.criminal.value;
  gold["p1_role"] = std::string(to_string(instance.p1_true_role));
  gold["p1_shown_role"] = std::string(to_string(instance.p1_shown_role));

  json metadata = detail::base_metadata(master_seed, index);
  metadata["config"] = detail::config_to_json(config);

  for (int r = 1; r <= config.rounds; ++r) {
    const ObserverView view = view_at_round(instance, r);
    DatasetRecord record;
    record.task = to_string(Task::HiddenRole);
    record.subset = subset;
    record.instance_id = detail::instance_id(Task::HiddenRole, subset, index);
    record.seed = config.seed;
    record.round = r;
    record.prompt = render_prompt(view);
    record.gold = gold;
    if (r == config.rounds) {
      const SolveResult result = solve(view);
      record.reasoning_chain = build_reasoning_chain(view, result).to_text();
    }
    record.metadata = metadata;
    records.push_back(std::move(record));
  }
  return records;
}

// Four records (one per query kind) for one generated graph. The query
// targets are drawn from the same stream right after the instance, so
// (difficulty, instance_seed) reproduces the records exactly.
inline std::vector<DatasetRecord> build_graph_records(Difficulty difficulty,
                                                      int index,
                                                      std::uint64_t instance_seed,
                                                      std::uint64_t master_seed) {
  Rng rng(instance_seed);
  const SocialGraphInstance inst = generate_graph(difficulty, rng);

  GraphQuery pairwise;
  pairwise.kind = QueryKind::Pairwise;
  pairwise.a = PersonId{static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.n)))};
  int second = static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.n - 1)));
  if (second >= pairwise.a.index) ++second;
  pairwise.b = PersonId{second};

  GraphQuery neighbors;
  neighbors.kind = QueryKind::Neighbors;
  neighbors.person =
      PersonId{static_cast<int>(rng.below(static_cast<std::uint64_t>(inst.n)))};

  GraphQuery group_count;
  group_count.kind = QueryKind::GroupCount;
  GraphQuery pair_counts;
  pair_counts.kind = QueryKind::PairCounts;

  const std::string subset = to_string(difficulty);
  const json metadata = detail::base_metadata(master_seed, index);

  std::vector<DatasetRecord> records;
  for (const GraphQuery& query :
       {pairwise, neighbors, group_count, pair_counts}) {
    DatasetRecord record;
    record.task = to_string(Task::SocialGraph);
    record.subset = subset;
    record.instance_id = detail::instance_id(Task::SocialGraph, subset, index);
    record.seed = instance_seed;
    record.query = to_string(query.kind);
    record.prompt = render_prompt(inst, query);
    json gold = json::object();
    switch (query.kind) {
      case QueryKind::Pairwise:
        gold["a"] = std::string(1, query.a.label());
        gold["b"] = std::string(1, query.b.label());
        gold["answer"] = answer_pairwise(inst, query.a, query.b) ? "Yes" : "No";
        break;
      case QueryKind::Neighbors: {
        gold["person"] = std::string(1, query.person.label());
        json names = json::array();
        for (PersonId p : answer_neighbors(inst, query.person)) {
          names.push_back(std::string(1, p.label()));
        }
        gold["answer"] = names;
        break;
      }
      case QueryKind::GroupCount:
        gold["answer"] = count_groups(inst);
        break;
      case QueryKind::PairCounts: {
        const PairCounts counts = count_pairs(inst);
        gold["good"] = counts.good;
        gold["bad"] = counts.bad;
        break;
      }
    }
    record.gold = gold;
    record.metadata = metadata;
    records.push_back(std::move(record));
  }
  return records;
}

struct GenerateOptions {
  int max_attempts = 500;
  int jobs = 0;  // 0 = hardware concurrency
};

// `count` instances of the given task; hidden-role emits rounds-per-game
// records, graph emits one record per query kind. Deterministic in
// (task, subset, count, seed, config) and independent of the job count.
inline std::vector<DatasetRecord> generate_dataset(
    Task task, Difficulty subset, int count, std::uint64_t seed,
    const GenerateOptions& options = {},
    std::optional<GameConfig> config_override = {}) {
  if (count < 0) throw InvalidConfigError("count must be nonnegative");
  std::vector<std::vector<DatasetRecord>> groups;
  if (task == Task::HiddenRole) {
    const GameConfig config =
        validate_config(config_override.value_or(hidden_role_preset(subset)));
    groups = parallel_map<std::vector<DatasetRecord>>(
        static_cast<std::size_t>(count),
        [&](std::size_t i) {
          const std::uint64_t instance_seed =
              derive_subseed(seed, static_cast<std::uint64_t>(i));
          const GameInstance instance =
              generate_solvable(config, instance_seed, options.max_attempts);
          return build_hidden_role_records(instance, to_string(subset),
                                           static_cast<int>(i), seed);
        },
        options.jobs);
  } else if (task == Task::SocialGraph) {
    groups = parallel_map<std::vector<DatasetRecord>>(
        static_cast<std::size_t>(count),
        [&](std::size_t i) {
          const std::uint64_t instance_seed =
              derive_subseed(seed, static_cast<std::uint64_t>(i));
          return build_graph_records(subset, static_cast<int>(i), instance_seed,
                                     seed);
        },
        options.jobs);
  } else {
    throw InvalidConfigError(std::string("generation supports tasks '") +
                             to_string(Task::HiddenRole) + "' and '" +
                             to_string(Task::SocialGraph) + "'");
  }
  std::vector<DatasetRecord> records;
  for (auto& group : groups) {
    records.insert(records.end(), std::make_move_iterator(group.begin()),
                   std::make_move_iterator(group.end()));
  }
  return records;
}

struct VerifyReport {
  int total = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<std::string> failures;  // "instance_id: reason"

  bool ok() const { return failed == 0; }
};

namespace detail {

struct GroupOutcome {
  int records = 0;
  bool skipped = false;
  std::vector<std::string> failures;
};

inline void expect(std::vector<std::string>& failures, const std::string& id,
                   bool condition, const std::string& reason) {
  if (!condition) failures.push_back(id + ": " + reason);
}

// Hidden-role group: re-simulate from the recorded sub-seed, regenerate
// all per-round records, and demand byte equality plus solver soundness,
// final-round uniqueness, and oracle agreement.
inline GroupOutcome verify_hidden_role_group(
    const std::vector<const DatasetRecord*>& group) {
  GroupOutcome outcome;
  outcome.records = static_cast<int>(group.size());
  const DatasetRecord& head = *group.front();
  const std::string& id = head.instance_id;
  auto& failures = outcome.failures;

  GameConfig config;
  try {
    config = config_from_json(head.metadata.at("config"));
  } catch (const std::exception& e) {
    failures.push_back(id + ": unusable config echo (" + e.what() + ")");
    return outcome;
  }
  config.seed = head.seed;
  const std::uint64_t master_seed = head.metadata.value("master_seed", head.seed);
  const int index = head.metadata.value("index", 0);

  GameInstance instance;
  try {
    instance = simulate_game(config);
  } catch (const std::exception& e) {
    failures.push_back(id + ": re-simulation failed (" + e.what() + ")");
    return outcome;
  }

  std::vector<DatasetRecord> rebuilt;
  try {
    rebuilt = build_hidden_role_records(instance, head.subset, index, master_seed);
  } catch (const std::exception& e) {
    failures.push_back(id + ": record rebuild failed (" + e.what() + ")");
    return outcome;
  }

  expect(failures, id, group.size() == rebuilt.size(),
         "expected " + std::to_string(rebuilt.size()) + " per-round records, found " +
             std::to_string(group.size()));

  const Solution truth{instance.criminal, instance.p1_true_role};
  for (const DatasetRecord* record : group) {
    const int round = record->round.value_or(0);
    if (round < 1 || round > config.rounds) {
      failures.push_back(id + ": round " + std::to_string(round) + " out of range");
      continue;
    }
    const DatasetRecord& expected = rebuilt[static_cast<std::size_t>(round - 1)];
    expect(failures, id, record_to_json(*record) == record_to_json(expected),
           "record for round " + std::to_string(round) +
               " differs from regeneration");

    const ObserverView view = view_at_round(instance, round);
    const SolveResult result = solve(view);
    const bool sound = std::find(result.solutions.begin(), result.solutions.end(),
                                 truth) != result.solutions.end();
    expect(failures, id, sound,
           "truth missing from solution set at round " + std::to_string(round));
    if (round == config.rounds) {
      expect(failures, id, result.unique, "final round is not uniquely solvable");
      expect(failures, id,
             result.unique && result.solutions.front() == truth,
             "unique solution disagrees with instance truth");
      const json& gold = record->gold;
      expect(failures, id,
             gold.value("criminal", -1) == instance.criminal.value &&
                 gold.value("p1_role", std::string()) ==
                     to_string(instance.p1_true_role),
             "gold answer disagrees with instance truth");
      if (config.players <= 12) {
        const std::vector<Solution> oracle = brute_force_oracle(view);
        expect(failures, id, oracle == result.solutions,
               "brute-force oracle disagrees with solver");
      }
    }
  }
  return outcome;
}

// Graph group: regenerate all four records from (subset, seed) and demand
// byte equality plus axiom checks on the regenerated instance.
inline GroupOutcome verify_graph_group(
    const std::vector<const DatasetRecord*>& group) {
  GroupOutcome outcome;
  outcome.records = static_cast<int>(group.size());
  const DatasetRecord& head = *group.front();
  const std::string& id = head.instance_id;
  auto& failures = outcome.failures;

  const Difficulty difficulty =
      head.subset == "hard" ? Difficulty::Hard : Difficulty::Easy;
  if (head.subset != "easy" && head.subset != "hard") {
    failures.push_back(id + ": unknown subset '" + head.subset + "'");
    return outcome;
  }
  const std::uint64_t master_seed = head.metadata.value("master_seed", head.seed);
  const int index = head.metadata.value("index", 0);

  std::vector<DatasetRecord> rebuilt;
  try {
    rebuilt = build_graph_records(difficulty, index, head.seed, master_seed);
  } catch (const std::exception& e) {
    failures.push_back(id + ": record rebuild failed (" + e.what() + ")");
    return outcome;
  }
  std::map<std::string, const DatasetRecord*> by_kind;
  for (const DatasetRecord& r : rebuilt) by_kind[r.query.value_or("")] = &r;

  expect(failures, id, group.size() == rebuilt.size(),
         "expected " + std::to_string(rebuilt.size()) + " query records, found " +
             std::to_string(group.size()));

  for (const DatasetRecord* record : group) {
    const std::string kind = record->query.value_or("");
    const auto it = by_kind.find(kind);
    if (it == by_kind.end()) {
      failures.push_back(id + ": unexpected query kind '" + kind + "'");
      continue;
    }
    expect(failures, id, record_to_json(*record) == record_to_json(*it->second),
           "record for query '" + kind + "' differs from regeneration");
  }

  Rng rng(head.seed);
  const SocialGraphInstance inst = generate_graph(difficulty, rng);
  expect(failures, id, check_axioms(inst), "regenerated instance violates axioms");
  expect(failures, id, recompute_partition(inst) == inst.partition,
         "statement-derived partition disagrees with stored partition");
  return outcome;
}

}  // namespace detail

// Independent re-check of a dataset file: every hidden-role and graph
// record must regenerate byte-identically from its recorded seed and pass
// its task's oracle checks. Other tasks are counted as skipped.
inline VerifyReport verify_dataset(const std::vector<DatasetRecord>& records,
                                   int jobs = 0) {
  VerifyReport report;
  report.total = static_cast<int>(records.size());

  std::vector<std::pair<std::string, std::vector<const DatasetRecord*>>> groups;
  std::map<std::string, std::size_t> group_index;
  for (const DatasetRecord& r : records) {
    const std::string key = r.task + "/" + r.instance_id;
    const auto it = group_index.find(key);
    if (it == group_index.end()) {
      group_index.emplace(key, groups.size());
      groups.push_back({key, {&r}});
    } else {
      groups[it->second].second.push_back(&r);
    }
  }

  const auto outcomes = parallel_map<detail::GroupOutcome>(
      groups.size(),
      [&](std::size_t i) {
        const auto& [key, members] = groups[i];
        const std::string task = members.front()->task;
        if (task == to_string(Task::HiddenRole)) {
          return detail::verify_hidden_role_group(members);
        }
        if (task == to_string(Task::SocialGraph)) {
          return detail::verify_graph_group(members);
        }
        detail::GroupOutcome outcome;
        outcome.records = static_cast<int>(members.size());
        outcome.skipped = true;
        return outcome;
      },
      jobs);

  for (const auto& outcome : outcomes) {
    if (outcome.skipped) {
      report.skipped += outcome.records;
    } else if (outcome.failures.empty()) {
      report.passed += outcome.records;
    } else {
      report.failed += outcome.records;
      report.failures.insert(report.failures.end(), outcome.failures.begin(),
                             outcome.failures.end());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// File helpers

inline std::vector<DatasetRecord> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open dataset file '" + path + "'");
  return read_records(in);
}

inline void save_dataset(const std::string& path,
                         const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_records(out, records);
  if (!out.flush()) throw ConfigError("failed writing '" + path + "'");
}

inline std::vector<EvalRecord> load_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open transcript file '" + path + "'");
  return read_eval_records(in);
}

inline void save_transcript(const std::string& path,
                            const std::vector<EvalRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write_eval_records(out, records);
  if (!out.flush()) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace maze
