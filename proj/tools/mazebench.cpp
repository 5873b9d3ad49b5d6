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

// Command-line front end: generate | verify | run | score.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maze/chat_client.hpp"
#include "maze/harness.hpp"
#include "maze/metrics.hpp"

namespace {

maze::Task parse_task(const std::string& name) {
  const auto task = maze::task_from_string(name);
  if (!task) throw maze::ConfigError("unknown task '" + name + "'");
  return *task;
}

maze::Difficulty parse_subset(const std::string& name) {
  if (name == "easy") return maze::Difficulty::Easy;
  if (name == "hard") return maze::Difficulty::Hard;
  throw maze::ConfigError("subset must be 'easy' or 'hard', got '" + name + "'");
}

std::array<double, 4> parse_weights(const std::string& text) {
  if (text == "equal") return maze::kEqualP1RoleWeights;
  if (text == "skewed") return maze::kSkewedP1RoleWeights;
  std::array<double, 4> weights{};
  std::istringstream stream(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(stream, part, ':')) {
    if (i >= weights.size()) break;
    try {
      weights[i++] = std::stod(part);
    } catch (const std::exception&) {
      throw maze::ConfigError("cannot parse weight '" + part + "'");
    }
  }
  if (i != weights.size() || stream.peek() != std::istringstream::traits_type::eof()) {
    throw maze::ConfigError(
        "--p1-weights takes 'equal', 'skewed', or four colon-separated "
        "numbers (investigator:criminal:rumormonger:lunatic)");
  }
  return weights;
}

int cmd_generate(const std::string& task_str, const std::string& subset_str,
                 int count, std::uint64_t seed, const std::string& out_path,
                 const std::optional<maze::GameConfig>& config_override,
                 const maze::GenerateOptions& options) {
  const maze::Task task = parse_task(task_str);
  const maze::Difficulty subset = parse_subset(subset_str);
  const auto records = maze::generate_dataset(task, subset, count, seed,
                                              options, config_override);
  maze::save_dataset(out_path, records);
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return 0;
}

int cmd_verify(const std::string& path, int jobs) {
  const auto records = maze::load_dataset(path);
  const maze::VerifyReport report = maze::verify_dataset(records, jobs);
  std::cout << "checked " << report.total << " records: " << report.passed
            << " passed, " << report.failed << " failed, " << report.skipped
            << " skipped\n";
  const std::size_t shown = std::min<std::size_t>(report.failures.size(), 25);
  for (std::size_t i = 0; i < shown; ++i) {
    std::cout << "  FAIL " << report.failures[i] << "\n";
  }
  if (report.failures.size() > shown) {
    std::cout << "  ... " << (report.failures.size() - shown) << " more\n";
  }
  return report.ok() ? 0 : 1;
}

int cmd_run(const std::string& dataset_path, maze::EndpointConfig config,
            const std::string& out_path) {
  const char* key = std::getenv("MAZE_API_KEY");
  if (key == nullptr || *key == '\0') {
    throw maze::ConfigError(
        "no API credential; set the MAZE_API_KEY environment variable");
  }
  config.api_key = key;
  const auto records = maze::load_dataset(dataset_path);
  const auto results = maze::run_transcript(records, config);
  maze::save_transcript(out_path, results);
  int failures = 0;
  for (const auto& r : results) {
    if (r.parsed.is_null()) ++failures;
  }
  std::cout << "wrote " << results.size() << " responses to " << out_path
            << " (" << failures << " unparseable)\n";
  return 0;
}

int cmd_score(const std::string& path, const std::string& by, bool as_json) {
  const auto records = maze::load_transcript(path);
  maze::MetricsTable table = maze::score(records);
  if (by == "round") {
    table.by_assigned_role.clear();
    table.by_true_role.clear();
    table.by_query.clear();
  } else if (by == "role") {
    table.by_round.clear();
    table.by_query.clear();
  } else if (by == "query") {
    table.by_round.clear();
    table.by_assigned_role.clear();
    table.by_true_role.clear();
  } else if (!by.empty()) {
    throw maze::ConfigError("--by must be one of round|role|query");
  }
  if (as_json) {
    std::cout << maze::metrics_to_json(table).dump(2) << "\n";
  } else {
    maze::render_metrics_table(std::cout, table);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator, verifier, and evaluation harness for social "
               "deduction benchmark datasets"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a dataset file");
  std::string gen_task = "hidden-role";
  std::string gen_subset = "easy";
  int gen_count = 100;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  int gen_players = 0, gen_rounds = 0, gen_rumormongers = -1, gen_lunatics = -1;
  double gen_deception = -1.0;
  std::string gen_variant, gen_weights;
  maze::GenerateOptions gen_options;
  gen->add_option("--task", gen_task, "hidden-role or graph")
      ->capture_default_str();
  gen->add_option("--subset", gen_subset, "easy or hard")->capture_default_str();
  gen->add_option("--count", gen_count, "number of instances")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "master seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output dataset path")->required();
  gen->add_option("--players", gen_players, "hidden-role: player count");
  gen->add_option("--rounds", gen_rounds, "hidden-role: round count");
  gen->add_option("--rumormongers", gen_rumormongers,
                  "hidden-role: rumormonger count");
  gen->add_option("--lunatics", gen_lunatics, "hidden-role: lunatic count");
  gen->add_option("--deception-prob", gen_deception,
                  "hidden-role: criminal/lunatic accusation probability");
  gen->add_option("--variant", gen_variant,
                  "hidden-role: original|rumormonger|lunatic|full");
  gen->add_option("--p1-weights", gen_weights,
                  "hidden-role: equal, skewed, or i:c:r:l");
  gen->add_option("--max-attempts", gen_options.max_attempts,
                  "hidden-role: rejection-sampling budget per instance")
      ->capture_default_str();
  gen->add_option("--jobs", gen_options.jobs, "worker threads (0 = auto)")
      ->capture_default_str();

  // verify
  auto* ver = app.add_subcommand("verify", "Re-check a dataset file");
  std::string ver_path;
  int ver_jobs = 0;
  ver->add_option("file", ver_path, "dataset path")->required();
  ver->add_option("--jobs", ver_jobs, "worker threads (0 = auto)")
      ->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Send a dataset to a chat endpoint");
  std::string run_path, run_out;
  maze::EndpointConfig endpoint;
  run->add_option("file", run_path, "dataset path")->required();
  run->add_option("--endpoint", endpoint.base_url,
                  "base URL, e.g. http://host:port/v1")
      ->required();
  run->add_option("--model", endpoint.model, "model name")->required();
  run->add_option("--out", run_out, "output transcript path")->required();
  run->add_option("--concurrency", endpoint.concurrency,
                  "max in-flight requests")
      ->capture_default_str();
  run->add_option("--temperature", endpoint.temperature, "sampling temperature")
      ->capture_default_str();
  run->add_option("--timeout-ms", endpoint.timeout_ms, "per-request timeout")
      ->capture_default_str();
  run->add_option("--max-retries", endpoint.max_retries,
                  "retries per request on transient failures")
      ->capture_default_str();

  // score
  auto* sc = app.add_subcommand("score", "Score a transcript file");
  std::string score_path, score_by;
  bool score_json = false;
  sc->add_option("file", score_path, "transcript path")->required();
  sc->add_option("--by", score_by, "limit breakdown: round|role|query");
  sc->add_flag("--json", score_json, "emit metrics as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::optional<maze::GameConfig> override_config;
      const bool has_override = gen->count("--players") || gen->count("--rounds") ||
                                gen->count("--rumormongers") ||
                                gen->count("--lunatics") ||
                                gen->count("--deception-prob") ||
                                gen->count("--variant") ||
                                gen->count("--p1-weights");
      if (has_override) {
        if (parse_task(gen_task) != maze::Task::HiddenRole) {
          throw maze::ConfigError(
              "game configuration flags only apply to --task hidden-role");
        }
        maze::GameConfig config =
            maze::hidden_role_preset(parse_subset(gen_subset));
        if (gen->count("--players")) config.players = gen_players;
        if (gen->count("--rounds")) config.rounds = gen_rounds;
        if (gen->count("--rumormongers")) config.rumormongers = gen_rumormongers;
        if (gen->count("--lunatics")) config.lunatics = gen_lunatics;
        if (gen->count("--deception-prob")) config.deception_prob = gen_deception;
        if (gen->count("--variant")) {
          const auto variant = maze::variant_from_string(gen_variant);
          if (!variant) {
            throw maze::ConfigError("unknown variant '" + gen_variant + "'");
          }
          config.variant = *variant;
        }
        if (gen->count("--p1-weights")) {
          config.p1_role_weights = parse_weights(gen_weights);
        }
        override_config = config;
      }
      return cmd_generate(gen_task, gen_subset, gen_count, gen_seed, gen_out,
                          override_config, gen_options);
    }
    if (ver->parsed()) return cmd_verify(ver_path, ver_jobs);
    if (run->parsed()) return cmd_run(run_path, endpoint, run_out);
    if (sc->parsed()) return cmd_score(score_path, score_by, score_json);
  } catch (const maze::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
