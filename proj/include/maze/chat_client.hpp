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

// Minimal chat-completions client for running datasets against an HTTP
// endpoint: bounded retry with exponential backoff on transport errors and
// retryable statuses, a worker pool with per-worker connections, and
// per-record failure capture that never aborts the run.

#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "maze/errors.hpp"
#include "maze/harness.hpp"
#include "maze/metrics.hpp"
#include "maze/textio.hpp"

namespace maze {

struct EndpointConfig {
  std::string base_url;  // e.g. "http://127.0.0.1:8089/v1"
  std::string model;
  std::string api_key;
  double temperature = 0.7;
  int timeout_ms = 120000;
  int max_retries = 3;  // retries after the first attempt
  int concurrency = 4;
};

struct ChatResult {
  bool ok = false;
  std::string text;
  std::string error;
};

namespace detail {

struct SplitUrl {
  std::string host;  // scheme://authority
  std::string path_prefix;
};

inline SplitUrl split_base_url(const std::string& base_url) {
  const std::size_t scheme = base_url.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint URL must start with http:// or https://");
  }
  const std::size_t slash = base_url.find('/', scheme + 3);
  SplitUrl out;
  if (slash == std::string::npos) {
    out.host = base_url;
  } else {
    out.host = base_url.substr(0, slash);
    out.path_prefix = base_url.substr(slash);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') {
      out.path_prefix.pop_back();
    }
  }
  return out;
}

inline bool retryable_status(int status) {
  return status == 429 || (status >= 500 && status < 600);
}

}  // namespace detail

// One prompt against the endpoint through an existing connection.
// Transport errors and retryable statuses back off exponentially up to
// config.max_retries; a well-formed HTTP response with a malformed body is
// a terminal failure (resending the same request cannot fix it).
inline ChatResult chat_once(httplib::Client& client,
                            const std::string& path_prefix,
                            const EndpointConfig& config,
                            const std::string& prompt) {
  json request = json::object();
  request["model"] = config.model;
  request["messages"] =
      json::array({json::object({{"role", "user"}, {"content", prompt}})});
  request["temperature"] = config.temperature;
  const std::string body = request.dump();
  const std::string path = path_prefix + "/chat/completions";

  httplib::Headers headers = {
      {"Authorization", "Bearer " + config.api_key},
  };

  std::string last_error;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    if (attempt > 0) {
      const int shift = std::min(attempt - 1, 4);
      std::this_thread::sleep_for(std::chrono::milliseconds(250 << shift));
    }
    httplib::Result res =
        client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (detail::retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      return ChatResult{false, "", "HTTP " + std::to_string(res->status)};
    }
    try {
      const json response = json::parse(res->body);
      return ChatResult{
          true,
          response.at("choices").at(0).at("message").at("content")
              .get<std::string>(),
          ""};
    } catch (const json::exception& e) {
      return ChatResult{false, "",
                        std::string("malformed response body: ") + e.what()};
    }
  }
  return ChatResult{false, "", last_error + " (retries exhausted)"};
}

// Runs every dataset record against the endpoint. Request failures and
// unparseable answers become EvalRecords with notes; nothing aborts the
// run. Results keep dataset order regardless of scheduling.
inline std::vector<EvalRecord> run_transcript(
    const std::vector<DatasetRecord>& records, const EndpointConfig& config) {
  if (config.api_key.empty()) {
    throw ConfigError("no API credential; set the MAZE_API_KEY environment variable");
  }
  const detail::SplitUrl url = detail::split_base_url(config.base_url);

  struct Worker {
    std::unique_ptr<httplib::Client> client;
  };

  const int jobs =
      std::max(1, std::min<int>(config.concurrency,
                                static_cast<int>(records.empty() ? 1 : records.size())));
  std::vector<Worker> workers(static_cast<std::size_t>(jobs));

  std::atomic<std::size_t> next{0};
  std::vector<EvalRecord> results(records.size());
  const auto run_one = [&](Worker& worker, std::size_t i) {
    const DatasetRecord& record = records[i];
    EvalRecord eval;
    eval.task = record.task;
    eval.subset = record.subset;
    eval.instance_id = record.instance_id;
    eval.seed = record.seed;
    eval.round = record.round;
    eval.query = record.query;
    eval.gold = record.gold;
    eval.model = config.model;

    const ChatResult chat =
        chat_once(*worker.client, url.path_prefix, config, record.prompt);
    if (!chat.ok) {
      eval.raw_text = "";
      eval.parsed = json();
      eval.parse_note = "request failed: " + chat.error;
      results[i] = std::move(eval);
      return;
    }
    eval.raw_text = chat.text;
    const std::optional<Task> task = task_from_string(record.task);
    const std::optional<QueryKind> kind =
        record.query ? query_kind_from_string(*record.query)
                     : std::optional<QueryKind>{};
    if (task) {
      const ParseOutcome outcome = parse_answer(*task, chat.text, kind);
      if (outcome.ok()) {
        eval.parsed = parsed_to_json(*outcome.answer);
      } else {
        eval.parsed = json();
        eval.parse_note = outcome.note;
      }
    } else {
      eval.parsed = json();
      eval.parse_note = "unknown task '" + record.task + "'";
    }
    results[i] = std::move(eval);
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t] {
      Worker& worker = workers[static_cast<std::size_t>(t)];
      worker.client = std::make_unique<httplib::Client>(url.host);
      worker.client->set_connection_timeout(
          std::chrono::milliseconds(config.timeout_ms));
      worker.client->set_read_timeout(std::chrono::milliseconds(config.timeout_ms));
      worker.client->set_write_timeout(std::chrono::milliseconds(config.timeout_ms));
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= records.size()) return;
        run_one(worker, i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace maze
