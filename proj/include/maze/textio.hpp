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

// Deterministic text layer: statement/relation rendering with exact
// inverse parsers, versioned prompt templates, answer-grammar extraction
// from free-form model output, and line-delimited JSON dataset files.

#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "maze/core.hpp"
#include "maze/errors.hpp"
#include "maze/social_graph.hpp"

namespace maze {

using json = nlohmann::ordered_json;

enum class Task {
  HiddenRole,
  FindTheSpy,
  RatingEstimation,
  SocialGraph,
  ReviewDecision,
  UserProfile,
};

inline const char* to_string(Task task) {
  switch (task) {
    case Task::HiddenRole: return "hidden-role";
    case Task::FindTheSpy: return "spy";
    case Task::RatingEstimation: return "rating";
    case Task::SocialGraph: return "graph";
    case Task::ReviewDecision: return "review";
    case Task::UserProfile: return "profile";
  }
  return "?";
}

inline std::optional<Task> task_from_string(const std::string& s) {
  for (Task t : {Task::HiddenRole, Task::FindTheSpy, Task::RatingEstimation,
                 Task::SocialGraph, Task::ReviewDecision, Task::UserProfile}) {
    if (s == to_string(t)) return t;
  }
  return std::nullopt;
}

inline const char* to_string(QueryKind kind) {
  switch (kind) {
    case QueryKind::Pairwise: return "pairwise";
    case QueryKind::Neighbors: return "neighbors";
    case QueryKind::GroupCount: return "group-count";
    case QueryKind::PairCounts: return "pair-counts";
  }
  return "?";
}

inline std::optional<QueryKind> query_kind_from_string(const std::string& s) {
  for (QueryKind k : {QueryKind::Pairwise, QueryKind::Neighbors,
                      QueryKind::GroupCount, QueryKind::PairCounts}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Statement / relation lines

inline std::string render_statement(const Statement& s) {
  std::string out = "Player " + std::to_string(s.speaker.value) +
                    " says Player " + std::to_string(s.target.value);
  out += s.claim == Claim::IsCriminal ? " is the criminal" : " is not the criminal";
  return out;
}

// Inverse of render_statement; the round is not part of the rendered line
// and must be supplied by the caller.
inline std::optional<Statement> parse_statement(const std::string& text,
                                                int round) {
  static const std::regex re(
      R"(^Player (\d+) says Player (\d+) is (the criminal|not the criminal)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  if (m[1].str().size() > 8 || m[2].str().size() > 8) return std::nullopt;
  Statement s;
  s.round = round;
  s.speaker = PlayerId(std::stoi(m[1].str()));
  s.target = PlayerId(std::stoi(m[2].str()));
  s.claim = m[3].str() == "the criminal" ? Claim::IsCriminal : Claim::IsNotCriminal;
  return s;
}

inline std::string render_relation(const RelationStatement& st) {
  std::string out = "Person ";
  out += st.a.label();
  out += " and Person ";
  out += st.b.label();
  out += st.polarity == Polarity::Good ? " have a good relationship"
                                       : " have a bad relationship";
  return out;
}

inline std::optional<RelationStatement> parse_relation(const std::string& text) {
  static const std::regex re(
      R"(^Person ([A-Z]) and Person ([A-Z]) have a (good|bad) relationship$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  RelationStatement st;
  st.a = PersonId{m[1].str()[0] - 'A'};
  st.b = PersonId{m[2].str()[0] - 'A'};
  st.polarity = m[3].str() == "good" ? Polarity::Good : Polarity::Bad;
  return st;
}

// ---------------------------------------------------------------------------
// Prompt templates (versioned assets; templates/ holds the same text)

inline constexpr const char* kTemplateVersion = "v1";

inline constexpr const char* kHiddenRoleTemplate =
    R"TPL(You are an expert in social reasoning participating in a social deduction game.

Game Setup:
- Players: {player_count} total (including yourself)
- Roles: {role_counts}

Game Mechanics:
- Rounds: {round_count}
- Actions per Round: Each player makes one statement about another player (claiming if they are the criminal or not).
- Role Behaviors:
{role_behaviors}
- Key Rule: Only Investigators provide consistently truthful information.

Your Role:
You are Player #1, and you have been told that you are the {shown_role}.

Game Record:
{statements}

Your Task:
After each round, analyze all statements made so far. Deduce the most likely criminal and the role of each player based on the available information.

Output Format:
After each round, provide your judgment exactly as follows:

Final Judgment:
- Final Criminal Is Player [Criminal Player Number].
- My Role Is [Player 1's Role or "Unknown"].

Think step-by-step internally, but only output the Final Judgment in the specified format. Update your judgment each round as more information becomes available. If you cannot determine your own role with confidence (despite being told), state "Unknown".
)TPL";

namespace detail {

inline constexpr const char* kGraphRulesAndContext =
    R"TPL(You are analyzing social relationships based on defined rules.

Relationship Rules:
1. Relationship Types: 'good' or 'bad'.
2. Transitive Properties:
  - Good-Good Transitivity: If A-good-B and B-good-C, then A-good-C.
  - Bad Relationship Inference: If A-bad-B and A-good-C, then B-bad-C.
3. Group Definition: A 'group' is a set where every person has a 'good' relationship with every other person in that set (directly or via transitivity).
4. Group Separation: People are in the same group if and only if they have good relationships. Groups are distinct; if anyone from Group 1 has a bad relationship with anyone from Group 2, then everyone in Group 1 has a bad relationship with everyone in Group 2.

Context:
There are {person_count} people total, labeled A to {last_label}. You will be given a list of known relationships.

)TPL";

}  // namespace detail

inline const std::string kGraphPairwiseTemplate =
    std::string(detail::kGraphRulesAndContext) +
    R"TPL(Your Task:
Based strictly on the provided relationship list and the rules above (including applying transitivity), determine whether the specific relationship mentioned in the question is 'good' or 'bad', and answer 'Yes' if it's good, 'No' if it's bad.

Relationship List:
{relationships}

Question: Do {a} and {b} have a good relationship?

Output Format:
Provide your answer exactly as follows:
Final Answer: <Yes/No>
)TPL";

inline const std::string kGraphNeighborsTemplate =
    std::string(detail::kGraphRulesAndContext) +
    R"TPL(Your Task:
Based strictly on the provided relationship list and the rules above (including applying transitivity), identify all people who have a 'good' relationship with the person specified in the question.

Relationship List:
{relationships}

Question: Who has a good relationship with {person}?

Output Format:
List the names in alphabetical order, separated by commas. If no one has a good relationship with the specified person (other than themselves, if applicable based on rules interpretation - assume self-relationships are not listed unless explicitly stated), answer 'No one'. Provide your answer exactly as follows:
Final Answer: <list of people or 'No one'>
)TPL";

inline const std::string kGraphGroupCountTemplate =
    std::string(detail::kGraphRulesAndContext) +
    R"TPL(Your Task:
Based strictly on the provided relationship list and the rules above, determine the total number of distinct groups of people.

Relationship List:
{relationships}

Question: How many distinct groups of people are there?

Output Format:
Provide your answer exactly as follows:
Final Answer: <number>
)TPL";

inline const std::string kGraphPairCountsTemplate =
    std::string(detail::kGraphRulesAndContext) +
    R"TPL(Your Task:
Based strictly on the provided relationship list and the rules above (including applying transitivity), count the total number of pairs of people who have 'good' relationships and the total number of pairs who have 'bad' relationships across all {person_count} people.

Relationship List:
{relationships}

Question: How many pairs have good relationships, and how many pairs have bad relationships?

Output Format:
Provide your answer exactly as follows:
Final Answer: X pairs have good relationships, Y pairs have bad relationships
)TPL";

inline const std::string& graph_template(QueryKind kind) {
  switch (kind) {
    case QueryKind::Pairwise: return kGraphPairwiseTemplate;
    case QueryKind::Neighbors: return kGraphNeighborsTemplate;
    case QueryKind::GroupCount: return kGraphGroupCountTemplate;
    case QueryKind::PairCounts: return kGraphPairCountsTemplate;
  }
  return kGraphPairwiseTemplate;
}

// Replaces every {key}; refuses templates that leave a placeholder behind
// or values that never land.
inline std::string fill_template(const std::string& body,
                                 const std::map<std::string, std::string>& values) {
  std::string out = body;
  for (const auto& [key, value] : values) {
    const std::string marker = "{" + key + "}";
    bool replaced = false;
    std::size_t pos = 0;
    while ((pos = out.find(marker, pos)) != std::string::npos) {
      out.replace(pos, marker.size(), value);
      pos += value.size();
      replaced = true;
    }
    if (!replaced) {
      throw TemplateMismatchError("placeholder '" + marker +
                                  "' not present in template");
    }
  }
  static const std::regex leftover(R"(\{[a-z][a-z0-9_]*\})");
  std::smatch m;
  if (std::regex_search(out, m, leftover)) {
    throw TemplateMismatchError("unfilled placeholder '" + m.str() +
                                "' in rendered prompt");
  }
  return out;
}

namespace detail {

inline std::string role_counts_line(const RoleCounts& counts) {
  std::string out;
  for (TrueRole role : kAllTrueRoles) {
    const int c = counts.count_of(role);
    if (c == 0) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(c) + " " + std::string(to_string(role)) + "(s)";
  }
  return out;
}

inline std::string role_behaviors_block(const RoleCounts& counts) {
  static const std::map<TrueRole, const char*> lines = {
      {TrueRole::Investigator,
       "Investigators: Always provide truthful information about who is a "
       "Criminal."},
      {TrueRole::Criminal,
       "Criminals: May make truthful or false statements to confuse others."},
      {TrueRole::Rumormonger,
       "Rumormongers: Believe they are Investigators but may provide "
       "incorrect statements."},
      {TrueRole::Lunatic,
       "Lunatics: Believe they are Criminals and may make truthful or false "
       "statements."},
  };
  std::string out;
  for (TrueRole role : kAllTrueRoles) {
    if (counts.count_of(role) == 0) continue;
    if (!out.empty()) out += "\n";
    out += "  - ";
    out += lines.at(role);
  }
  return out;
}

inline std::string statements_block(const InteractionLog& log) {
  std::string out;
  for (std::size_t r = 0; r < log.rounds.size(); ++r) {
    if (!out.empty()) out += "\n";
    out += "Round " + std::to_string(r + 1) + ":";
    for (const Statement& s : log.rounds[r]) {
      out += "\n- " + render_statement(s);
    }
  }
  return out;
}

}  // namespace detail

// Hidden-role evaluation prompt for the observer at a given round prefix.
inline std::string render_prompt(const ObserverView& view) {
  return fill_template(
      kHiddenRoleTemplate,
      {{"player_count", std::to_string(view.players)},
       {"role_counts", detail::role_counts_line(view.role_counts)},
       {"round_count", std::to_string(view.total_rounds)},
       {"role_behaviors", detail::role_behaviors_block(view.role_counts)},
       {"shown_role", std::string(to_string(view.p1_shown_role))},
       {"statements", detail::statements_block(view.log_prefix)}});
}

struct GraphQuery {
  QueryKind kind = QueryKind::Pairwise;
  PersonId a;       // pairwise
  PersonId b;       // pairwise
  PersonId person;  // neighbors
};

inline std::string render_prompt(const SocialGraphInstance& inst,
                                 const GraphQuery& query) {
  std::string relationships;
  for (const RelationStatement& st : inst.statements) {
    if (!relationships.empty()) relationships += "\n";
    relationships += "- " + render_relation(st);
  }
  std::map<std::string, std::string> values = {
      {"person_count", std::to_string(inst.n)},
      {"last_label", std::string(1, PersonId{inst.n - 1}.label())},
      {"relationships", relationships},
  };
  switch (query.kind) {
    case QueryKind::Pairwise:
      detail::require_person(inst, query.a);
      detail::require_person(inst, query.b);
      values.emplace("a", std::string(1, query.a.label()));
      values.emplace("b", std::string(1, query.b.label()));
      break;
    case QueryKind::Neighbors:
      detail::require_person(inst, query.person);
      values.emplace("person", std::string(1, query.person.label()));
      break;
    case QueryKind::GroupCount:
    case QueryKind::PairCounts:
      break;
  }
  return fill_template(graph_template(query.kind), values);
}

// ---------------------------------------------------------------------------
// Answer grammars

struct HiddenRoleAnswer {
  PlayerId criminal;
  std::optional<TrueRole> self_role;  // nullopt = "Unknown"

  bool operator==(const HiddenRoleAnswer&) const = default;
};

struct SpyAnswer {
  PlayerId spy;

  bool operator==(const SpyAnswer&) const = default;
};

struct RatingAnswer {
  int rating = 0;  // 1..5

  bool operator==(const RatingAnswer&) const = default;
};

struct GraphNumberAnswer {
  long long value = 0;

  bool operator==(const GraphNumberAnswer&) const = default;
};

struct GraphYesNoAnswer {
  bool yes = false;

  bool operator==(const GraphYesNoAnswer&) const = default;
};

struct GraphNamesAnswer {
  std::vector<PersonId> names;  // empty = "No one"

  bool operator==(const GraphNamesAnswer&) const = default;
};

struct GraphPairCountsAnswer {
  long long good = 0;
  long long bad = 0;

  bool operator==(const GraphPairCountsAnswer&) const = default;
};

struct DecisionAnswer {
  bool accept = false;

  bool operator==(const DecisionAnswer&) const = default;
};

struct ProfileAnswer {
  std::string age_group;  // "18-34" | "35-54" | "55+"
  std::string gender;     // "Male" | "Female" | "Non-binary"

  bool operator==(const ProfileAnswer&) const = default;
};

using ParsedAnswer =
    std::variant<HiddenRoleAnswer, SpyAnswer, RatingAnswer, GraphNumberAnswer,
                 GraphYesNoAnswer, GraphNamesAnswer, GraphPairCountsAnswer,
                 DecisionAnswer, ProfileAnswer>;

// parse_answer never throws on arbitrary text; absence of `answer` means
// Unparseable, with the expected grammar named in `note`.
struct ParseOutcome {
  std::optional<ParsedAnswer> answer;
  std::string note;

  bool ok() const { return answer.has_value(); }
};

namespace detail {

// Last full match of `re` in `text`; models restate their final answer
// after reasoning, so the last occurrence wins.
inline std::optional<std::smatch> last_match(const std::string& text,
                                             const std::regex& re) {
  std::optional<std::smatch> found;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it) {
    found = *it;
  }
  return found;
}

inline ParseOutcome unparseable(const std::string& grammar) {
  return ParseOutcome{std::nullopt, "expected " + grammar};
}

// Bounded numeric conversion; overlong digit runs parse as failure rather
// than throwing out of parse_answer.
inline std::optional<long long> to_number(const std::string& digits) {
  if (digits.size() > 18) return std::nullopt;
  try {
    return std::stoll(digits);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline ParseOutcome parse_hidden_role(const std::string& text) {
  static const std::regex crim_re(
      R"(Final\s+Criminal\s+Is\s+Player\s*#?\s*(\d+))", std::regex::icase);
  static const std::regex role_re(
      R"(My\s+Role\s+Is\s*:?\s*"?(Investigator|Criminal|Rumormonger|Lunatic|Unknown))",
      std::regex::icase);
  const auto crim = last_match(text, crim_re);
  const std::optional<long long> number =
      crim ? to_number((*crim)[1].str()) : std::optional<long long>{};
  if (!number) {
    return unparseable("'Final Criminal Is Player N' with optional 'My Role Is R'");
  }
  HiddenRoleAnswer answer;
  answer.criminal = PlayerId(static_cast<int>(*number));
  if (const auto role = last_match(text, role_re)) {
    const std::string r = lower((*role)[1].str());
    if (r == "investigator") answer.self_role = TrueRole::Investigator;
    else if (r == "criminal") answer.self_role = TrueRole::Criminal;
    else if (r == "rumormonger") answer.self_role = TrueRole::Rumormonger;
    else if (r == "lunatic") answer.self_role = TrueRole::Lunatic;
    // "unknown" leaves self_role empty
  }
  return ParseOutcome{answer, ""};
}

inline ParseOutcome parse_spy(const std::string& text) {
  static const std::regex re(R"(Final\s+Answer\s*:\s*Player\s*#?\s*(\d+))",
                             std::regex::icase);
  const auto m = last_match(text, re);
  const std::optional<long long> number =
      m ? to_number((*m)[1].str()) : std::optional<long long>{};
  if (!number) return unparseable("'Final Answer: Player X'");
  return ParseOutcome{SpyAnswer{PlayerId(static_cast<int>(*number))}, ""};
}

inline ParseOutcome parse_rating(const std::string& text) {
  static const std::regex re(R"(Final\s+Rating\s*:\s*(\d+))", std::regex::icase);
  const auto m = last_match(text, re);
  const std::optional<long long> number =
      m ? to_number((*m)[1].str()) : std::optional<long long>{};
  if (!number || *number < 1 || *number > 5) {
    return unparseable("'Final Rating: X' with X in 1..5");
  }
  return ParseOutcome{RatingAnswer{static_cast<int>(*number)}, ""};
}

inline ParseOutcome parse_graph_number(const std::string& text) {
  static const std::regex re(R"(Final\s+Answer\s*:\s*(-?\d+))", std::regex::icase);
  const auto m = last_match(text, re);
  std::optional<long long> number;
  if (m) {
    std::string digits = (*m)[1].str();
    const bool negative = !digits.empty() && digits[0] == '-';
    number = to_number(negative ? digits.substr(1) : digits);
    if (number && negative) number = -*number;
  }
  if (!number) return unparseable("'Final Answer: <number>'");
  return ParseOutcome{GraphNumberAnswer{*number}, ""};
}

inline ParseOutcome parse_graph_yes_no(const std::string& text) {
  static const std::regex re(R"(Final\s+Answer\s*:\s*['"]?(Yes|No)\b)",
                             std::regex::icase);
  const auto m = last_match(text, re);
  if (!m) return unparseable("'Final Answer: <Yes/No>'");
  return ParseOutcome{GraphYesNoAnswer{lower((*m)[1].str()) == "yes"}, ""};
}

inline ParseOutcome parse_graph_names(const std::string& text) {
  static const std::regex line_re(R"(Final\s+Answer\s*:\s*([^\r\n]*))",
                                  std::regex::icase);
  const auto m = last_match(text, line_re);
  if (!m) return unparseable("'Final Answer: <list of people or 'No one'>'");
  std::string payload = (*m)[1].str();
  while (!payload.empty() &&
         (std::isspace(static_cast<unsigned char>(payload.back())) ||
          payload.back() == '.')) {
    payload.pop_back();
  }
  static const std::regex noone_re(R"(^['"]?No\s+one['"]?$)", std::regex::icase);
  if (std::regex_match(payload, noone_re)) {
    return ParseOutcome{GraphNamesAnswer{}, ""};
  }
  static const std::regex token_re(
      R"(^(?:Person\s+)?([A-Za-z])$)");
  GraphNamesAnswer answer;
  std::string token;
  std::istringstream stream(payload);
  bool any = false;
  while (std::getline(stream, token, ',')) {
    std::size_t first = token.find_first_not_of(" \t");
    if (first == std::string::npos) {
      return unparseable("'Final Answer: <list of people or 'No one'>'");
    }
    std::size_t last = token.find_last_not_of(" \t");
    token = token.substr(first, last - first + 1);
    if (token.size() >= 4 && lower(token.substr(0, 4)) == "and ") {
      token = token.substr(4);
    }
    std::smatch tm;
    if (!std::regex_match(token, tm, token_re)) {
      return unparseable("'Final Answer: <list of people or 'No one'>'");
    }
    const char c = static_cast<char>(
        std::toupper(static_cast<unsigned char>(tm[1].str()[0])));
    answer.names.push_back(PersonId{c - 'A'});
    any = true;
  }
  if (!any) return unparseable("'Final Answer: <list of people or 'No one'>'");
  std::sort(answer.names.begin(), answer.names.end());
  answer.names.erase(std::unique(answer.names.begin(), answer.names.end()),
                     answer.names.end());
  return ParseOutcome{answer, ""};
}

inline ParseOutcome parse_graph_pair_counts(const std::string& text) {
  static const std::regex re(
      R"((\d+)\s+pairs?\s+have\s+good\s+relationships?\s*,?\s*(?:and\s+)?(\d+)\s+pairs?\s+have\s+bad\s+relationships?)",
      std::regex::icase);
  const auto m = last_match(text, re);
  const std::optional<long long> good =
      m ? to_number((*m)[1].str()) : std::optional<long long>{};
  const std::optional<long long> bad =
      m ? to_number((*m)[2].str()) : std::optional<long long>{};
  if (!good || !bad) {
    return unparseable(
        "'X pairs have good relationships, Y pairs have bad relationships'");
  }
  return ParseOutcome{GraphPairCountsAnswer{*good, *bad}, ""};
}

inline ParseOutcome parse_decision(const std::string& text) {
  static const std::regex re(R"(Final\s+Decision\s*:\s*['"]?(Accept|Reject))",
                             std::regex::icase);
  const auto m = last_match(text, re);
  if (!m) return unparseable("'Final Decision: <Accept/Reject>'");
  return ParseOutcome{DecisionAnswer{lower((*m)[1].str()) == "accept"}, ""};
}

inline ParseOutcome parse_profile(const std::string& text) {
  static const std::regex age_re(R"(Age\s+Group\s*:\s*<?\s*(18-34|35-54|55\+))",
                                 std::regex::icase);
  static const std::regex gender_re(
      R"(Gender\s*:\s*<?\s*(Male|Female|Non-binary))", std::regex::icase);
  const auto age = last_match(text, age_re);
  const auto gender = last_match(text, gender_re);
  if (!age || !gender) {
    return unparseable("'Age Group: <18-34 | 35-54 | 55+>' and "
                       "'Gender: <Male | Female | Non-binary>'");
  }
  ProfileAnswer answer;
  answer.age_group = (*age)[1].str();
  std::string g = lower((*gender)[1].str());
  if (g == "male") answer.gender = "Male";
  else if (g == "female") answer.gender = "Female";
  else answer.gender = "Non-binary";
  return ParseOutcome{answer, ""};
}

}  // namespace detail

// Extracts the task's documented final-answer grammar from arbitrary model
// output; case-insensitive, last occurrence wins. Graph answers need the
// query kind to pick the grammar.
inline ParseOutcome parse_answer(Task task, const std::string& text,
                                 std::optional<QueryKind> kind = std::nullopt) {
  switch (task) {
    case Task::HiddenRole: return detail::parse_hidden_role(text);
    case Task::FindTheSpy: return detail::parse_spy(text);
    case Task::RatingEstimation: return detail::parse_rating(text);
    case Task::SocialGraph:
      if (!kind) {
        return ParseOutcome{std::nullopt, "graph answers need a query kind"};
      }
      switch (*kind) {
        case QueryKind::Pairwise: return detail::parse_graph_yes_no(text);
        case QueryKind::Neighbors: return detail::parse_graph_names(text);
        case QueryKind::GroupCount: return detail::parse_graph_number(text);
        case QueryKind::PairCounts: return detail::parse_graph_pair_counts(text);
      }
      return ParseOutcome{std::nullopt, "unknown query kind"};
    case Task::ReviewDecision: return detail::parse_decision(text);
    case Task::UserProfile: return detail::parse_profile(text);
  }
  return ParseOutcome{std::nullopt, "unknown task"};
}

// ---------------------------------------------------------------------------
// Dataset records (line-delimited JSON)

struct DatasetRecord {
  std::string task;
  std::string subset;
  std::string instance_id;
  std::uint64_t seed = 0;
  std::optional<int> round;
  std::optional<std::string> query;  // graph query kind
  std::string prompt;
  json gold = json::object();
  std::optional<std::string> reasoning_chain;
  json metadata = json::object();
  json extra = json::object();  // unknown fields, preserved

  bool operator==(const DatasetRecord&) const = default;
};

inline json record_to_json(const DatasetRecord& r) {
  json j = json::object();
  j["task"] = r.task;
  j["subset"] = r.subset;
  j["instance_id"] = r.instance_id;
  j["seed"] = r.seed;
  if (r.round) j["round"] = *r.round;
  if (r.query) j["query"] = *r.query;
  j["prompt"] = r.prompt;
  j["gold"] = r.gold;
  if (r.reasoning_chain) j["reasoning_chain"] = *r.reasoning_chain;
  j["metadata"] = r.metadata;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j;
}

inline DatasetRecord record_from_json(const json& j, int line) {
  if (!j.is_object()) {
    throw MalformedRecordError(line, "record is not an object");
  }
  DatasetRecord r;
  try {
    r.task = j.at("task").get<std::string>();
    r.subset = j.value("subset", std::string());
    r.instance_id = j.at("instance_id").get<std::string>();
    r.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("round")) r.round = j.at("round").get<int>();
    if (j.contains("query")) r.query = j.at("query").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.gold = j.value("gold", json::object());
    if (j.contains("reasoning_chain")) {
      r.reasoning_chain = j.at("reasoning_chain").get<std::string>();
    }
    r.metadata = j.value("metadata", json::object());
  } catch (const json::exception& e) {
    throw MalformedRecordError(line, e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "task" || key == "subset" || key == "instance_id" ||
        key == "seed" || key == "round" || key == "query" || key == "prompt" ||
        key == "gold" || key == "reasoning_chain" || key == "metadata") {
      continue;
    }
    r.extra[key] = value;
  }
  return r;
}

inline void write_records(std::ostream& out,
                          const std::vector<DatasetRecord>& records) {
  for (const DatasetRecord& r : records) {
    out << record_to_json(r).dump() << "\n";
  }
}

inline std::vector<DatasetRecord> read_records(std::istream& in) {
  std::vector<DatasetRecord> records;
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
    records.push_back(record_from_json(j, line_no));
  }
  return records;
}

// Gold-side renderers shared by generation and scoring.
inline std::string render_names(const std::vector<PersonId>& names) {
  if (names.empty()) return "No one";
  std::string out;
  for (PersonId p : names) {
    if (!out.empty()) out += ", ";
    out += p.label();
  }
  return out;
}

}  // namespace maze
