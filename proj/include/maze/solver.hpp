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

// Ground-truth solving of hidden-role games from the observer's seat:
// hypothesis enumeration, statement-consistency checking, uniqueness
// verification, a brute-force oracle over complete role assignments, and
// distillation of the elimination trace into a natural-language chain.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maze/core.hpp"
#include "maze/errors.hpp"

namespace maze {

// One candidate world from the observer's perspective: P1's true role, the
// exact set of investigators, and who the criminal is. Rumormonger/lunatic
// placement is deliberately absent; no statement constrains it.
struct Hypothesis {
  TrueRole p1_role = TrueRole::Investigator;
  std::uint32_t investigator_mask = 0;  // bit (p-1) set => player p investigates
  PlayerId criminal_candidate;

  bool is_investigator(PlayerId p) const {
    return (investigator_mask >> (p.value - 1)) & 1u;
  }

  std::vector<PlayerId> investigators(int players) const {
    std::vector<PlayerId> out;
    for (int p = 1; p <= players; ++p) {
      if (is_investigator(PlayerId(p))) out.emplace_back(p);
    }
    return out;
  }

  auto operator<=>(const Hypothesis&) const = default;
};

// What the observer is asked to produce: the criminal plus its own role.
struct Solution {
  PlayerId criminal;
  TrueRole p1_role = TrueRole::Investigator;

  auto operator<=>(const Solution&) const = default;
};

struct TraceEntry {
  Hypothesis hypothesis;
  bool consistent = false;
  std::optional<Statement> witness;  // first contradicting statement
};

struct SolveResult {
  std::vector<Solution> solutions;  // sorted, deduplicated
  bool unique = false;
  std::vector<TraceEntry> trace;
};

namespace detail {

// Roles P1 can hold given its shown role and the public role counts.
inline std::vector<TrueRole> feasible_p1_roles(const ObserverView& view) {
  std::vector<TrueRole> out;
  for (TrueRole role : kAllTrueRoles) {
    if (shown_role(role) != view.p1_shown_role) continue;
    if (view.role_counts.count_of(role) < 1) continue;
    out.push_back(role);
  }
  return out;
}

// Calls fn(mask) for every k-subset of `pool` (player ids), in
// lexicographic order of the pool indices.
template <typename Fn>
void for_each_subset_mask(const std::vector<PlayerId>& pool, int k, Fn&& fn) {
  const int n = static_cast<int>(pool.size());
  if (k > n) return;
  if (k == 0) {
    fn(std::uint32_t{0});
    return;
  }
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << (pool[static_cast<std::size_t>(i)].value - 1);
    fn(mask);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == i + n - k) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

inline std::string statement_sentence(const Statement& s) {
  std::string out = "Player " + std::to_string(s.speaker.value) +
                    " says Player " + std::to_string(s.target.value);
  out += s.claim == Claim::IsCriminal ? " is the criminal" : " is not the criminal";
  return out;
}

}  // namespace detail

// All hypotheses compatible with the view's shown role and role counts.
// P1 belongs to the investigator set exactly when its hypothesized role is
// Investigator, and is the criminal candidate exactly when it is Criminal;
// the published enumeration that draws investigators only from the other
// players cannot keep the role counts exact in those cases.
inline std::vector<Hypothesis> enumerate_hypotheses(const ObserverView& view) {
  const int n = view.players;
  const int investigators = view.role_counts.investigators;
  std::vector<PlayerId> others;
  for (int p = 2; p <= n; ++p) others.emplace_back(p);

  std::vector<Hypothesis> out;
  for (TrueRole p1_role : detail::feasible_p1_roles(view)) {
    const bool p1_investigates = p1_role == TrueRole::Investigator;
    const int from_others = p1_investigates ? investigators - 1 : investigators;
    detail::for_each_subset_mask(others, from_others, [&](std::uint32_t mask) {
      if (p1_investigates) mask |= 1u;  // player 1
      if (p1_role == TrueRole::Criminal) {
        out.push_back(Hypothesis{p1_role, mask, PlayerId(1)});
        return;
      }
      for (int c = 2; c <= n; ++c) {
        if ((mask >> (c - 1)) & 1u) continue;
        out.push_back(Hypothesis{p1_role, mask, PlayerId(c)});
      }
    });
  }
  return out;
}

// Consistency of a hypothesis against the observed log: every statement by
// a hypothesized investigator must be truthful about the hypothesized
// criminal. Returns the first contradicting statement in (round, speaker)
// order, or nullopt when consistent. Statements by non-investigators
// impose no constraint.
inline std::optional<Statement> is_consistent(const ObserverView& view,
                                              const Hypothesis& h) {
  for (const auto& round : view.log_prefix.rounds) {
    for (const auto& s : round) {
      if (!h.is_investigator(s.speaker)) continue;
      const bool says_criminal = s.claim == Claim::IsCriminal;
      const bool is_criminal = s.target == h.criminal_candidate;
      if (says_criminal != is_criminal) return s;
    }
  }
  return std::nullopt;
}

// Uniqueness verification from P1's perspective: enumerate every
// hypothesis, keep the consistent ones, and project to (criminal, P1 role)
// pairs. `unique` holds exactly when one pair survives.
inline SolveResult solve(const ObserverView& view) {
  SolveResult result;
  for (const Hypothesis& h : enumerate_hypotheses(view)) {
    auto witness = is_consistent(view, h);
    const bool ok = !witness.has_value();
    if (ok) result.solutions.push_back(Solution{h.criminal_candidate, h.p1_role});
    result.trace.push_back(TraceEntry{h, ok, std::move(witness)});
  }
  std::sort(result.solutions.begin(), result.solutions.end());
  result.solutions.erase(
      std::unique(result.solutions.begin(), result.solutions.end()),
      result.solutions.end());
  result.unique = result.solutions.size() == 1;
  return result;
}

// Independent oracle: enumerate every complete role assignment (criminal
// choice x investigator subset x rumormonger/lunatic placement) that
// matches the counts and P1's shown role, keep those whose investigators
// all speak truthfully, and project to solution pairs. Exponential on
// purpose; guarded to small games.
inline std::vector<Solution> brute_force_oracle(const ObserverView& view) {
  const int n = view.players;
  if (n > 12) {
    throw TooLargeError("brute-force oracle supports at most 12 players, got " +
                        std::to_string(n));
  }
  const RoleCounts counts = view.role_counts;
  std::vector<Solution> found;

  const auto truthful_investigators = [&](std::uint32_t inv_mask,
                                          PlayerId criminal) {
    for (const auto& round : view.log_prefix.rounds) {
      for (const auto& s : round) {
        if (!((inv_mask >> (s.speaker.value - 1)) & 1u)) continue;
        const bool says_criminal = s.claim == Claim::IsCriminal;
        if (says_criminal != (s.target == criminal)) return false;
      }
    }
    return true;
  };

  for (int c = 1; c <= n; ++c) {
    const PlayerId criminal(c);
    std::vector<PlayerId> rest;
    for (int p = 1; p <= n; ++p) {
      if (p != c) rest.emplace_back(p);
    }
    detail::for_each_subset_mask(rest, counts.investigators, [&](std::uint32_t inv_mask) {
      std::vector<PlayerId> fringe;  // neither criminal nor investigator
      for (PlayerId p : rest) {
        if (!((inv_mask >> (p.value - 1)) & 1u)) fringe.push_back(p);
      }
      detail::for_each_subset_mask(fringe, counts.rumormongers, [&](std::uint32_t rumor_mask) {
        TrueRole p1_role;
        if (c == 1) {
          p1_role = TrueRole::Criminal;
        } else if ((inv_mask >> 0) & 1u) {
          p1_role = TrueRole::Investigator;
        } else if ((rumor_mask >> 0) & 1u) {
          p1_role = TrueRole::Rumormonger;
        } else {
          p1_role = TrueRole::Lunatic;
        }
        if (shown_role(p1_role) != view.p1_shown_role) return;
        if (!truthful_investigators(inv_mask, criminal)) return;
        found.push_back(Solution{criminal, p1_role});
      });
    });
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

struct Citation {
  int round = 0;
  PlayerId speaker;

  auto operator<=>(const Citation&) const = default;
};

struct ChainStep {
  std::string premise;
  std::vector<Citation> citations;
  std::string conclusion;
};

// Natural-language elimination trace: one step per rejected
// (P1 role, criminal candidate) class, then the surviving solution.
struct ReasoningChain {
  std::vector<ChainStep> steps;
  Solution final_answer;

  std::string to_text() const {
    std::ostringstream out;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      out << "Step " << (i + 1) << ": " << steps[i].premise << " "
          << steps[i].conclusion << "\n";
    }
    if (!steps.empty()) {
      out << "Conclusion: " << steps.back().conclusion << "\n";
    }
    return out.str();
  }
};

// Distills a unique SolveResult into an ordered chain. Rejected hypotheses
// are grouped by (P1 role, criminal candidate); each group cites the
// earliest witness statement among its members, in role-enum then
// player-index order, so identical inputs always yield identical text.
inline ReasoningChain build_reasoning_chain(const ObserverView& view,
                                            const SolveResult& result) {
  if (!result.unique) {
    throw NotUniqueError("reasoning chain requires a unique solution, got " +
                         std::to_string(result.solutions.size()));
  }
  struct ClassState {
    bool any_consistent = false;
    std::optional<Statement> earliest;
  };
  // Keyed by (role order index, candidate index); std::map semantics via
  // sorted vector keeps the ordering explicit.
  const int n = view.players;
  std::vector<std::optional<ClassState>> classes(
      static_cast<std::size_t>(4 * (n + 1)));
  const auto slot = [&](TrueRole role, PlayerId c) -> std::optional<ClassState>& {
    return classes[static_cast<std::size_t>(role) * static_cast<std::size_t>(n + 1) +
                   static_cast<std::size_t>(c.value)];
  };
  for (const TraceEntry& entry : result.trace) {
    auto& state = slot(entry.hypothesis.p1_role, entry.hypothesis.criminal_candidate);
    if (!state) state.emplace();
    if (entry.consistent) {
      state->any_consistent = true;
    } else if (entry.witness) {
      const Statement& w = *entry.witness;
      if (!state->earliest ||
          std::pair(w.round, w.speaker.value) <
              std::pair(state->earliest->round, state->earliest->speaker.value)) {
        state->earliest = w;
      }
    }
  }

  ReasoningChain chain;
  chain.final_answer = result.solutions.front();
  for (TrueRole role : kAllTrueRoles) {
    for (int c = 1; c <= n; ++c) {
      const auto& state = slot(role, PlayerId(c));
      if (!state || state->any_consistent) continue;
      ChainStep step;
      step.premise = "Assume Player 1 is the " + std::string(to_string(role)) +
                     " and Player " + std::to_string(c) + " is the criminal.";
      if (state->earliest) {
        const Statement& w = *state->earliest;
        step.citations.push_back(Citation{w.round, w.speaker});
        step.conclusion =
            "Every permitted choice of Investigators then contradicts the "
            "record, the earliest clash being round " +
            std::to_string(w.round) + ", where " +
            detail::statement_sentence(w) + ". The assumption is eliminated.";
      } else {
        step.conclusion =
            "No arrangement of Investigators satisfies the role counts "
            "under this assumption, so it is eliminated.";
      }
      chain.steps.push_back(std::move(step));
    }
  }
  ChainStep last;
  last.premise = "Every other assumption has been eliminated.";
  last.conclusion = "Player " + std::to_string(chain.final_answer.criminal.value) +
                    " is the criminal and Player 1 is the " +
                    std::string(to_string(chain.final_answer.p1_role)) + ".";
  chain.steps.push_back(std::move(last));
  return chain;
}

}  // namespace maze
