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

// Seeded simulation of hidden-role games: role assignment, per-role
// statement strategies, full-game simulation, and rejection sampling down
// to instances with a unique deducible answer.

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maze/core.hpp"
#include "maze/errors.hpp"
#include "maze/rng.hpp"
#include "maze/solver.hpp"

namespace maze {

struct SuspicionTable {
  // Ordered by player id; the observer does not appear.
  std::map<PlayerId, double> scores;
};

// Heuristic suspicion from an interaction prefix, as seen by `observer`.
// Signals per player u: accusations against u by others (+1.0 each),
// contradictions issued by u as a speaker (+2.0 per contradicted target),
// distinct speakers clearing u (-1.5 each). Floored at 0.1 so nobody ever
// becomes unpickable.
inline SuspicionTable suspicion_scores(const InteractionLog& prefix,
                                       PlayerId observer, int player_count) {
  std::map<PlayerId, int> accusations;
  std::map<PlayerId, std::set<PlayerId>> cleared_by;
  // speaker -> target -> claims seen
  std::map<PlayerId, std::map<PlayerId, std::pair<bool, bool>>> said;

  for (const auto& round : prefix.rounds) {
    for (const Statement& s : round) {
      if (s.claim == Claim::IsCriminal) {
        if (s.speaker != s.target) accusations[s.target] += 1;
      } else {
        cleared_by[s.target].insert(s.speaker);
      }
      auto& flags = said[s.speaker][s.target];
      (s.claim == Claim::IsCriminal ? flags.first : flags.second) = true;
    }
  }

  SuspicionTable table;
  for (int p = 1; p <= player_count; ++p) {
    const PlayerId u(p);
    if (u == observer) continue;
    int contradictions = 0;
    if (auto it = said.find(u); it != said.end()) {
      for (const auto& [target, flags] : it->second) {
        if (flags.first && flags.second) ++contradictions;
      }
    }
    const auto acc_it = accusations.find(u);
    const auto clr_it = cleared_by.find(u);
    const double a = acc_it == accusations.end() ? 0.0 : acc_it->second;
    const double c = clr_it == cleared_by.end() ? 0.0 : clr_it->second.size();
    const double raw = 1.0 + 1.0 * a + 2.0 * contradictions - 1.5 * c;
    table.scores[u] = std::max(0.1, raw);
  }
  return table;
}

// One statement by `actor` for the upcoming round, conditioned on the
// prefix of all earlier rounds. Investigators pick targets in proportion
// to suspicion and always speak the truth. Rumormongers target the same
// way but are truthful with probability exactly one half. Criminals and
// lunatics prefer (weight 3 vs 1) players who have accused them, and call
// the target a criminal with probability config.deception_prob.
inline Statement make_statement(PlayerId actor, TrueRole true_role,
                                PlayerId criminal, const InteractionLog& prefix,
                                const GameConfig& config, Rng& rng) {
  const int n = config.players;
  std::vector<PlayerId> candidates;
  std::vector<double> weights;
  candidates.reserve(static_cast<std::size_t>(n) - 1);
  weights.reserve(static_cast<std::size_t>(n) - 1);

  if (true_role == TrueRole::Investigator || true_role == TrueRole::Rumormonger) {
    const SuspicionTable table = suspicion_scores(prefix, actor, n);
    for (const auto& [player, score] : table.scores) {
      candidates.push_back(player);
      weights.push_back(score);
    }
  } else {
    std::set<PlayerId> accusers;
    for (const auto& round : prefix.rounds) {
      for (const Statement& s : round) {
        if (s.target == actor && s.claim == Claim::IsCriminal && s.speaker != actor)
          accusers.insert(s.speaker);
      }
    }
    for (int p = 1; p <= n; ++p) {
      const PlayerId u(p);
      if (u == actor) continue;
      candidates.push_back(u);
      weights.push_back(accusers.count(u) ? 3.0 : 1.0);
    }
  }

  const PlayerId target = candidates[rng.weighted_index(weights)];

  Claim claim;
  switch (true_role) {
    case TrueRole::Investigator:
      claim = target == criminal ? Claim::IsCriminal : Claim::IsNotCriminal;
      break;
    case TrueRole::Rumormonger: {
      const Claim truthful =
          target == criminal ? Claim::IsCriminal : Claim::IsNotCriminal;
      claim = rng.bernoulli(0.5)
                  ? truthful
                  : (truthful == Claim::IsCriminal ? Claim::IsNotCriminal
                                                   : Claim::IsCriminal);
      break;
    }
    case TrueRole::Criminal:
    case TrueRole::Lunatic:
      claim = rng.bernoulli(config.deception_prob) ? Claim::IsCriminal
                                                   : Claim::IsNotCriminal;
      break;
  }
  return Statement{0, actor, target, claim};
}

// Role assignment: player 1's role is drawn from config.p1_role_weights
// restricted to roles the config actually contains; the remaining role
// multiset is shuffled uniformly over players 2..n.
inline RoleAssignment assign_roles(const GameConfig& config, Rng& rng) {
  const RoleCounts counts = config.role_counts();

  std::vector<TrueRole> feasible;
  std::vector<double> weights;
  for (TrueRole role : kAllTrueRoles) {
    if (counts.count_of(role) < 1) continue;
    feasible.push_back(role);
    weights.push_back(config.p1_role_weights[static_cast<std::size_t>(role)]);
  }
  double mass = 0.0;
  for (double w : weights) mass += w;
  if (mass <= 0.0) {
    throw InfeasibleWeightsError(
        "all p1_role_weights mass sits on roles absent from variant '" +
        std::string(to_string(config.variant)) + "'");
  }
  const TrueRole p1_role = feasible[rng.weighted_index(weights)];

  std::vector<TrueRole> rest;
  rest.reserve(static_cast<std::size_t>(config.players) - 1);
  for (TrueRole role : kAllTrueRoles) {
    int count = counts.count_of(role) - (role == p1_role ? 1 : 0);
    rest.insert(rest.end(), static_cast<std::size_t>(count), role);
  }
  rng.shuffle(rest);

  RoleAssignment assignment;
  assignment.roles.reserve(static_cast<std::size_t>(config.players));
  assignment.roles.push_back(p1_role);
  assignment.roles.insert(assignment.roles.end(), rest.begin(), rest.end());
  return assignment;
}

// Full game: T rounds, one statement per player per round, each round
// generated against the prefix of strictly earlier rounds (simultaneous
// reveal). Pure function of (config, rng state).
inline GameInstance simulate_game(const GameConfig& config, Rng& rng) {
  validate_config(config);
  const RoleAssignment assignment = assign_roles(config, rng);
  const PlayerId criminal = assignment.criminal();

  InteractionLog log;
  for (int r = 1; r <= config.rounds; ++r) {
    std::vector<Statement> round;
    round.reserve(static_cast<std::size_t>(config.players));
    for (int p = 1; p <= config.players; ++p) {
      const PlayerId actor(p);
      Statement s = make_statement(actor, assignment.role_of(actor), criminal,
                                   log, config, rng);
      s.round = r;
      round.push_back(s);
    }
    log.rounds.push_back(std::move(round));
  }

  GameInstance instance;
  instance.config = config;
  instance.assignment = assignment;
  instance.log = std::move(log);
  instance.p1_true_role = assignment.role_of(PlayerId(1));
  instance.p1_shown_role = shown_role(instance.p1_true_role);
  instance.criminal = criminal;
  return instance;
}

inline GameInstance simulate_game(const GameConfig& config) {
  Rng rng(config.seed);
  return simulate_game(config, rng);
}

// Rejection sampling to a uniquely solvable instance. Attempt k simulates
// from a sub-seed derived from (seed, k); the accepted instance records
// that sub-seed in its config so it can be reproduced directly.
inline GameInstance generate_solvable(const GameConfig& config,
                                      std::uint64_t seed,
                                      int max_attempts = 500) {
  validate_config(config);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    const std::uint64_t sub_seed =
        derive_subseed(seed, static_cast<std::uint64_t>(attempt));
    GameConfig attempt_config = config;
    attempt_config.seed = sub_seed;
    GameInstance instance = simulate_game(attempt_config);
    const SolveResult result = solve(view_at_round(instance, config.rounds));
    if (!result.unique) continue;
    const Solution& s = result.solutions.front();
    if (s.criminal == instance.criminal && s.p1_role == instance.p1_true_role) {
      return instance;
    }
  }
  throw ExhaustedAttemptsError(max_attempts);
}

}  // namespace maze
