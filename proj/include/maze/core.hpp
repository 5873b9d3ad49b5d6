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

// Domain model of the hidden-role deduction game: players, roles,
// statements, configurations, and the per-round interaction log. Everything
// here is an immutable value type; randomness and behavior live in
// role_engine.hpp.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maze/errors.hpp"

namespace maze {

// 1-based player index, matching the "Player 1" convention used by
// renderers and parsers.
struct PlayerId {
  int value = 0;

  constexpr PlayerId() = default;
  constexpr explicit PlayerId(int v) : value(v) {}
  auto operator<=>(const PlayerId&) const = default;
};

enum class TrueRole : std::uint8_t { Investigator, Criminal, Rumormonger, Lunatic };
enum class ShownRole : std::uint8_t { Investigator, Criminal };
enum class Claim : std::uint8_t { IsCriminal, IsNotCriminal };
enum class Variant : std::uint8_t { Original, Rumormonger, Lunatic, Full };

inline constexpr std::array<TrueRole, 4> kAllTrueRoles = {
    TrueRole::Investigator, TrueRole::Criminal, TrueRole::Rumormonger,
    TrueRole::Lunatic};

// What a player is told at setup. Rumormongers are shown Investigator,
// Lunatics are shown Criminal.
constexpr ShownRole shown_role(TrueRole role) {
  switch (role) {
    case TrueRole::Investigator:
    case TrueRole::Rumormonger:
      return ShownRole::Investigator;
    case TrueRole::Criminal:
    case TrueRole::Lunatic:
      return ShownRole::Criminal;
  }
  return ShownRole::Investigator;  // unreachable
}

constexpr std::string_view to_string(TrueRole role) {
  switch (role) {
    case TrueRole::Investigator: return "Investigator";
    case TrueRole::Criminal: return "Criminal";
    case TrueRole::Rumormonger: return "Rumormonger";
    case TrueRole::Lunatic: return "Lunatic";
  }
  return "";
}

constexpr std::string_view to_string(ShownRole role) {
  return role == ShownRole::Investigator ? "Investigator" : "Criminal";
}

constexpr std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Original: return "original";
    case Variant::Rumormonger: return "rumormonger";
    case Variant::Lunatic: return "lunatic";
    case Variant::Full: return "full";
  }
  return "";
}

inline std::optional<Variant> variant_from_string(std::string_view s) {
  for (Variant v : {Variant::Original, Variant::Rumormonger, Variant::Lunatic,
                    Variant::Full}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

inline std::optional<TrueRole> true_role_from_string(std::string_view s) {
  for (TrueRole role : kAllTrueRoles) {
    if (s == to_string(role)) return role;
  }
  return std::nullopt;
}

// Role multiset of a game: N_I investigators, one criminal, x rumormongers,
// y lunatics.
struct RoleCounts {
  int investigators = 0;
  int criminals = 1;
  int rumormongers = 0;
  int lunatics = 0;

  constexpr int count_of(TrueRole role) const {
    switch (role) {
      case TrueRole::Investigator: return investigators;
      case TrueRole::Criminal: return criminals;
      case TrueRole::Rumormonger: return rumormongers;
      case TrueRole::Lunatic: return lunatics;
    }
    return 0;
  }

  constexpr int total() const {
    return investigators + criminals + rumormongers + lunatics;
  }

  auto operator<=>(const RoleCounts&) const = default;
};

// Weight presets for sampling Player 1's true role.
inline constexpr std::array<double, 4> kEqualP1RoleWeights = {1, 1, 1, 1};
inline constexpr std::array<double, 4> kSkewedP1RoleWeights = {3, 2, 60, 35};

struct GameConfig {
  int players = 6;       // n
  int rounds = 3;        // T
  int rumormongers = 0;  // x
  int lunatics = 0;      // y
  // Probability the criminal (and a lunatic mimicking it) claims
  // "is the criminal" about its target.
  double deception_prob = 0.7;
  // Sampling weights for P1's true role, indexed like kAllTrueRoles.
  std::array<double, 4> p1_role_weights = kEqualP1RoleWeights;
  Variant variant = Variant::Full;
  std::uint64_t seed = 0;

  constexpr int investigator_count() const {
    return players - 1 - rumormongers - lunatics;
  }

  constexpr RoleCounts role_counts() const {
    return RoleCounts{investigator_count(), 1, rumormongers, lunatics};
  }
};

struct Statement {
  int round = 0;
  PlayerId speaker;
  PlayerId target;
  Claim claim = Claim::IsCriminal;

  auto operator<=>(const Statement&) const = default;
};

// Rounds of simultaneous public statements, one statement per speaker per
// round. rounds[r-1] holds round r.
struct InteractionLog {
  std::vector<std::vector<Statement>> rounds;

  int round_count() const { return static_cast<int>(rounds.size()); }

  std::size_t statement_count() const {
    std::size_t n = 0;
    for (const auto& round : rounds) n += round.size();
    return n;
  }

  bool operator==(const InteractionLog&) const = default;
};

// Total map player -> true role; roles[i] belongs to player i+1.
struct RoleAssignment {
  std::vector<TrueRole> roles;

  TrueRole role_of(PlayerId p) const {
    return roles.at(static_cast<std::size_t>(p.value) - 1);
  }

  PlayerId criminal() const {
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i] == TrueRole::Criminal) return PlayerId(static_cast<int>(i) + 1);
    }
    throw Error("assignment has no criminal");
  }

  bool operator==(const RoleAssignment&) const = default;
};

// A fully simulated game plus its ground truth.
struct GameInstance {
  GameConfig config;
  RoleAssignment assignment;
  InteractionLog log;
  ShownRole p1_shown_role = ShownRole::Investigator;
  PlayerId criminal;
  TrueRole p1_true_role = TrueRole::Investigator;
};

// Exactly what the evaluated reasoner sees: public counts, its own shown
// role, and the statement log up to some round. Carries nothing else
// derived from the hidden role assignment.
struct ObserverView {
  int players = 0;
  int rounds_observed = 0;
  int total_rounds = 0;  // announced game length, part of the public setup
  RoleCounts role_counts;
  ShownRole p1_shown_role = ShownRole::Investigator;
  InteractionLog log_prefix;
};

inline GameConfig validate_config(const GameConfig& config) {
  const auto fail = [](const std::string& what) {
    throw InvalidConfigError(what);
  };
  if (config.players < 4) fail("player count must be at least 4");
  if (config.rounds < 1) fail("round count must be at least 1");
  if (config.rumormongers < 0) fail("rumormonger count must be nonnegative");
  if (config.lunatics < 0) fail("lunatic count must be nonnegative");
  if (config.investigator_count() < 1)
    fail("investigator count must be at least 1 (n - 1 - x - y >= 1)");
  if (config.deception_prob < 0.0 || config.deception_prob > 1.0)
    fail("deception probability must lie in [0, 1]");
  for (double w : config.p1_role_weights) {
    if (w < 0.0) fail("p1 role weights must be nonnegative");
  }
  switch (config.variant) {
    case Variant::Original:
      if (config.rumormongers != 0 || config.lunatics != 0)
        fail("original variant requires x = 0 and y = 0");
      break;
    case Variant::Rumormonger:
      if (config.rumormongers < 1 || config.lunatics != 0)
        fail("rumormonger variant requires x >= 1 and y = 0");
      break;
    case Variant::Lunatic:
      if (config.lunatics < 1 || config.rumormongers != 0)
        fail("lunatic variant requires y >= 1 and x = 0");
      break;
    case Variant::Full:
      if (config.rumormongers + config.lunatics < 1)
        fail("full variant requires x + y >= 1");
      break;
  }
  return config;
}

// Observer snapshot after round r: the log truncated to rounds 1..r plus
// the public setup facts. r must lie in [1, T].
inline ObserverView view_at_round(const GameInstance& instance, int r) {
  if (r < 1 || r > instance.config.rounds) {
    throw OutOfRangeError("round " + std::to_string(r) + " outside [1, " +
                          std::to_string(instance.config.rounds) + "]");
  }
  ObserverView view;
  view.players = instance.config.players;
  view.rounds_observed = r;
  view.total_rounds = instance.config.rounds;
  view.role_counts = instance.config.role_counts();
  view.p1_shown_role = instance.p1_shown_role;
  view.log_prefix.rounds.assign(instance.log.rounds.begin(),
                                instance.log.rounds.begin() + r);
  return view;
}

}  // namespace maze
