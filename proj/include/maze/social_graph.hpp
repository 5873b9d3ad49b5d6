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

// Social-graph task generation and oracles: random sparse instances whose
// good edges form one spanning tree per hidden group and whose bad edges
// connect every pair of groups exactly once, plus exact answers for the
// four query kinds and an axiom checker.

#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "maze/errors.hpp"
#include "maze/rng.hpp"

namespace maze {

// 0-based person index; rendered as consecutive capital letters from 'A'.
struct PersonId {
  int index = 0;

  char label() const { return static_cast<char>('A' + index); }

  auto operator<=>(const PersonId&) const = default;
};

enum class Polarity { Good, Bad };

struct RelationStatement {
  PersonId a;  // a < b always
  PersonId b;
  Polarity polarity = Polarity::Good;

  auto operator<=>(const RelationStatement&) const = default;
};

inline RelationStatement make_relation(PersonId x, PersonId y, Polarity pol) {
  if (y < x) std::swap(x, y);
  return RelationStatement{x, y, pol};
}

// Disjoint nonempty person sets covering everyone. Canonical form sorts
// members within each group and groups by first member.
struct GroupPartition {
  std::vector<std::vector<PersonId>> groups;

  int m() const { return static_cast<int>(groups.size()); }

  void canonicalize() {
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
  }

  int group_index_of(PersonId p) const {
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (PersonId member : groups[i]) {
        if (member == p) return static_cast<int>(i);
      }
    }
    return -1;
  }

  bool operator==(const GroupPartition&) const = default;
};

enum class Difficulty { Easy, Hard };

inline const char* to_string(Difficulty d) {
  return d == Difficulty::Easy ? "easy" : "hard";
}

enum class QueryKind { Pairwise, Neighbors, GroupCount, PairCounts };

struct SocialGraphInstance {
  int n = 0;
  GroupPartition partition;
  std::vector<RelationStatement> statements;
  Difficulty difficulty = Difficulty::Easy;
};

namespace detail {

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

inline void require_person(const SocialGraphInstance& inst, PersonId p) {
  if (p.index < 0 || p.index >= inst.n) {
    throw UnknownPersonError("person '" + std::string(1, p.label()) +
                             "' is not part of this instance of " +
                             std::to_string(inst.n) + " people");
  }
}

}  // namespace detail

// Random instance: n people split into m hidden groups by a uniform
// composition over shuffled labels; one random-attachment spanning tree of
// good edges per group; exactly one bad edge per group pair with uniform
// endpoints; statements shuffled.
inline SocialGraphInstance generate_graph(Difficulty difficulty, Rng& rng) {
  SocialGraphInstance inst;
  inst.difficulty = difficulty;
  inst.n = difficulty == Difficulty::Easy ? rng.int_in(8, 10) : rng.int_in(14, 16);
  const int m = rng.int_in(2, std::min(5, inst.n / 2));

  std::vector<int> cuts = rng.sample_distinct(inst.n - 1, m - 1);
  for (int& c : cuts) ++c;  // cut positions in 1..n-1
  cuts.push_back(inst.n);

  std::vector<PersonId> pool;
  pool.reserve(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) pool.push_back(PersonId{i});
  rng.shuffle(pool);

  // Groups keep the shuffled member order until after tree construction.
  std::vector<std::vector<PersonId>> groups;
  int start = 0;
  for (int cut : cuts) {
    groups.emplace_back(pool.begin() + start, pool.begin() + cut);
    start = cut;
  }

  std::vector<RelationStatement> good;
  for (const auto& group : groups) {
    for (std::size_t k = 1; k < group.size(); ++k) {
      const PersonId parent = group[rng.below(k)];
      good.push_back(make_relation(parent, group[k], Polarity::Good));
    }
  }

  std::vector<RelationStatement> bad;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const PersonId a = groups[i][rng.below(groups[i].size())];
      const PersonId b = groups[j][rng.below(groups[j].size())];
      bad.push_back(make_relation(a, b, Polarity::Bad));
    }
  }

  inst.statements = std::move(good);
  inst.statements.insert(inst.statements.end(), bad.begin(), bad.end());
  rng.shuffle(inst.statements);

  inst.partition.groups = std::move(groups);
  inst.partition.canonicalize();
  return inst;
}

// Partition implied by the good statements alone, in canonical form.
inline GroupPartition recompute_partition(const SocialGraphInstance& inst) {
  detail::DisjointSet dsu(inst.n);
  for (const RelationStatement& s : inst.statements) {
    if (s.polarity == Polarity::Good) dsu.unite(s.a.index, s.b.index);
  }
  std::vector<std::vector<PersonId>> by_root(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) {
    by_root[static_cast<std::size_t>(dsu.find(i))].push_back(PersonId{i});
  }
  GroupPartition partition;
  for (auto& g : by_root) {
    if (!g.empty()) partition.groups.push_back(std::move(g));
  }
  partition.canonicalize();
  return partition;
}

// Yes iff a and b lie in the same group (the good-edge transitive closure).
inline bool answer_pairwise(const SocialGraphInstance& inst, PersonId a,
                            PersonId b) {
  detail::require_person(inst, a);
  detail::require_person(inst, b);
  return inst.partition.group_index_of(a) == inst.partition.group_index_of(b);
}

// Everyone in p's group except p, alphabetical; empty for singleton groups.
inline std::vector<PersonId> answer_neighbors(const SocialGraphInstance& inst,
                                              PersonId p) {
  detail::require_person(inst, p);
  const int g = inst.partition.group_index_of(p);
  std::vector<PersonId> out;
  for (PersonId member : inst.partition.groups[static_cast<std::size_t>(g)]) {
    if (member != p) out.push_back(member);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int count_groups(const SocialGraphInstance& inst) {
  return inst.partition.m();
}

struct PairCounts {
  long long good = 0;
  long long bad = 0;

  auto operator<=>(const PairCounts&) const = default;
};

inline PairCounts count_pairs(const SocialGraphInstance& inst) {
  PairCounts counts;
  const auto& groups = inst.partition.groups;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const long long si = static_cast<long long>(groups[i].size());
    counts.good += si * (si - 1) / 2;
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      counts.bad += si * static_cast<long long>(groups[j].size());
    }
  }
  return counts;
}

// Full consistency check: the partition recomputed from good statements
// matches the stored one, every statement agrees with the closure
// (same group <=> good), and the closure relation passes a direct triple
// scan of both axioms (good-good transitivity; bad via good stays bad).
inline bool check_axioms(const SocialGraphInstance& inst) {
  if (recompute_partition(inst) != inst.partition) return false;

  std::vector<int> group_of(static_cast<std::size_t>(inst.n), -1);
  for (int i = 0; i < inst.n; ++i) {
    group_of[static_cast<std::size_t>(i)] =
        inst.partition.group_index_of(PersonId{i});
    if (group_of[static_cast<std::size_t>(i)] < 0) return false;
  }

  const auto same = [&](int a, int b) {
    return group_of[static_cast<std::size_t>(a)] ==
           group_of[static_cast<std::size_t>(b)];
  };

  std::vector<std::pair<int, int>> seen;
  for (const RelationStatement& s : inst.statements) {
    if (s.a == s.b || s.b < s.a) return false;
    seen.emplace_back(s.a.index, s.b.index);
    const bool good = s.polarity == Polarity::Good;
    if (good != same(s.a.index, s.b.index)) return false;
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;

  for (int a = 0; a < inst.n; ++a) {
    for (int b = 0; b < inst.n; ++b) {
      if (b == a) continue;
      for (int c = 0; c < inst.n; ++c) {
        if (c == a || c == b) continue;
        if (same(a, b) && same(b, c) && !same(a, c)) return false;
        if (!same(a, b) && same(b, c) && same(a, c)) return false;
      }
    }
  }
  return true;
}

}  // namespace maze
