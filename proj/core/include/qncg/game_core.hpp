// Copyright 2026 The qncg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QNCG_GAME_CORE_HPP
#define QNCG_GAME_CORE_HPP

#include <cstdint>
#include <vector>

#include "qncg/compare.hpp"
#include "qncg/errors.hpp"
#include "qncg/price_model.hpp"

namespace qncg {

enum class GameKind { kSum, kMax };

const char* to_string(GameKind kind);

// One bought edge: undirected {owner, target} of the given weight, paid for
// by the owner at price p(weight).
struct OwnedEdge {
  int target = -1;
  double weight = 0.0;
  bool operator==(const OwnedEdge&) const = default;
};

// The edge set one node buys. Edges are kept sorted by target; at most one
// edge per target, never to the owner itself.
struct Strategy {
  int owner = -1;
  std::vector<OwnedEdge> edges;

  void normalize();  // sorts by target
  bool operator==(const Strategy&) const = default;
};

// Deterministic total order used for tie-breaking between strategies of the
// same owner: fewer edges first, then smaller total weight, then
// lexicographic (targets, then weights).
bool strategy_less(const Strategy& a, const Strategy& b);

// Immutable strategy profile: n nodes, one strategy each, a price function
// and the game kind. Construction validates all structural invariants.
class StrategyProfile {
 public:
  // Throws InvalidProfile, naming the offending node.
  StrategyProfile(int n, GameKind kind, PriceFunction price,
                  std::vector<Strategy> strategies);

  // All-empty strategies.
  static StrategyProfile empty(int n, GameKind kind, PriceFunction price);

  int n() const { return n_; }
  GameKind kind() const { return kind_; }
  const PriceFunction& price() const { return price_; }
  const std::vector<Strategy>& strategies() const { return strategies_; }
  const Strategy& strategy(int v) const { return strategies_[v]; }

  // Value-semantics unilateral deviation: only v's strategy is replaced.
  StrategyProfile with_strategy(int v, Strategy s) const;

  // Total number of bought edges (parallel purchases counted separately).
  int purchase_count() const;

  bool operator==(const StrategyProfile&) const;

 private:
  int n_;
  GameKind kind_;
  PriceFunction price_;
  std::vector<Strategy> strategies_;
};

struct CostBreakdown {
  int node = -1;
  double edge_cost = 0.0;
  double distance_cost = 0.0;
  double total = 0.0;
};

// The weighted graph realized by a profile: effective weights (minimum over
// parallel purchases per node pair), exact all-pairs shortest-path distances
// with an infinity sentinel for unreachable pairs, and per-node aggregates.
class RealizedGame {
 public:
  explicit RealizedGame(StrategyProfile profile);

  const StrategyProfile& profile() const { return profile_; }
  int n() const { return profile_.n(); }

  double distance(int u, int v) const { return dist_[u * n() + v]; }
  const std::vector<double>& distance_matrix() const { return dist_; }

  // Effective weight of the pair {u, v}, or infinity when no bought edge
  // connects them.
  double effective_weight(int u, int v) const { return eff_[u * n() + v]; }
  bool has_edge(int u, int v) const { return std::isfinite(eff_[u * n() + v]); }

  double sum_distance(int v) const { return sum_dist_[v]; }    // sum of d(v, .)
  double eccentricity(int v) const { return ecc_[v]; }         // max of d(v, .)
  double diameter() const { return diameter_; }
  bool connected() const { return connected_; }

  // Undirected edge count of the realized graph and the extreme effective
  // weights (infinite extremes when there is no edge at all).
  int edge_count() const { return edge_count_; }
  double min_effective_weight() const { return min_eff_; }
  double max_effective_weight() const { return max_eff_; }

 private:
  StrategyProfile profile_;
  std::vector<double> eff_;   // n*n symmetric, inf when absent
  std::vector<double> dist_;  // n*n
  std::vector<double> sum_dist_;
  std::vector<double> ecc_;
  double diameter_ = 0.0;
  bool connected_ = true;
  int edge_count_ = 0;
  double min_eff_ = kInfiniteCost;
  double max_eff_ = -kInfiniteCost;
};

// Pure realization of a profile. Deterministic: equal profiles produce
// bit-identical distance matrices.
RealizedGame realize(const StrategyProfile& profile);

// Private cost of node v: prices of v's own edges plus the distance term of
// the game kind (sum or maximum of distances). Total is infinite iff some
// node is unreachable from v.
CostBreakdown private_cost(const RealizedGame& game, int v);

// Sum of all private costs; infinite when the graph is disconnected.
double social_cost(const RealizedGame& game);

// Identical to StrategyProfile::with_strategy; kept as a free function to
// mirror the operation vocabulary.
StrategyProfile apply_deviation(const StrategyProfile& profile, int v,
                                Strategy new_strategy);

// Exact single-source shortest-path distances over an adjacency matrix with
// infinity sentinels. Shared by realization and the deviation searcher.
void dijkstra(int n, const std::vector<double>& adj, int source,
              std::vector<double>& out);

}  // namespace qncg

#endif  // QNCG_GAME_CORE_HPP
