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

#include "qncg/game_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qncg {

const char* to_string(GameKind kind) {
  return kind == GameKind::kSum ? "sum" : "max";
}

void Strategy::normalize() {
  std::sort(edges.begin(), edges.end(),
            [](const OwnedEdge& a, const OwnedEdge& b) {
              return a.target < b.target;
            });
}

bool strategy_less(const Strategy& a, const Strategy& b) {
  if (a.edges.size() != b.edges.size()) {
    return a.edges.size() < b.edges.size();
  }
  double wa = 0.0, wb = 0.0;
  for (const auto& e : a.edges) wa += e.weight;
  for (const auto& e : b.edges) wb += e.weight;
  if (wa != wb) return wa < wb;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].target != b.edges[i].target) {
      return a.edges[i].target < b.edges[i].target;
    }
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].weight != b.edges[i].weight) {
      return a.edges[i].weight < b.edges[i].weight;
    }
  }
  return false;
}

namespace {

void check_strategy(const Strategy& s, int owner, int n,
                    const WeightInterval& iv) {
  if (s.owner != owner) {
    throw InvalidProfile(owner, "strategy owner id mismatch at node " +
                                    std::to_string(owner));
  }
  int prev_target = -1;
  for (const OwnedEdge& e : s.edges) {
    if (e.target < 0 || e.target >= n) {
      throw InvalidProfile(owner, "edge target out of range at node " +
                                      std::to_string(owner));
    }
    if (e.target == owner) {
      throw InvalidProfile(owner,
                           "self-loop at node " + std::to_string(owner));
    }
    if (e.target == prev_target) {
      throw InvalidProfile(owner, "duplicate edge target " +
                                      std::to_string(e.target) + " at node " +
                                      std::to_string(owner));
    }
    if (e.target < prev_target) {
      throw InvalidProfile(owner, "unsorted strategy at node " +
                                      std::to_string(owner));
    }
    if (!iv.contains(e.weight)) {
      throw InvalidProfile(owner, "edge weight outside interval at node " +
                                      std::to_string(owner));
    }
    prev_target = e.target;
  }
}

}  // namespace

StrategyProfile::StrategyProfile(int n, GameKind kind, PriceFunction price,
                                 std::vector<Strategy> strategies)
    : n_(n), kind_(kind), price_(std::move(price)),
      strategies_(std::move(strategies)) {
  if (n_ < 2) throw InvalidProfile(-1, "profile needs at least two nodes");
  if (static_cast<int>(strategies_.size()) != n_) {
    throw InvalidProfile(-1, "profile needs one strategy per node");
  }
  for (int v = 0; v < n_; ++v) {
    strategies_[v].normalize();
    check_strategy(strategies_[v], v, n_, price_.interval());
  }
}

StrategyProfile StrategyProfile::empty(int n, GameKind kind,
                                       PriceFunction price) {
  std::vector<Strategy> strategies(static_cast<std::size_t>(std::max(n, 0)));
  for (int v = 0; v < n; ++v) strategies[v].owner = v;
  return StrategyProfile(n, kind, std::move(price), std::move(strategies));
}

StrategyProfile StrategyProfile::with_strategy(int v, Strategy s) const {
  if (v < 0 || v >= n_) throw InvalidProfile(v, "node id out of range");
  std::vector<Strategy> strategies = strategies_;
  s.owner = v;
  strategies[v] = std::move(s);
  return StrategyProfile(n_, kind_, price_, std::move(strategies));
}

int StrategyProfile::purchase_count() const {
  int m = 0;
  for (const Strategy& s : strategies_) m += static_cast<int>(s.edges.size());
  return m;
}

bool StrategyProfile::operator==(const StrategyProfile& other) const {
  return n_ == other.n_ && kind_ == other.kind_ && price_ == other.price_ &&
         strategies_ == other.strategies_;
}

void dijkstra(int n, const std::vector<double>& adj, int source,
              std::vector<double>& out) {
  out.assign(n, kInfiniteCost);
  out[source] = 0.0;
  // Dense scan; n stays small enough that a heap would only add overhead.
  std::vector<char> done(n, 0);
  for (int round = 0; round < n; ++round) {
    int u = -1;
    double best = kInfiniteCost;
    for (int i = 0; i < n; ++i) {
      if (!done[i] && out[i] < best) {
        best = out[i];
        u = i;
      }
    }
    if (u < 0) break;
    done[u] = 1;
    const double* row = adj.data() + static_cast<std::size_t>(u) * n;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      const double w = row[v];
      if (std::isfinite(w) && best + w < out[v]) out[v] = best + w;
    }
  }
}

RealizedGame::RealizedGame(StrategyProfile profile)
    : profile_(std::move(profile)) {
  const int n = profile_.n();
  eff_.assign(static_cast<std::size_t>(n) * n, kInfiniteCost);
  for (const Strategy& s : profile_.strategies()) {
    for (const OwnedEdge& e : s.edges) {
      const std::size_t a = static_cast<std::size_t>(s.owner) * n + e.target;
      const std::size_t b = static_cast<std::size_t>(e.target) * n + s.owner;
      if (e.weight < eff_[a]) eff_[a] = eff_[b] = e.weight;
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double w = eff_[static_cast<std::size_t>(u) * n + v];
      if (std::isfinite(w)) {
        ++edge_count_;
        min_eff_ = std::min(min_eff_, w);
        max_eff_ = std::max(max_eff_, w);
      }
    }
  }

  dist_.assign(static_cast<std::size_t>(n) * n, kInfiniteCost);
  std::vector<double> row;
  for (int s = 0; s < n; ++s) {
    dijkstra(n, eff_, s, row);
    for (int v = 0; v < n; ++v) {
      dist_[static_cast<std::size_t>(s) * n + v] = row[v];
    }
  }
  // The two sweep directions can disagree by an ulp (summation order along
  // the path); pin the matrix to the smaller value so it is exactly
  // symmetric.
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double d = std::min(dist_[static_cast<std::size_t>(u) * n + v],
                                dist_[static_cast<std::size_t>(v) * n + u]);
      dist_[static_cast<std::size_t>(u) * n + v] = d;
      dist_[static_cast<std::size_t>(v) * n + u] = d;
    }
  }

  sum_dist_.assign(n, 0.0);
  ecc_.assign(n, 0.0);
  for (int s = 0; s < n; ++s) {
    double sum = 0.0, ecc = 0.0;
    for (int v = 0; v < n; ++v) {
      const double d = dist_[static_cast<std::size_t>(s) * n + v];
      sum += d;
      ecc = std::max(ecc, d);
    }
    sum_dist_[s] = sum;
    ecc_[s] = ecc;
    diameter_ = std::max(diameter_, ecc);
    if (std::isinf(ecc)) connected_ = false;
  }
}

RealizedGame realize(const StrategyProfile& profile) {
  return RealizedGame(profile);
}

CostBreakdown private_cost(const RealizedGame& game, int v) {
  const StrategyProfile& profile = game.profile();
  if (v < 0 || v >= profile.n()) {
    throw InvalidProfile(v, "node id out of range");
  }
  CostBreakdown cb;
  cb.node = v;
  for (const OwnedEdge& e : profile.strategy(v).edges) {
    cb.edge_cost += profile.price()(e.weight);
  }
  cb.distance_cost = profile.kind() == GameKind::kSum ? game.sum_distance(v)
                                                      : game.eccentricity(v);
  cb.total = cb.edge_cost + cb.distance_cost;
  return cb;
}

double social_cost(const RealizedGame& game) {
  double total = 0.0;
  for (int v = 0; v < game.n(); ++v) total += private_cost(game, v).total;
  return total;
}

StrategyProfile apply_deviation(const StrategyProfile& profile, int v,
                                Strategy new_strategy) {
  return profile.with_strategy(v, std::move(new_strategy));
}

}  // namespace qncg
