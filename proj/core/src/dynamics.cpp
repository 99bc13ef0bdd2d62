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

#include "qncg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace qncg {

CandidateWeights CandidateWeights::build(const PriceFunction& p, int n,
                                         int grid) {
  if (n < 2) throw InvalidConfig("candidate weights need n >= 2");
  if (grid < 2) throw InvalidConfig("candidate grid needs at least 2 points");
  const WeightInterval& iv = p.interval();
  std::vector<double> w;
  w.reserve(2 * static_cast<std::size_t>(n - 1) + static_cast<std::size_t>(grid));
  w.push_back(iv.lo);
  w.push_back(iv.hi);
  for (int k = 1; k <= n - 1; ++k) {
    w.push_back(p.minimize_tradeoff(static_cast<double>(k)).argmin);
    w.push_back(p.minimize_scaled_price(static_cast<double>(k)).argmin);
  }
  if (!iv.degenerate()) {
    for (int i = 0; i < grid; ++i) {
      w.push_back(iv.lo + (iv.hi - iv.lo) * i / (grid - 1));
    }
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return {std::move(w)};
}

const char* to_string(DeviationFamily family) {
  switch (family) {
    case DeviationFamily::kRemoveOnly: return "remove-only";
    case DeviationFamily::kSingleAdd: return "single-add";
    case DeviationFamily::kSingleReweight: return "single-reweight";
    case DeviationFamily::kStarCollapse: return "star-collapse";
    case DeviationFamily::kExhaustiveSubset: return "exhaustive";
  }
  return "?";
}

std::optional<DeviationFamily> parse_family(std::string_view name) {
  if (name == "remove-only") return DeviationFamily::kRemoveOnly;
  if (name == "single-add") return DeviationFamily::kSingleAdd;
  if (name == "single-reweight") return DeviationFamily::kSingleReweight;
  if (name == "star-collapse") return DeviationFamily::kStarCollapse;
  if (name == "exhaustive") return DeviationFamily::kExhaustiveSubset;
  return std::nullopt;
}

DeviationSearcher::DeviationSearcher(const StrategyProfile& profile, int v)
    : profile_(profile), n_(profile.n()), v_(v) {
  base_.assign(static_cast<std::size_t>(n_) * n_, kInfiniteCost);
  for (const Strategy& s : profile.strategies()) {
    if (s.owner == v_) continue;
    for (const OwnedEdge& e : s.edges) {
      const std::size_t a = static_cast<std::size_t>(s.owner) * n_ + e.target;
      const std::size_t b = static_cast<std::size_t>(e.target) * n_ + s.owner;
      if (e.weight < base_[a]) base_[a] = base_[b] = e.weight;
    }
  }
  work_ = base_;
}

double DeviationSearcher::cost_of(const std::vector<OwnedEdge>& edges) {
  // Only row/column v of the adjacency depends on v's strategy.
  for (int u = 0; u < n_; ++u) {
    const double w = base_[static_cast<std::size_t>(v_) * n_ + u];
    work_[static_cast<std::size_t>(v_) * n_ + u] = w;
    work_[static_cast<std::size_t>(u) * n_ + v_] = w;
  }
  double edge_cost = 0.0;
  for (const OwnedEdge& e : edges) {
    edge_cost += profile_.price()(e.weight);
    std::size_t a = static_cast<std::size_t>(v_) * n_ + e.target;
    std::size_t b = static_cast<std::size_t>(e.target) * n_ + v_;
    if (e.weight < work_[a]) work_[a] = work_[b] = e.weight;
  }
  dijkstra(n_, work_, v_, dist_);
  double dist_cost = 0.0;
  if (profile_.kind() == GameKind::kSum) {
    for (double d : dist_) dist_cost += d;
  } else {
    for (double d : dist_) dist_cost = std::max(dist_cost, d);
  }
  return edge_cost + dist_cost;
}

double DeviationSearcher::current_cost() {
  return cost_of(profile_.strategy(v_).edges);
}

namespace {

// Targets other than v, ascending.
std::vector<int> other_nodes(int n, int v) {
  std::vector<int> t;
  t.reserve(static_cast<std::size_t>(n) - 1);
  for (int u = 0; u < n; ++u) {
    if (u != v) t.push_back(u);
  }
  return t;
}

// Best candidate weight for a single edge slot, all other edges fixed.
// Returns true when some candidate strictly lowers `cost`; ties between
// equally good candidates keep the smallest one.
bool optimize_slot(DeviationSearcher& searcher, std::vector<OwnedEdge>& edges,
                   std::size_t slot, const CandidateWeights& cands,
                   double& cost) {
  bool changed = false;
  for (double w : cands.weights) {
    if (w == edges[slot].weight) continue;
    const double old_w = edges[slot].weight;
    edges[slot].weight = w;
    const double c = searcher.cost_of(edges);
    if (c < cost) {
      cost = c;
      changed = true;
    } else {
      edges[slot].weight = old_w;
    }
  }
  return changed;
}

struct DescentResult {
  std::vector<OwnedEdge> edges;
  double cost = kInfiniteCost;
};

// Coordinate descent over the subset's weights, at most n sweeps.
DescentResult descend(DeviationSearcher& searcher,
                      std::vector<OwnedEdge> edges,
                      const CandidateWeights& cands, int max_sweeps) {
  DescentResult res;
  res.cost = searcher.cost_of(edges);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      changed |= optimize_slot(searcher, edges, i, cands, res.cost);
    }
    if (!changed) break;
  }
  res.edges = std::move(edges);
  return res;
}

// Weight-optimized strategy for one target subset. Coordinate descent from
// two deterministic starts (current-or-top weights, all-bottom weights),
// plus a uniform-weight probe: the maximum distance couples the weights, so
// several of them may need to move together before any single move pays
// off. Probing every uniform assignment and descending from the best one
// covers exactly that case.
DescentResult optimize_subset(DeviationSearcher& searcher,
                              const StrategyProfile& profile, int v,
                              const std::vector<int>& targets,
                              std::uint32_t mask,
                              const CandidateWeights& cands) {
  const Strategy& cur = profile.strategy(v);
  const WeightInterval& iv = profile.price().interval();
  std::vector<OwnedEdge> warm, cold;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    double w = iv.hi;
    for (const OwnedEdge& e : cur.edges) {
      if (e.target == targets[i]) {
        w = e.weight;
        break;
      }
    }
    warm.push_back({targets[i], w});
    cold.push_back({targets[i], iv.lo});
  }
  const int n = profile.n();
  DescentResult a = descend(searcher, std::move(warm), cands, n);
  if (iv.degenerate() || a.edges.empty()) return a;
  {
    DescentResult b = descend(searcher, std::move(cold), cands, n);
    if (b.cost < a.cost) a = std::move(b);
  }
  if (a.edges.size() > 1) {
    std::vector<OwnedEdge> uniform = a.edges;
    double best_w = cands.weights.front();
    double best_cost = kInfiniteCost;
    for (double w : cands.weights) {
      for (OwnedEdge& e : uniform) e.weight = w;
      const double c = searcher.cost_of(uniform);
      if (c < best_cost) {
        best_cost = c;
        best_w = w;
      }
    }
    for (OwnedEdge& e : uniform) e.weight = best_w;
    DescentResult c = descend(searcher, std::move(uniform), cands, n);
    if (c.cost < a.cost) a = std::move(c);
  }
  return a;
}

std::optional<Strategy> first_improving(const StrategyProfile& profile, int v,
                                        DeviationFamily family,
                                        const CandidateWeights& cands,
                                        const SearchLimits& limits,
                                        std::uint64_t* examined) {
  DeviationSearcher searcher(profile, v);
  const double cur = searcher.current_cost();
  const Strategy& s = profile.strategy(v);
  const auto count = [&](std::uint64_t k) {
    if (examined) *examined += k;
  };
  const auto done = [&](std::vector<OwnedEdge> edges) {
    Strategy out;
    out.owner = v;
    out.edges = std::move(edges);
    out.normalize();
    return out;
  };

  switch (family) {
    case DeviationFamily::kRemoveOnly: {
      const std::size_t k = s.edges.size();
      if (k > 30) {
        throw LimitExceeded("removal subsets limited to 30 own edges, got " +
                            std::to_string(k));
      }
      for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<OwnedEdge> kept;
        for (std::size_t i = 0; i < k; ++i) {
          if (!(mask & (1u << i))) kept.push_back(s.edges[i]);
        }
        count(1);
        if (improves(cur, searcher.cost_of(kept), limits.improve_eps)) {
          return done(std::move(kept));
        }
      }
      return std::nullopt;
    }
    case DeviationFamily::kSingleAdd: {
      for (int t : other_nodes(profile.n(), v)) {
        bool owned = false;
        for (const OwnedEdge& e : s.edges) owned |= (e.target == t);
        if (owned) continue;
        std::vector<OwnedEdge> edges = s.edges;
        edges.push_back({t, 0.0});
        double best = kInfiniteCost;
        double best_w = cands.weights.front();
        for (double w : cands.weights) {
          edges.back().weight = w;
          count(1);
          const double c = searcher.cost_of(edges);
          if (c < best) {
            best = c;
            best_w = w;
          }
        }
        if (improves(cur, best, limits.improve_eps)) {
          edges.back().weight = best_w;
          return done(std::move(edges));
        }
      }
      return std::nullopt;
    }
    case DeviationFamily::kSingleReweight: {
      for (std::size_t i = 0; i < s.edges.size(); ++i) {
        std::vector<OwnedEdge> edges = s.edges;
        double best = kInfiniteCost;
        double best_w = edges[i].weight;
        for (double w : cands.weights) {
          if (w == s.edges[i].weight) continue;
          edges[i].weight = w;
          count(1);
          const double c = searcher.cost_of(edges);
          if (c < best) {
            best = c;
            best_w = w;
          }
        }
        if (improves(cur, best, limits.improve_eps)) {
          edges[i].weight = best_w;
          return done(std::move(edges));
        }
      }
      return std::nullopt;
    }
    case DeviationFamily::kStarCollapse: {
      if (!s.edges.empty()) {
        count(1);
        if (improves(cur, searcher.cost_of({}), limits.improve_eps)) {
          return done({});
        }
      }
      for (int t : other_nodes(profile.n(), v)) {
        std::vector<OwnedEdge> edges{{t, 0.0}};
        double best = kInfiniteCost;
        double best_w = cands.weights.front();
        for (double w : cands.weights) {
          edges[0].weight = w;
          count(1);
          const double c = searcher.cost_of(edges);
          if (c < best) {
            best = c;
            best_w = w;
          }
        }
        if (improves(cur, best, limits.improve_eps)) {
          edges[0].weight = best_w;
          return done(std::move(edges));
        }
      }
      return std::nullopt;
    }
    case DeviationFamily::kExhaustiveSubset: {
      if (profile.n() > limits.exhaustive_max_nodes || profile.n() > 31) {
        throw LimitExceeded("exhaustive search limited to " +
                            std::to_string(limits.exhaustive_max_nodes) +
                            " nodes, got " + std::to_string(profile.n()));
      }
      const std::vector<int> targets = other_nodes(profile.n(), v);
      for (std::uint32_t mask = 0; mask < (1u << targets.size()); ++mask) {
        DescentResult r =
            optimize_subset(searcher, profile, v, targets, mask, cands);
        count(1);
        if (improves(cur, r.cost, limits.improve_eps)) {
          return done(std::move(r.edges));
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Strategy> improving_response(const StrategyProfile& profile,
                                           int v, DeviationFamily family,
                                           const CandidateWeights& cands,
                                           const SearchLimits& limits) {
  return first_improving(profile, v, family, cands, limits, nullptr);
}

std::optional<Strategy> improving_response_counted(
    const StrategyProfile& profile, int v, DeviationFamily family,
    const CandidateWeights& cands, const SearchLimits& limits,
    std::uint64_t* examined) {
  return first_improving(profile, v, family, cands, limits, examined);
}

Strategy best_response(const StrategyProfile& profile, int v,
                       const CandidateWeights& cands,
                       const SearchLimits& limits) {
  if (profile.n() > limits.exhaustive_max_nodes || profile.n() > 31) {
    throw LimitExceeded("exhaustive search limited to " +
                        std::to_string(limits.exhaustive_max_nodes) +
                        " nodes, got " + std::to_string(profile.n()));
  }
  DeviationSearcher searcher(profile, v);
  Strategy best = profile.strategy(v);
  double best_cost = searcher.current_cost();
  const std::vector<int> targets = other_nodes(profile.n(), v);
  for (std::uint32_t mask = 0; mask < (1u << targets.size()); ++mask) {
    DescentResult r =
        optimize_subset(searcher, profile, v, targets, mask, cands);
    Strategy candidate;
    candidate.owner = v;
    candidate.edges = std::move(r.edges);
    candidate.normalize();
    if (r.cost < best_cost ||
        (r.cost == best_cost && strategy_less(candidate, best))) {
      best_cost = r.cost;
      best = std::move(candidate);
    }
  }
  return best;
}

DynamicsTrace run_dynamics(const StrategyProfile& initial,
                           const CandidateWeights& cands, Scheduler scheduler,
                           DeviationFamily family, int max_rounds,
                           const SearchLimits& limits) {
  if (max_rounds < 1) throw InvalidConfig("max_rounds must be at least 1");
  DynamicsTrace trace;
  trace.scheduler = scheduler;
  trace.family = family;
  StrategyProfile profile = initial;
  std::mt19937_64 rng(scheduler.seed);
  std::vector<int> order(static_cast<std::size_t>(profile.n()));
  std::iota(order.begin(), order.end(), 0);

  for (int round = 0; round < max_rounds; ++round) {
    if (scheduler.kind == SchedulerKind::kRandomPermutation) {
      std::shuffle(order.begin(), order.end(), rng);
    }
    trace.rounds = round + 1;
    bool moved = false;
    for (int v : order) {
      auto response = improving_response(profile, v, family, cands, limits);
      if (!response) continue;
      DeviationSearcher searcher(profile, v);
      const double old_cost = searcher.current_cost();
      const double new_cost = searcher.cost_of(response->edges);
      profile = profile.with_strategy(v, *response);
      trace.moves.push_back({round, v, old_cost, new_cost, *response});
      moved = true;
    }
    if (!moved) {
      trace.converged = true;
      break;
    }
  }
  trace.final_profile = std::move(profile);
  return trace;
}

}  // namespace qncg
