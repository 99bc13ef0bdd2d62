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

#ifndef QNCG_DYNAMICS_HPP
#define QNCG_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qncg/game_core.hpp"

namespace qncg {

// Finite weight set deviations are searched over: the interval endpoints,
// the minimizers of p(x) + k*x and of k*p(x) + x for k = 1..n-1, and a
// uniform grid. Sorted and deduplicated.
struct CandidateWeights {
  std::vector<double> weights;

  static CandidateWeights build(const PriceFunction& p, int n, int grid = 64);
};

// Restricted classes of unilateral strategy changes.
//   kRemoveOnly:       drop any nonempty subset of own edges
//   kSingleAdd:        buy one extra edge to a node not yet bought
//   kSingleReweight:   change the weight of one own edge
//   kStarCollapse:     replace the whole strategy by at most one edge
//   kExhaustiveSubset: any target subset, weights optimized per subset
enum class DeviationFamily {
  kRemoveOnly,
  kSingleAdd,
  kSingleReweight,
  kStarCollapse,
  kExhaustiveSubset,
};

const char* to_string(DeviationFamily family);
std::optional<DeviationFamily> parse_family(std::string_view name);

struct SearchLimits {
  int exhaustive_max_nodes = 8;
  double improve_eps = kImproveEps;
};

// Evaluates private costs of candidate strategies for one node without
// re-realizing the whole profile: the rest of the graph is fixed while one
// node deviates.
class DeviationSearcher {
 public:
  DeviationSearcher(const StrategyProfile& profile, int v);

  // Private cost of v if it played exactly `edges` (sorted by target).
  double cost_of(const std::vector<OwnedEdge>& edges);
  double current_cost();

  int node() const { return v_; }

 private:
  const StrategyProfile& profile_;
  int n_;
  int v_;
  std::vector<double> base_;  // adjacency without v's purchases
  std::vector<double> work_;
  std::vector<double> dist_;
};

// First strategy in the family's canonical order that lowers v's cost by
// more than the improvement threshold; nullopt when the family holds no such
// move. Weight choices within one structural move are optimized (ties to the
// smaller weight). Throws LimitExceeded for the exhaustive family above the
// node limit.
std::optional<Strategy> improving_response(const StrategyProfile& profile,
                                           int v, DeviationFamily family,
                                           const CandidateWeights& cands,
                                           const SearchLimits& limits = {});

// Same search, also accumulating how many deviations were evaluated.
std::optional<Strategy> improving_response_counted(
    const StrategyProfile& profile, int v, DeviationFamily family,
    const CandidateWeights& cands, const SearchLimits& limits,
    std::uint64_t* examined);

// Cost-minimal strategy over all target subsets, weights optimized per
// subset by coordinate descent over the candidate set (two deterministic
// starts, at most n sweeps each). Ties break toward fewer edges, then
// smaller total weight, then lexicographic targets. Never worse than the
// current strategy. Throws LimitExceeded above the node limit.
Strategy best_response(const StrategyProfile& profile, int v,
                       const CandidateWeights& cands,
                       const SearchLimits& limits = {});

enum class SchedulerKind { kRoundRobin, kRandomPermutation };

struct Scheduler {
  SchedulerKind kind = SchedulerKind::kRoundRobin;
  std::uint64_t seed = 0;  // required for kRandomPermutation
};

struct DynamicsMove {
  int round = 0;
  int node = 0;
  double old_cost = 0.0;
  double new_cost = 0.0;
  Strategy strategy;
};

struct DynamicsTrace {
  std::vector<DynamicsMove> moves;
  bool converged = false;
  int rounds = 0;
  Scheduler scheduler;
  DeviationFamily family = DeviationFamily::kExhaustiveSubset;
  std::optional<StrategyProfile> final_profile;

  const StrategyProfile& final() const { return *final_profile; }
};

// Applies one improving response per activation, passing over the nodes in
// scheduler order, until a full pass makes no move (converged) or max_rounds
// passes elapse. Deterministic given the seed.
DynamicsTrace run_dynamics(const StrategyProfile& initial,
                           const CandidateWeights& cands, Scheduler scheduler,
                           DeviationFamily family, int max_rounds,
                           const SearchLimits& limits = {});

}  // namespace qncg

#endif  // QNCG_DYNAMICS_HPP
