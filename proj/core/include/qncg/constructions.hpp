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

#ifndef QNCG_CONSTRUCTIONS_HPP
#define QNCG_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qncg/game_core.hpp"

namespace qncg {

enum class GraphFamily {
  kStarSatellitesOwn,
  kStarCenterOwns,
  kClique,
  kCliqueOneOwner,
};

const char* to_string(GraphFamily family);

// A constructed profile together with the closed-form cost it was built to
// achieve. The predicted cost always matches social_cost(realize(profile))
// within tolerance; tests enforce that.
struct ConstructionOutcome {
  StrategyProfile profile;
  GraphFamily family;
  double weight = 0.0;           // the uniform edge weight used
  std::string case_label;        // which construction case fired
  double predicted_cost = 0.0;   // closed-form social cost
  std::optional<double> proof_ratio;  // worst-case clique only
};

// Profile builders. Star center is node 0; satellites are 1..n-1. Clique
// ownership is lexicographic: the lower endpoint owns the pair's edge (node 0
// therefore owns all of its n-1 edges).
StrategyProfile star_profile(int n, GameKind kind, const PriceFunction& p,
                             double weight, bool satellites_own);
StrategyProfile clique_profile(int n, GameKind kind, const PriceFunction& p,
                               double weight);

// Cheapest of the two optimal-candidate shapes for the sum game: a star with
// all edges at the minimizer of p(x) + 2(n-1)x, or a clique with all edges at
// the minimizer of p(x) + 2x. Ties go to the star.
ConstructionOutcome opt_sum(int n, const PriceFunction& p);

// An equilibrium of the sum game: a star at the minimizer of p(x) + (n-1)x
// owned by the satellites, or a clique at the minimizer of p(x) + x,
// depending on which price regime holds. n == 2 degenerates to a single edge.
ConstructionOutcome sum_ne(int n, const PriceFunction& p);

// Worst-case clique for the sum game: all edges at the top weight. Applies
// only when p(hi) <= lo, p(lo) <= hi and the p(x) + x minimizer is hi; the
// result carries the closed-form equilibrium/star cost ratio.
struct WorstCliqueResult {
  std::optional<ConstructionOutcome> outcome;
  std::vector<std::string> failed_conditions;
  bool ok() const { return outcome.has_value(); }
};
WorstCliqueResult sum_worst_clique(int n, const PriceFunction& p);

// An equilibrium of the max game; one of three shapes depending on how
// (n-1)p(x) + x and p(x) + x trade off.
ConstructionOutcome max_ne(int n, const PriceFunction& p);

// Max-game cost reference: a star with all edges at the minimizer of
// x + p(x)/2, owned by the satellites.
ConstructionOutcome max_opt_star(int n, const PriceFunction& p);

// Closed-form social costs of the uniform-weight shapes.
double star_cost_sum(int n, double weight, double price);
double clique_cost_sum(int n, double weight, double price);
double star_cost_max(int n, double weight, double price);
double clique_cost_max(int n, double weight, double price);

}  // namespace qncg

#endif  // QNCG_CONSTRUCTIONS_HPP
