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

#include "qncg/constructions.hpp"

#include <cmath>

namespace qncg {

const char* to_string(GraphFamily family) {
  switch (family) {
    case GraphFamily::kStarSatellitesOwn: return "star-satellites-own";
    case GraphFamily::kStarCenterOwns: return "star-center-owns";
    case GraphFamily::kClique: return "clique";
    case GraphFamily::kCliqueOneOwner: return "clique-one-owner";
  }
  return "?";
}

StrategyProfile star_profile(int n, GameKind kind, const PriceFunction& p,
                             double weight, bool satellites_own) {
  std::vector<Strategy> strategies(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) strategies[v].owner = v;
  for (int v = 1; v < n; ++v) {
    if (satellites_own) {
      strategies[v].edges.push_back({0, weight});
    } else {
      strategies[0].edges.push_back({v, weight});
    }
  }
  return StrategyProfile(n, kind, p, std::move(strategies));
}

StrategyProfile clique_profile(int n, GameKind kind, const PriceFunction& p,
                               double weight) {
  std::vector<Strategy> strategies(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) strategies[v].owner = v;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      strategies[u].edges.push_back({v, weight});
    }
  }
  return StrategyProfile(n, kind, p, std::move(strategies));
}

double star_cost_sum(int n, double weight, double price) {
  // n-1 spokes, each the only connection of its satellite: distance total is
  // 2(n-1)^2 * weight.
  return (n - 1) * (price + 2.0 * (n - 1) * weight);
}

double clique_cost_sum(int n, double weight, double price) {
  return n * (n - 1) * (weight + price / 2.0);
}

double star_cost_max(int n, double weight, double price) {
  // Center eccentricity is weight, each satellite's is 2*weight; with a
  // single satellite both ends sit one edge apart.
  if (n == 2) return price + 2.0 * weight;
  return (n - 1) * price + (2 * n - 1) * weight;
}

double clique_cost_max(int n, double weight, double price) {
  return n * (n - 1) / 2.0 * price + n * weight;
}

ConstructionOutcome opt_sum(int n, const PriceFunction& p) {
  const TradeoffMinimizer star_min = p.minimize_tradeoff(2.0 * (n - 1));
  const TradeoffMinimizer clique_min = p.minimize_tradeoff(2.0);
  const double star_cost = star_cost_sum(n, star_min.argmin, p(star_min.argmin));
  const double clique_cost =
      clique_cost_sum(n, clique_min.argmin, p(clique_min.argmin));
  if (star_cost <= clique_cost) {
    return {star_profile(n, GameKind::kSum, p, star_min.argmin, true),
            GraphFamily::kStarSatellitesOwn, star_min.argmin, "star",
            star_cost, std::nullopt};
  }
  return {clique_profile(n, GameKind::kSum, p, clique_min.argmin),
          GraphFamily::kClique, clique_min.argmin, "clique", clique_cost,
          std::nullopt};
}

ConstructionOutcome sum_ne(int n, const PriceFunction& p) {
  const double x_one = p.minimize_tradeoff(1.0).argmin;        // best for 1 path
  const double x_all = p.minimize_tradeoff(n - 1.0).argmin;    // best for n-1
  const double p_one = p(x_one);
  const double p_all = p(x_all);

  if (x_all < p_one) {
    return {star_profile(n, GameKind::kSum, p, x_all, true),
            GraphFamily::kStarSatellitesOwn, x_all, "star-expensive-edges",
            star_cost_sum(n, x_all, p_all), std::nullopt};
  }
  // Cost change of the clique's strongest deviation: drop all n-1 edges and
  // buy a single one at the n-1-path optimum. Nonnegative means the clique
  // holds; ties keep the clique.
  const double exchange = p_all - x_one + (n - 1.0) * (x_all - p_one);
  if (exchange >= 0.0) {
    return {clique_profile(n, GameKind::kSum, p, x_one), GraphFamily::kClique,
            x_one, "clique-cheap-edges", clique_cost_sum(n, x_one, p_one),
            std::nullopt};
  }
  return {star_profile(n, GameKind::kSum, p, x_all, true),
          GraphFamily::kStarSatellitesOwn, x_all, "star-fallback",
          star_cost_sum(n, x_all, p_all), std::nullopt};
}

WorstCliqueResult sum_worst_clique(int n, const PriceFunction& p) {
  const WeightInterval& iv = p.interval();
  WorstCliqueResult result;
  if (!(p(iv.hi) <= iv.lo + kBoundEps)) {
    result.failed_conditions.push_back("p(hi) <= lo");
  }
  if (!(p(iv.lo) <= iv.hi + kBoundEps)) {
    result.failed_conditions.push_back("p(lo) <= hi");
  }
  if (!approx_eq(p.minimize_tradeoff(1.0).argmin, iv.hi, kBoundEps)) {
    result.failed_conditions.push_back("argmin of p(x)+x is hi");
  }
  if (!result.failed_conditions.empty()) return result;

  const double w = iv.hi;
  const double ratio = n * (p(iv.hi) + iv.hi) /
                       (p(iv.lo) + 2.0 * iv.lo * (n - 1.0));
  result.outcome = {clique_profile(n, GameKind::kSum, p, w),
                    GraphFamily::kClique, w, "clique-max-weight",
                    clique_cost_sum(n, w, p(w)), ratio};
  return result;
}

ConstructionOutcome max_ne(int n, const PriceFunction& p) {
  // chi_star: best weight when one node pays for n-1 edges.
  // chi_bar: best weight for a single edge and its round trip.
  const double chi_star = p.minimize_scaled_price(n - 1.0).argmin;
  const double chi_bar = p.minimize_tradeoff(1.0).argmin;
  const double p_star = p(chi_star);
  const double p_bar = p(chi_bar);

  if ((n - 1.0) * p_star + chi_star >= p_bar + 2.0 * chi_bar) {
    return {star_profile(n, GameKind::kMax, p, chi_bar, true),
            GraphFamily::kStarSatellitesOwn, chi_bar, "star-satellites-own",
            star_cost_max(n, chi_bar, p_bar), std::nullopt};
  }
  if (chi_star <= (n - 2.0) * p_star) {
    return {star_profile(n, GameKind::kMax, p, chi_star, false),
            GraphFamily::kStarCenterOwns, chi_star, "star-center-owns",
            star_cost_max(n, chi_star, p_star), std::nullopt};
  }
  return {clique_profile(n, GameKind::kMax, p, chi_star),
          GraphFamily::kCliqueOneOwner, chi_star, "clique-one-owner",
          clique_cost_max(n, chi_star, p_star), std::nullopt};
}

ConstructionOutcome max_opt_star(int n, const PriceFunction& p) {
  // argmin of x + p(x)/2, computed as the p(x) + 2x minimizer.
  const double w = p.minimize_tradeoff(2.0).argmin;
  return {star_profile(n, GameKind::kMax, p, w, true),
          GraphFamily::kStarSatellitesOwn, w, "star",
          star_cost_max(n, w, p(w)), std::nullopt};
}

}  // namespace qncg
