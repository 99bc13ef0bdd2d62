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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qncg/constructions.hpp"

using namespace qncg;

namespace {

StrategyProfile make_profile(
    int n, GameKind kind, const PriceFunction& p,
    const std::vector<std::tuple<int, int, double>>& edges) {
  std::vector<Strategy> strategies(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) strategies[v].owner = v;
  for (const auto& [owner, target, weight] : edges) {
    strategies[owner].edges.push_back({target, weight});
  }
  return StrategyProfile(n, kind, p, std::move(strategies));
}

const PriceFunction kUnitPrice = PriceFunction::constant(1, 1, 1);

}  // namespace

TEST_CASE("realize a single bought edge") {
  const auto p = PriceFunction::constant(1, 1, 2);
  const auto game =
      realize(make_profile(2, GameKind::kSum, p, {{0, 1, 1.5}}));
  CHECK(game.distance(0, 1) == 1.5);
  CHECK(game.diameter() == 1.5);
  CHECK(game.connected());
}

TEST_CASE("realize a path adds weights") {
  const auto game = realize(
      make_profile(3, GameKind::kSum, kUnitPrice, {{0, 1, 1}, {1, 2, 1}}));
  CHECK(game.distance(0, 2) == 2.0);
  CHECK(game.diameter() == 2.0);
}

TEST_CASE("parallel purchases: minimum weight routes, both prices count") {
  const auto p = PriceFunction::reciprocal(4, 1, 10);
  const auto profile =
      make_profile(3, GameKind::kSum, p, {{0, 1, 3.0}, {1, 0, 1.0}, {1, 2, 1.0}});
  const auto game = realize(profile);
  CHECK(game.effective_weight(0, 1) == 1.0);
  CHECK(game.distance(0, 1) == 1.0);
  // Node 0 still pays for its own weight-3 purchase.
  CHECK(private_cost(game, 0).edge_cost == doctest::Approx(4.0 / 3.0));
  CHECK(private_cost(game, 1).edge_cost == doctest::Approx(4.0 + 4.0));
}

TEST_CASE("star private costs in both games") {
  const auto star = make_profile(3, GameKind::kSum, kUnitPrice,
                                 {{1, 0, 1}, {2, 0, 1}});
  const auto sum_game = realize(star);
  CHECK(private_cost(sum_game, 0).total == doctest::Approx(2.0));
  CHECK(private_cost(sum_game, 1).total == doctest::Approx(4.0));
  CHECK(private_cost(sum_game, 2).total == doctest::Approx(4.0));
  CHECK(social_cost(sum_game) == doctest::Approx(10.0));

  const auto max_game = realize(make_profile(3, GameKind::kMax, kUnitPrice,
                                             {{1, 0, 1}, {2, 0, 1}}));
  CHECK(private_cost(max_game, 0).total == doctest::Approx(1.0));
  CHECK(private_cost(max_game, 1).total == doctest::Approx(3.0));
  CHECK(social_cost(max_game) == doctest::Approx(7.0));
}

TEST_CASE("clique social cost") {
  const auto game = realize(clique_profile(3, GameKind::kSum, kUnitPrice, 1.0));
  CHECK(social_cost(game) == doctest::Approx(9.0));
}

TEST_CASE("disconnected profiles cost infinity") {
  const auto game =
      realize(StrategyProfile::empty(2, GameKind::kSum, kUnitPrice));
  CHECK(!game.connected());
  CHECK(std::isinf(private_cost(game, 0).total));
  CHECK(std::isinf(private_cost(game, 1).total));
  CHECK(std::isinf(social_cost(game)));
}

TEST_CASE("cost breakdown adds up") {
  const auto p = PriceFunction::reciprocal(4, 1, 10);
  const auto game = realize(make_profile(
      4, GameKind::kSum, p, {{0, 1, 2}, {1, 2, 1.5}, {2, 3, 4}, {3, 0, 1}}));
  for (int v = 0; v < 4; ++v) {
    const CostBreakdown cb = private_cost(game, v);
    CHECK(cb.total == doctest::Approx(cb.edge_cost + cb.distance_cost));
  }
}

TEST_CASE("apply_deviation has value semantics") {
  const auto profile =
      make_profile(2, GameKind::kSum, kUnitPrice, {{0, 1, 1}});
  Strategy empty;
  empty.owner = 0;
  const auto deviated = apply_deviation(profile, 0, empty);
  CHECK(std::isinf(social_cost(realize(deviated))));
  CHECK(social_cost(realize(profile)) == doctest::Approx(3.0));  // untouched

  // Identity replacement changes nothing.
  const auto same = apply_deviation(profile, 0, profile.strategy(0));
  CHECK(same == profile);
}

TEST_CASE("dropping a clique edge trades price against one detour") {
  const auto profile = clique_profile(3, GameKind::kSum, kUnitPrice, 1.0);
  const double before = private_cost(realize(profile), 0).total;
  Strategy s = profile.strategy(0);
  s.edges.erase(s.edges.begin() + 1);  // drop the edge to node 2
  const double after =
      private_cost(realize(apply_deviation(profile, 0, s)), 0).total;
  CHECK(after == doctest::Approx(before));  // saves p(1)=1, distance rises 1
}

TEST_CASE("profile invariants are enforced") {
  const auto p = PriceFunction::constant(1, 1, 2);
  CHECK_THROWS_AS(make_profile(3, GameKind::kSum, p, {{0, 0, 1}}),
                  InvalidProfile);
  CHECK_THROWS_AS(make_profile(3, GameKind::kSum, p, {{0, 1, 1}, {0, 1, 2}}),
                  InvalidProfile);
  CHECK_THROWS_AS(make_profile(3, GameKind::kSum, p, {{0, 1, 5}}),
                  InvalidProfile);
  CHECK_THROWS_AS(make_profile(3, GameKind::kSum, p, {{0, 3, 1}}),
                  InvalidProfile);
  CHECK_THROWS_AS(StrategyProfile::empty(1, GameKind::kSum, p),
                  InvalidProfile);
  try {
    make_profile(3, GameKind::kSum, p, {{1, 1, 1}});
    CHECK(false);
  } catch (const InvalidProfile& e) {
    CHECK(e.node == 1);
  }
}

TEST_CASE("realize is deterministic bit for bit") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const PriceFunction p = oracle::random_price(rng);
    const auto profile = oracle::random_profile(
        rng, 5, GameKind::kSum, p, {p.interval().lo, p.interval().hi});
    const auto a = realize(profile);
    const auto b = realize(profile);
    CHECK(a.distance_matrix() == b.distance_matrix());
  }
}

TEST_CASE("distances match the matrix-relaxation oracle") {
  std::mt19937_64 rng(20260810);
  for (int trial = 0; trial < 60; ++trial) {
    const PriceFunction p = oracle::random_price(rng);
    const auto& iv = p.interval();
    const int n = 3 + static_cast<int>(rng() % 6);
    const auto profile = oracle::random_profile(
        rng, n, GameKind::kSum, p,
        {iv.lo, (iv.lo + iv.hi) / 2.0, iv.hi});
    const auto game = realize(profile);
    const auto expected = oracle::all_pairs_distances(profile);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        const double d = game.distance(u, v);
        const double e = expected[static_cast<std::size_t>(u) * n + v];
        if (std::isinf(e)) {
          CHECK(std::isinf(d));
        } else {
          CHECK(d == doctest::Approx(e).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("distance matrix invariants") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 30; ++trial) {
    const PriceFunction p = oracle::random_price(rng);
    const auto& iv = p.interval();
    const int n = 3 + static_cast<int>(rng() % 5);
    const auto profile =
        oracle::random_profile(rng, n, GameKind::kSum, p, {iv.lo, iv.hi});
    const auto game = realize(profile);
    for (int u = 0; u < n; ++u) {
      CHECK(game.distance(u, u) == 0.0);
      for (int v = 0; v < n; ++v) {
        CHECK(game.distance(u, v) == game.distance(v, u));
        if (game.has_edge(u, v)) {
          CHECK(game.distance(u, v) <= game.effective_weight(u, v) + 1e-12);
        }
        for (int w = 0; w < n; ++w) {
          if (std::isfinite(game.distance(u, w)) &&
              std::isfinite(game.distance(w, v))) {
            CHECK(game.distance(u, v) <=
                  game.distance(u, w) + game.distance(w, v) + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("max distance cost never exceeds sum distance cost") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const PriceFunction p = oracle::random_price(rng);
    const auto& iv = p.interval();
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto sum_profile =
        oracle::random_profile(rng, n, GameKind::kSum, p, {iv.lo, iv.hi});
    const auto sum_game = realize(sum_profile);
    for (int v = 0; v < n; ++v) {
      CHECK(sum_game.eccentricity(v) <= sum_game.sum_distance(v) + 1e-12);
    }
  }
}

TEST_CASE("removing an edge never shortens any distance") {
  std::mt19937_64 rng(808);
  for (int trial = 0; trial < 30; ++trial) {
    const PriceFunction p = oracle::random_price(rng);
    const auto& iv = p.interval();
    const int n = 3 + static_cast<int>(rng() % 4);
    const auto profile =
        oracle::random_profile(rng, n, GameKind::kSum, p, {iv.lo, iv.hi});
    int owner = -1;
    for (int v = 0; v < n; ++v) {
      if (!profile.strategy(v).edges.empty()) owner = v;
    }
    if (owner < 0) continue;
    Strategy s = profile.strategy(owner);
    s.edges.pop_back();
    const auto before = realize(profile);
    const auto after = realize(profile.with_strategy(owner, s));
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        CHECK(after.distance(u, v) >= before.distance(u, v) - 1e-12);
      }
      if (u != owner) {
        CHECK(private_cost(after, u).edge_cost ==
              private_cost(before, u).edge_cost);
      }
    }
  }
}
