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

#include "qncg/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "qncg/serialization.hpp"

namespace qncg {

StabilityReport certify_ne(const StrategyProfile& profile,
                           DeviationFamily family,
                           const CandidateWeights& cands,
                           const SearchLimits& limits) {
  StabilityReport report;
  report.profile_hash = profile_hash(profile);
  report.family = family;
  report.eps = limits.improve_eps;
  for (int v = 0; v < profile.n(); ++v) {
    auto response = improving_response_counted(profile, v, family, cands,
                                               limits,
                                               &report.deviations_examined);
    if (!response) continue;
    DeviationSearcher searcher(profile, v);
    const double old_cost = searcher.current_cost();
    const double new_cost = searcher.cost_of(response->edges);
    report.stable = false;
    report.counterexample = Deviation{v, *response, old_cost - new_cost};
    return report;
  }
  report.stable = true;
  return report;
}

std::vector<StabilityReport> certify_auto(const StrategyProfile& profile,
                                          const CandidateWeights& cands,
                                          const SearchLimits& limits) {
  std::vector<StabilityReport> reports;
  if (profile.n() <= limits.exhaustive_max_nodes) {
    reports.push_back(certify_ne(profile, DeviationFamily::kExhaustiveSubset,
                                 cands, limits));
    return reports;
  }
  for (DeviationFamily family :
       {DeviationFamily::kRemoveOnly, DeviationFamily::kSingleAdd,
        DeviationFamily::kSingleReweight, DeviationFamily::kStarCollapse}) {
    reports.push_back(certify_ne(profile, family, cands, limits));
    if (!reports.back().stable) break;
  }
  return reports;
}

bool all_stable(const std::vector<StabilityReport>& reports) {
  if (reports.empty()) return false;
  return std::all_of(reports.begin(), reports.end(),
                     [](const StabilityReport& r) { return r.stable; });
}

namespace {

void require_witness(const RealizedGame& game, const StabilityReport& witness,
                     const char* bound_name) {
  if (!witness.stable) {
    throw NotCertified(std::string(bound_name) +
                       " applies to certified equilibria only");
  }
  if (witness.profile_hash != profile_hash(game.profile())) {
    throw NotCertified(std::string(bound_name) +
                       ": certificate does not match this profile");
  }
}

void require_kind(const RealizedGame& game, GameKind kind,
                  const char* bound_name) {
  if (game.profile().kind() != kind) {
    throw NotCertified(std::string(bound_name) + " is a " +
                       to_string(kind) + "-game bound");
  }
}

BoundCheck make_lower(std::string name, double lhs, double rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.satisfied = approx_ge(lhs, rhs, kBoundEps);
  c.slack = lhs - rhs;
  return c;
}

BoundCheck make_upper(std::string name, double lhs, double rhs) {
  BoundCheck c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.satisfied = approx_le(lhs, rhs, kBoundEps);
  c.slack = rhs - lhs;
  return c;
}

}  // namespace

BoundCheck sum_lower_bound(const RealizedGame& game) {
  require_kind(game, GameKind::kSum, "sum-social-lower");
  if (!game.connected()) {
    throw Disconnected("sum-social-lower needs a connected graph");
  }
  const PriceFunction& p = game.profile().price();
  const int n = game.n();
  const double min_w = game.min_effective_weight();
  const double m = game.profile().purchase_count();
  const TradeoffMinimizer t = p.minimize_tradeoff(1.0);
  const double rhs =
      2.0 * min_w * n * (n - 1) + m * (p(t.argmin) + t.argmin - 4.0 * min_w);
  return make_lower("sum-social-lower", social_cost(game), rhs);
}

BoundCheck sum_cost_upper_check(const RealizedGame& game,
                                const StabilityReport& witness) {
  require_kind(game, GameKind::kSum, "sum-ne-cost-upper");
  require_witness(game, witness, "sum-ne-cost-upper");
  const PriceFunction& p = game.profile().price();
  const int n = game.n();
  double delta = kInfiniteCost;
  for (int v = 0; v < n; ++v) delta = std::min(delta, game.sum_distance(v));
  const double x = p.minimize_tradeoff(1.0).argmin;
  const double rhs = n * delta + x * (n - 1.0) * (n - 1.0) +
                     2.0 * (p(x) + x) * n * (n - 1.0);
  return make_upper("sum-ne-cost-upper", social_cost(game), rhs);
}

std::vector<BoundCheck> sum_diameter_check(const RealizedGame& game,
                                           const StabilityReport& witness) {
  require_kind(game, GameKind::kSum, "sum-ne-diameter");
  require_witness(game, witness, "sum-ne-diameter");
  const PriceFunction& p = game.profile().price();
  const WeightInterval& iv = p.interval();
  const double x_star = p.minimize_tradeoff(1.0).argmin;
  const double tradeoff = p(x_star) + x_star;

  std::vector<BoundCheck> checks;
  const double max_w =
      game.edge_count() > 0 ? game.max_effective_weight() : 0.0;
  checks.push_back(make_upper("sum-ne-max-weight", max_w, tradeoff));

  double rhs = 0.0;
  if (iv.hi <= tradeoff) {
    rhs = 2.0 * (p(iv.hi) + iv.hi);
  } else {
    const double x =
        p(x_star) <= x_star ? x_star : iv.clamp(p(x_star));
    rhs = tradeoff * p(x) / x + x;
  }
  checks.push_back(make_upper("sum-ne-diameter", game.diameter(), rhs));
  return checks;
}

double max_lower_bound(int n, const PriceFunction& p) {
  // x minimizing x + p(x)/2, computed through the p(x) + 2x minimizer.
  const double x = p.minimize_tradeoff(2.0).argmin;
  return (x + p(x) / 2.0) * n;
}

BoundCheck max_lower_bound_check(const RealizedGame& game) {
  require_kind(game, GameKind::kMax, "max-social-lower");
  return make_lower("max-social-lower", social_cost(game),
                    max_lower_bound(game.n(), game.profile().price()));
}

BoundCheck max_cost_upper_check(const RealizedGame& game,
                                const StabilityReport& witness) {
  require_kind(game, GameKind::kMax, "max-ne-cost-upper");
  require_witness(game, witness, "max-ne-cost-upper");
  const PriceFunction& p = game.profile().price();
  const int n = game.n();
  double radius = kInfiniteCost;
  for (int v = 0; v < n; ++v) radius = std::min(radius, game.eccentricity(v));
  const double x = p.minimize_tradeoff(2.0).argmin;
  const double rhs =
      n * radius + x * (n - 1.0) + 2.0 * (p(x) + x) * (n - 1.0);
  return make_upper("max-ne-cost-upper", social_cost(game), rhs);
}

BoundCheck max_diameter_check(const RealizedGame& game,
                              const StabilityReport& witness, double x) {
  require_kind(game, GameKind::kMax, "max-ne-diameter");
  require_witness(game, witness, "max-ne-diameter");
  const PriceFunction& p = game.profile().price();
  if (!p.interval().contains(x)) {
    throw OutOfDomain("max-ne-diameter parameter x outside the interval");
  }
  const double k = (game.diameter() - x) / (4.0 * x);
  const double lhs = k * k * k - 3.0 * k * k + 2.0 * k;
  const double px = p(p.interval().clamp(x));
  const double rhs = px * px * game.n() / (x * x);
  return make_upper("max-ne-diameter", lhs, rhs);
}

RatioReport poa_report(GameKind kind, int n, const PriceFunction& p,
                       const std::vector<CertifiedProfile>& equilibria) {
  if (equilibria.empty()) {
    throw NotCertified("anarchy ratio needs at least one equilibrium");
  }
  RatioReport report;
  report.kind = kind;
  report.ne_cost = -kInfiniteCost;
  for (const CertifiedProfile& cert : equilibria) {
    if (!cert.report.stable ||
        cert.report.profile_hash != profile_hash(cert.profile)) {
      throw NotCertified("anarchy ratio over uncertified profiles");
    }
    report.ne_cost =
        std::max(report.ne_cost, social_cost(realize(cert.profile)));
  }

  if (kind == GameKind::kSum) {
    report.opt_cost = opt_sum(n, p).predicted_cost;
    const double x = p.minimize_tradeoff(1.0).argmin;
    report.bounds["n"] = n;
    report.bounds["tradeoff-over-min-weight"] =
        (p(x) + x) / p.interval().lo;
    const WorstCliqueResult worst = sum_worst_clique(n, p);
    if (worst.ok()) {
      report.bounds["worst-clique-ratio"] = *worst.outcome->proof_ratio;
    }
  } else {
    report.opt_cost = max_lower_bound(n, p);
    // The two minimizer readings differ in general; both are reported.
    const double via_dist = p.minimize_tradeoff(2.0).argmin;   // x + p(x)/2
    const double via_price = p.minimize_scaled_price(2.0).argmin;  // p(x)+x/2
    report.bounds["minimizer-x-plus-half-p"] = via_dist;
    report.bounds["minimizer-p-plus-half-x"] = via_price;
    report.bounds["one-plus-cbrt-n"] = 1.0 + std::cbrt(static_cast<double>(n));
    const double py = p(via_price);
    report.bounds["explicit-cost-over-lower"] =
        n * (py + 2.0 * via_price + std::cbrt(py * py * via_price * n)) /
        max_lower_bound(n, p);
  }
  report.ratio = report.ne_cost / report.opt_cost;
  return report;
}

RatioReport pos_report(GameKind kind, int n, const PriceFunction& p) {
  RatioReport report;
  report.kind = kind;
  if (kind == GameKind::kSum) {
    const ConstructionOutcome ne = sum_ne(n, p);
    const ConstructionOutcome opt = opt_sum(n, p);
    report.ne_cost = ne.predicted_cost;
    report.opt_cost = opt.predicted_cost;
    report.case_label = ne.case_label + std::string("/") + opt.case_label;
    const bool ne_star = ne.family == GraphFamily::kStarSatellitesOwn;
    const bool opt_star = opt.family == GraphFamily::kStarSatellitesOwn;
    if (ne_star == opt_star) {
      report.bounds["ceiling"] = 2.0;
    } else if (ne_star) {
      report.bounds["ceiling"] = 6.0;
    } else {
      const double x_one = p.minimize_tradeoff(1.0).argmin;
      const double x_all = p.minimize_tradeoff(n - 1.0).argmin;
      report.bounds["ceiling"] = 2.0 + 2.0 * x_one / x_all;
    }
  } else {
    const ConstructionOutcome ne = max_ne(n, p);
    report.ne_cost = ne.predicted_cost;
    report.opt_cost = max_lower_bound(n, p);
    report.case_label = ne.case_label;
    report.bounds["ceiling"] =
        ne.family == GraphFamily::kStarCenterOwns ? 8.0 : 4.0;
  }
  report.ratio = report.ne_cost / report.opt_cost;
  return report;
}

std::vector<StrategyProfile> enumerate_profiles(int n, GameKind kind,
                                                const PriceFunction& p,
                                                const CandidateWeights& cands,
                                                std::uint64_t cap) {
  if (n < 2 || n > 4) {
    throw LimitExceeded("profile enumeration supports 2 <= n <= 4");
  }
  const std::vector<double>& w = cands.weights;
  const std::uint64_t k = w.size();

  // Per-pair realized classes: none, one purchase (lower id owns), two
  // parallel purchases with sorted weights. Ownership flips do not change
  // the realized structure or the social cost.
  struct PairOption {
    int purchases;  // 0, 1, 2
    double w_low = 0.0, w_high = 0.0;
  };
  std::vector<PairOption> options;
  options.push_back({0});
  for (std::uint64_t i = 0; i < k; ++i) options.push_back({1, w[i], 0.0});
  for (std::uint64_t i = 0; i < k; ++i) {
    for (std::uint64_t j = i; j < k; ++j) {
      options.push_back({2, w[i], w[j]});
    }
  }

  const int pairs = n * (n - 1) / 2;
  std::uint64_t total = 1;
  for (int i = 0; i < pairs; ++i) {
    if (total > cap / options.size() + 1) {
      throw CapExceeded("profile enumeration over the cap");
    }
    total *= options.size();
  }
  if (total > cap) throw CapExceeded("profile enumeration over the cap");

  std::vector<std::pair<int, int>> pair_ids;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pair_ids.emplace_back(u, v);
  }

  std::vector<StrategyProfile> out;
  out.reserve(total);
  std::vector<std::size_t> odo(pair_ids.size(), 0);
  while (true) {
    std::vector<Strategy> strategies(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) strategies[v].owner = v;
    for (std::size_t i = 0; i < pair_ids.size(); ++i) {
      const PairOption& opt = options[odo[i]];
      const auto [u, v] = pair_ids[i];
      if (opt.purchases >= 1) strategies[u].edges.push_back({v, opt.w_low});
      if (opt.purchases == 2) strategies[v].edges.push_back({u, opt.w_high});
    }
    out.emplace_back(n, kind, p, std::move(strategies));

    std::size_t pos = 0;
    while (pos < odo.size()) {
      if (++odo[pos] < options.size()) break;
      odo[pos] = 0;
      ++pos;
    }
    if (pos == odo.size()) break;
  }
  return out;
}

}  // namespace qncg
