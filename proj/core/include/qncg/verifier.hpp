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

#ifndef QNCG_VERIFIER_HPP
#define QNCG_VERIFIER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qncg/constructions.hpp"
#include "qncg/dynamics.hpp"
#include "qncg/game_core.hpp"

namespace qncg {

struct Deviation {
  int node = -1;
  Strategy strategy;
  double gain = 0.0;  // old private cost minus new, > eps
};

// Outcome of a stability check against one deviation family. Stable means no
// searched deviation improves any node's cost by more than eps.
struct StabilityReport {
  std::uint64_t profile_hash = 0;
  DeviationFamily family = DeviationFamily::kExhaustiveSubset;
  bool stable = false;
  std::optional<Deviation> counterexample;
  double eps = kImproveEps;
  std::uint64_t deviations_examined = 0;
};

// Certifies a profile against one family over the candidate set. Nodes are
// scanned in ascending order; the first improving deviation found becomes the
// counterexample. Throws LimitExceeded like the underlying search.
StabilityReport certify_ne(const StrategyProfile& profile,
                           DeviationFamily family,
                           const CandidateWeights& cands,
                           const SearchLimits& limits = {});

// Exhaustive family up to the node limit, otherwise the conjunction of the
// four restricted families. Returns one report per family checked (a single
// report when exhaustive applies); certification holds when all are stable.
std::vector<StabilityReport> certify_auto(const StrategyProfile& profile,
                                          const CandidateWeights& cands,
                                          const SearchLimits& limits = {});
bool all_stable(const std::vector<StabilityReport>& reports);

// One checked inequality: satisfied iff lhs relates to rhs in the bound's
// direction within tolerance. slack is the margin in the satisfied direction.
struct BoundCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  double slack = 0.0;
};

// Sum-game social cost lower bound from the minimum edge weight and the edge
// count. Requires a connected graph (throws Disconnected). Checked as
// social_cost >= rhs.
BoundCheck sum_lower_bound(const RealizedGame& game);

// Sum-game equilibrium cost upper bound through the smallest distance-cost
// node. Requires a Stable certificate for the profile (throws NotCertified
// on a missing or mismatching witness).
BoundCheck sum_cost_upper_check(const RealizedGame& game,
                                const StabilityReport& witness);

// Sum-game equilibrium diameter bound (explicit constants) plus the
// companion check that no effective weight exceeds p(x*) + x* for the
// p(x) + x minimizer x*. Returns both checks.
std::vector<BoundCheck> sum_diameter_check(const RealizedGame& game,
                                           const StabilityReport& witness);

// Max-game universal social cost lower bound value: (x* + p(x*)/2) * n with
// x* minimizing x + p(x)/2.
double max_lower_bound(int n, const PriceFunction& p);
// The same bound as a check against a realized game's social cost.
BoundCheck max_lower_bound_check(const RealizedGame& game);

// Max-game equilibrium cost upper bound through the smallest eccentricity.
BoundCheck max_cost_upper_check(const RealizedGame& game,
                                const StabilityReport& witness);

// Max-game equilibrium diameter root inequality at parameter k =
// (diam - x) / (4x): k^3 - 3k^2 + 2k <= p(x)^2 n / x^2. x must lie in the
// weight interval (throws OutOfDomain).
BoundCheck max_diameter_check(const RealizedGame& game,
                              const StabilityReport& witness, double x);

// Ratio of a certified equilibrium's social cost to a cost reference,
// annotated with the applicable closed-form bound values.
struct RatioReport {
  GameKind kind = GameKind::kSum;
  double ne_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  std::string case_label;
  std::map<std::string, double> bounds;
};

struct CertifiedProfile {
  StrategyProfile profile;
  StabilityReport report;
};

// Worst certified equilibrium cost against the game's cost reference
// (opt_sum for the sum game, the max-game lower bound for the max game).
// Throws NotCertified unless every profile carries a Stable witness.
RatioReport poa_report(GameKind kind, int n, const PriceFunction& p,
                       const std::vector<CertifiedProfile>& equilibria);

// Constructed equilibrium cost against the cost reference, with the
// applicable constant ceiling for the construction case that fired.
RatioReport pos_report(GameKind kind, int n, const PriceFunction& p);

// Every strategy profile over n <= 4 nodes with weights from the candidate
// set, deduplicated by realized structure (per pair: no edge, one purchase,
// or two parallel purchases, weights sorted). Throws CapExceeded when the
// deduplicated stream would exceed cap.
std::vector<StrategyProfile> enumerate_profiles(int n, GameKind kind,
                                                const PriceFunction& p,
                                                const CandidateWeights& cands,
                                                std::uint64_t cap);

}  // namespace qncg

#endif  // QNCG_VERIFIER_HPP
