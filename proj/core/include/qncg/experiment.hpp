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

#ifndef QNCG_EXPERIMENT_HPP
#define QNCG_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qncg/verifier.hpp"

namespace qncg {

inline constexpr const char* kToolVersion = "0.1.0";

// A sweep over (price parameter, n) instances of one game kind. The flat
// key-value text form of this struct is the config file format; its
// canonical serialization defines the fingerprint.
struct ExperimentConfig {
  GameKind kind = GameKind::kSum;
  PriceForm form = PriceForm::kReciprocal;
  std::vector<double> alphas;      // one price variant per alpha (except table)
  std::vector<double> epss;        // linear only; crossed with alphas
  double lo = 1.0;
  double hi = 1.0;
  std::vector<PricePoint> points;  // table only
  std::vector<int> ns;
  int grid = 64;
  DeviationFamily family = DeviationFamily::kExhaustiveSubset;
  SchedulerKind scheduler = SchedulerKind::kRoundRobin;
  std::optional<std::uint64_t> seed;
  double eps_ne = kImproveEps;
  // Execution knobs, not part of the fingerprint.
  std::string out_dir;
  int workers = 0;  // 0 = hardware concurrency

  bool operator==(const ExperimentConfig& other) const;
};

// Throws InvalidConfig naming the first problem (empty n list, n < 2, price
// variants failing validation, missing seed for the randomized scheduler).
void validate_config(const ExperimentConfig& config);

// All price variants the config describes, in canonical order.
std::vector<PriceSpec> price_variants(const ExperimentConfig& config);

// Key-value text round-trip and the canonical fingerprint (execution knobs
// excluded).
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig parse_config(std::string_view text);
std::uint64_t config_fingerprint(const ExperimentConfig& config);

// One (price variant, n) instance outcome. `error` is set and the rest left
// defaulted when the instance failed; instance errors never abort a sweep.
struct InstanceRow {
  std::string price_spec;  // canonical
  double alpha = 0.0;
  double eps = 0.0;
  int n = 0;
  std::string case_label;
  std::string family_label;
  bool stable = false;
  double ne_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  double pos_ratio = 0.0;
  double pos_ceiling = 0.0;
  double anarchy_bound = 0.0;  // closed-form anarchy bound for the instance
  std::optional<double> worst_clique_ratio;
  std::vector<BoundCheck> checks;
  bool bounds_ok = false;
  std::string error;

  bool operator==(const InstanceRow&) const = default;
};

bool operator==(const BoundCheck& a, const BoundCheck& b);

struct ExperimentRecord {
  std::uint64_t fingerprint = 0;
  std::string version = kToolVersion;
  ExperimentConfig config;
  std::vector<InstanceRow> rows;
  double wall_seconds = 0.0;

  // Hash over the canonically serialized rows; wall time excluded.
  std::uint64_t rows_hash() const;
};

// Runs every (price, n) instance: construct, certify, bound checks, ratios.
// Instances run in parallel across `workers` threads; rows are written to
// <out_dir>/rows.csv incrementally in canonical order as they complete. When
// rows.csv already holds rows for this config, those instances are not rerun
// (instance-level resume keyed on (price fingerprint, n)).
ExperimentRecord run_experiment(const ExperimentConfig& config);

// Reporting. CSV columns are stable and documented in the README; the SVG
// plots per-n ratio polylines against the swept parameter with the matching
// closed-form bound curves overlaid (dashed).
std::string record_to_csv(const ExperimentRecord& record);
std::string record_to_json(const ExperimentRecord& record);
ExperimentRecord record_from_json(std::string_view json);
std::string record_to_svg(const ExperimentRecord& record);

bool operator==(const ExperimentRecord& a, const ExperimentRecord& b);

}  // namespace qncg

#endif  // QNCG_EXPERIMENT_HPP
