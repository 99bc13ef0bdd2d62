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

// Command line front end: construct the closed-form graphs, certify
// stability, run best-response dynamics, sweep whole parameter grids and
// render reports.
//
// Exit codes: 0 success, 1 instability found, 2 invalid input,
// 3 bound violation, 4 I/O failure.

#include <filesystem>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "qncg/experiment.hpp"
#include "qncg/serialization.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qncg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnstable = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitBoundViolation = 3;
constexpr int kExitIo = 4;

json num(double v) {
  if (std::isfinite(v)) return v;
  return shortest_repr(v);
}

json strategy_json(const Strategy& s) {
  json edges = json::array();
  for (const OwnedEdge& e : s.edges) {
    edges.push_back({{"target", e.target}, {"weight", e.weight}});
  }
  return {{"owner", s.owner}, {"edges", std::move(edges)}};
}

json check_json(const BoundCheck& c) {
  return {{"name", c.name},     {"lhs", num(c.lhs)},
          {"rhs", num(c.rhs)},  {"satisfied", c.satisfied},
          {"slack", num(c.slack)}};
}

struct GlobalOpts {
  std::string out_dir = "qncg-out";
  double tolerance = kImproveEps;
  int workers = 0;
};

SearchLimits limits_of(const GlobalOpts& opts) {
  SearchLimits limits;
  limits.improve_eps = opts.tolerance;
  return limits;
}

GameKind parse_kind(const std::string& name) {
  if (name == "sum") return GameKind::kSum;
  if (name == "max") return GameKind::kMax;
  throw InvalidConfig("unknown game '" + name + "' (want sum|max)");
}

DeviationFamily family_of(const std::string& name) {
  auto family = parse_family(name);
  if (!family) throw InvalidConfig("unknown family '" + name + "'");
  return *family;
}

StrategyProfile random_profile(int n, GameKind kind, const PriceFunction& p,
                               const CandidateWeights& cands,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> degree(0, std::min(2, n - 1));
  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_int_distribution<std::size_t> widx(0,
                                                  cands.weights.size() - 1);
  std::vector<Strategy> strategies(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    strategies[v].owner = v;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    used[v] = 1;
    for (int d = degree(rng); d > 0; --d) {
      int t = node(rng);
      if (used[t]) continue;
      used[t] = 1;
      strategies[v].edges.push_back({t, cands.weights[widx(rng)]});
    }
  }
  return StrategyProfile(n, kind, p, std::move(strategies));
}

int cmd_construct(const GlobalOpts& opts, const std::string& game,
                  int n, const std::string& price_spec,
                  const std::string& which) {
  const PriceFunction p{parse_price_spec(price_spec)};
  const GameKind kind = parse_kind(game);

  std::optional<ConstructionOutcome> outcome;
  if (which == "opt") {
    outcome = kind == GameKind::kSum ? opt_sum(n, p) : max_opt_star(n, p);
  } else if (which == "ne") {
    outcome = kind == GameKind::kSum ? sum_ne(n, p) : max_ne(n, p);
  } else if (which == "worst") {
    if (kind != GameKind::kSum) {
      throw InvalidConfig("worst-case construction exists for the sum game");
    }
    WorstCliqueResult worst = sum_worst_clique(n, p);
    if (!worst.ok()) {
      json j{{"error", "preconditions failed"},
             {"failed_conditions", worst.failed_conditions}};
      std::cout << j.dump(2) << "\n";
      return kExitInvalid;
    }
    outcome = std::move(*worst.outcome);
  } else {
    throw InvalidConfig("--which must be opt|ne|worst");
  }

  fs::create_directories(opts.out_dir);
  const std::string profile_path =
      (fs::path(opts.out_dir) / (which + "-profile.ncg")).string();
  save_profile(outcome->profile, profile_path);

  json j{{"profile", profile_path},
         {"family", to_string(outcome->family)},
         {"case", outcome->case_label},
         {"weight", outcome->weight},
         {"predicted_cost", num(outcome->predicted_cost)},
         {"realized_cost", num(social_cost(realize(outcome->profile)))}};
  if (outcome->proof_ratio) j["proof_ratio"] = num(*outcome->proof_ratio);
  write_file((fs::path(opts.out_dir) / (which + "-construct.json")).string(),
             j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(const GlobalOpts& opts, const std::string& profile_path,
               const std::string& family_name, bool all_bounds, int grid) {
  const StrategyProfile profile = load_profile(profile_path);
  const CandidateWeights cands =
      CandidateWeights::build(profile.price(), profile.n(), grid);
  const SearchLimits limits = limits_of(opts);

  std::vector<StabilityReport> reports;
  if (family_name == "auto") {
    reports = certify_auto(profile, cands, limits);
  } else {
    reports.push_back(
        certify_ne(profile, family_of(family_name), cands, limits));
  }

  json out = json::array();
  for (const StabilityReport& r : reports) {
    json j{{"family", to_string(r.family)},
           {"stable", r.stable},
           {"eps", r.eps},
           {"deviations_examined", r.deviations_examined}};
    if (r.counterexample) {
      j["counterexample"] = {{"node", r.counterexample->node},
                             {"gain", num(r.counterexample->gain)},
                             {"strategy",
                              strategy_json(r.counterexample->strategy)}};
    }
    out.push_back(std::move(j));
  }

  if (!all_stable(reports)) {
    std::cout << out.dump(2) << "\n";
    return kExitUnstable;
  }

  bool bounds_ok = true;
  if (all_bounds) {
    const RealizedGame game = realize(profile);
    const StabilityReport& witness = reports.front();
    std::vector<BoundCheck> checks;
    if (profile.kind() == GameKind::kSum) {
      checks.push_back(sum_lower_bound(game));
      checks.push_back(sum_cost_upper_check(game, witness));
      for (BoundCheck& c : sum_diameter_check(game, witness)) {
        checks.push_back(std::move(c));
      }
    } else {
      checks.push_back(max_lower_bound_check(game));
      checks.push_back(max_cost_upper_check(game, witness));
      checks.push_back(max_diameter_check(
          game, witness, profile.price().minimize_tradeoff(2.0).argmin));
    }
    json jchecks = json::array();
    for (const BoundCheck& c : checks) {
      bounds_ok &= c.satisfied;
      jchecks.push_back(check_json(c));
    }
    out.push_back({{"bound_checks", std::move(jchecks)}});
  }
  std::cout << out.dump(2) << "\n";
  return bounds_ok ? kExitOk : kExitBoundViolation;
}

int cmd_dynamics(const GlobalOpts& opts, const std::string& init,
                 const std::string& game, int n, const std::string& price_spec,
                 const std::string& family_name,
                 const std::string& scheduler_name, int max_rounds, int grid) {
  std::optional<StrategyProfile> initial;
  if (init != "empty" && init.rfind("random:", 0) != 0) {
    initial = load_profile(init);
  } else {
    if (price_spec.empty() || n < 2) {
      throw InvalidConfig(
          "--init empty|random:SEED needs --game, --n and --price");
    }
    const PriceFunction p{parse_price_spec(price_spec)};
    const GameKind kind = parse_kind(game);
    if (init == "empty") {
      initial = StrategyProfile::empty(n, kind, p);
    } else {
      const std::uint64_t seed = std::stoull(init.substr(7));
      initial = random_profile(
          n, kind, p, CandidateWeights::build(p, n, grid), seed);
    }
  }

  Scheduler scheduler;
  if (scheduler_name == "round-robin") {
    scheduler.kind = SchedulerKind::kRoundRobin;
  } else if (scheduler_name.rfind("random:", 0) == 0) {
    scheduler.kind = SchedulerKind::kRandomPermutation;
    scheduler.seed = std::stoull(scheduler_name.substr(7));
  } else {
    throw InvalidConfig("--scheduler must be round-robin or random:SEED");
  }

  const CandidateWeights cands =
      CandidateWeights::build(initial->price(), initial->n(), grid);
  const DynamicsTrace trace =
      run_dynamics(*initial, cands, scheduler, family_of(family_name),
                   max_rounds, limits_of(opts));

  fs::create_directories(opts.out_dir);
  std::string lines;
  for (const DynamicsMove& move : trace.moves) {
    json j{{"round", move.round},
           {"node", move.node},
           {"old_cost", num(move.old_cost)},
           {"new_cost", num(move.new_cost)},
           {"strategy", strategy_json(move.strategy)}};
    lines += j.dump() + "\n";
  }
  json summary{{"converged", trace.converged},
               {"rounds", trace.rounds},
               {"moves", trace.moves.size()},
               {"family", to_string(trace.family)},
               {"scheduler", scheduler_name}};
  if (scheduler.kind == SchedulerKind::kRandomPermutation) {
    summary["seed"] = scheduler.seed;
  }
  lines += summary.dump() + "\n";
  write_file((fs::path(opts.out_dir) / "trace.jsonl").string(), lines);
  save_profile(trace.final(),
               (fs::path(opts.out_dir) / "final-profile.ncg").string());
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

ExperimentConfig sweep_config(const GlobalOpts& opts,
                              const std::string& config_path,
                              const std::string& game,
                              const std::string& price_template,
                              const std::vector<double>& alphas,
                              const std::vector<double>& epss,
                              const std::vector<int>& ns, int grid,
                              const std::string& family_name) {
  ExperimentConfig config;
  if (!config_path.empty()) {
    config = parse_config(read_file(config_path));
  } else {
    if (price_template.empty() || ns.empty()) {
      throw InvalidConfig("sweep needs --config or --price plus --n");
    }
    // The template fixes the form and interval; --alpha / --eps fill the
    // swept parameter lists (a fixed alpha= / eps= in the template also
    // works for single-value sweeps).
    const std::size_t colon = price_template.find(':');
    const std::string form = price_template.substr(0, colon);
    if (form == "table") {
      config.form = PriceForm::kTabulated;
      config.points = parse_price_spec(price_template).points;
    } else {
      std::string body = colon == std::string::npos
                             ? std::string()
                             : price_template.substr(colon + 1);
      if (form == "reciprocal") {
        config.form = PriceForm::kReciprocal;
      } else if (form == "linear") {
        config.form = PriceForm::kLinear;
      } else if (form == "constant") {
        config.form = PriceForm::kConstant;
      } else {
        throw InvalidConfig("unknown price form '" + form + "'");
      }
      std::istringstream bs(body);
      std::string item;
      while (std::getline(bs, item, ',')) {
        if (item.empty()) continue;
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
          throw InvalidConfig("bad template item '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const double value = parse_double(item.substr(eq + 1));
        if (key == "lo") {
          config.lo = value;
        } else if (key == "hi") {
          config.hi = value;
        } else if (key == "alpha") {
          config.alphas = {value};
        } else if (key == "eps") {
          config.epss = {value};
        } else {
          throw InvalidConfig("unknown template key '" + key + "'");
        }
      }
    }
    if (!alphas.empty()) config.alphas = alphas;
    if (!epss.empty()) config.epss = epss;
    config.kind = parse_kind(game);
    config.ns = ns;
    config.grid = grid;
    config.family = family_of(family_name);
  }
  if (config.out_dir.empty()) config.out_dir = opts.out_dir;
  config.workers = opts.workers;
  config.eps_ne = opts.tolerance;
  return config;
}

int cmd_sweep(const ExperimentConfig& config, const std::string& svg_path) {
  const ExperimentRecord record = run_experiment(config);

  write_file((fs::path(config.out_dir) / "record.json").string(),
             record_to_json(record));
  write_file((fs::path(config.out_dir) / "rows.csv").string(),
             record_to_csv(record));
  if (!svg_path.empty()) write_file(svg_path, record_to_svg(record));

  int unstable = 0, violations = 0, errors = 0;
  for (const InstanceRow& row : record.rows) {
    if (!row.error.empty()) {
      ++errors;
    } else if (!row.stable) {
      ++unstable;
    } else if (!row.bounds_ok) {
      ++violations;
    }
  }
  json summary{{"rows", record.rows.size()},
               {"unstable", unstable},
               {"bound_violations", violations},
               {"errors", errors},
               {"fingerprint", record.fingerprint},
               {"out", config.out_dir},
               {"wall_seconds", record.wall_seconds}};
  std::cout << summary.dump(2) << "\n";
  if (unstable > 0) return kExitUnstable;
  if (violations > 0) return kExitBoundViolation;
  if (errors > 0) return kExitInvalid;
  return kExitOk;
}

int cmd_opt(const GlobalOpts& opts, const std::string& game, int n,
            const std::string& price_spec, int grid, std::uint64_t cap) {
  const PriceFunction p{parse_price_spec(price_spec)};
  const GameKind kind = parse_kind(game);
  const CandidateWeights cands = CandidateWeights::build(p, n, grid);

  double best_cost = kInfiniteCost;
  std::optional<StrategyProfile> best;
  for (StrategyProfile& profile : enumerate_profiles(n, kind, p, cands, cap)) {
    const double cost = social_cost(realize(profile));
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(profile);
    }
  }

  const ConstructionOutcome closed =
      kind == GameKind::kSum ? opt_sum(n, p) : max_opt_star(n, p);
  fs::create_directories(opts.out_dir);
  const std::string profile_path =
      (fs::path(opts.out_dir) / "opt-enumerated.ncg").string();
  if (best) save_profile(*best, profile_path);

  json j{{"enumerated_opt_cost", num(best_cost)},
         {"closed_form_cost", num(closed.predicted_cost)},
         {"closed_form_case", closed.case_label},
         {"match", approx_eq(best_cost, closed.predicted_cost, kBoundEps)},
         {"candidates", cands.weights.size()},
         {"profile", profile_path}};
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& record_path, const std::string& format,
               const std::string& out_file) {
  const ExperimentRecord record = record_from_json(read_file(record_path));
  std::string artifact;
  if (format == "csv") {
    artifact = record_to_csv(record);
  } else if (format == "json") {
    artifact = record_to_json(record);
  } else if (format == "svg") {
    artifact = record_to_svg(record);
  } else {
    throw InvalidConfig("--format must be csv|json|svg");
  }
  if (out_file.empty() || out_file == "-") {
    std::cout << artifact;
  } else {
    write_file(out_file, artifact);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quality-of-service network creation games toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("qncg ") + kToolVersion);

  GlobalOpts opts;
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--tolerance", opts.tolerance,
                 "improvement threshold for stability checks");
  app.add_option("--workers", opts.workers,
                 "worker threads for sweeps (0 = all cores)");

  std::string game = "sum", price, which = "ne", profile_path;
  std::string family = "exhaustive", scheduler = "round-robin";
  std::string init = "empty", config_path, svg_path, record_path;
  std::string format = "csv", out_file;
  std::vector<double> alphas, epss;
  std::vector<int> ns;
  int n = 0, grid = 64, max_rounds = 100;
  std::uint64_t cap = 2'000'000;
  bool all_bounds = false;

  CLI::App* construct = app.add_subcommand(
      "construct", "build an optimum or equilibrium profile");
  construct->fallthrough();
  construct->add_option("--game", game, "sum|max");
  construct->add_option("--n", n, "node count")->required();
  construct->add_option("--price", price, "price spec")->required();
  construct->add_option("--which", which, "opt|ne|worst");

  CLI::App* verify =
      app.add_subcommand("verify", "certify stability of a profile file");
  verify->fallthrough();
  verify->add_option("--profile", profile_path, "profile file")->required();
  verify->add_option("--family", family,
                     "remove-only|single-add|single-reweight|star-collapse|"
                     "exhaustive|auto");
  verify->add_flag("--all-bounds", all_bounds,
                   "also run the equilibrium bound checks");
  verify->add_option("--grid", grid, "candidate grid resolution");

  CLI::App* dynamics =
      app.add_subcommand("br-dynamics", "run improving-response dynamics");
  dynamics->fallthrough();
  dynamics->add_option("--init", init, "profile file | empty | random:SEED");
  dynamics->add_option("--game", game, "sum|max (for empty/random init)");
  dynamics->add_option("--n", n, "node count (for empty/random init)");
  dynamics->add_option("--price", price, "price spec (for empty/random init)");
  dynamics->add_option("--family", family, "deviation family");
  dynamics->add_option("--scheduler", scheduler, "round-robin|random:SEED");
  dynamics->add_option("--max-rounds", max_rounds, "pass limit");
  dynamics->add_option("--grid", grid, "candidate grid resolution");

  CLI::App* sweep =
      app.add_subcommand("sweep", "run a (price, n) experiment grid");
  sweep->fallthrough();
  sweep->add_option("--config", config_path, "experiment config file");
  sweep->add_option("--game", game, "sum|max");
  sweep->add_option("--price", price, "price template, e.g. reciprocal:lo=1,hi=10");
  sweep->add_option("--alpha", alphas, "alpha list")->delimiter(',');
  sweep->add_option("--eps", epss, "eps list (linear)")->delimiter(',');
  sweep->add_option("--n", ns, "n list")->delimiter(',');
  sweep->add_option("--grid", grid, "candidate grid resolution");
  sweep->add_option("--family", family, "certification family");
  sweep->add_option("--svg", svg_path, "also write a ratio chart");

  CLI::App* opt = app.add_subcommand(
      "opt", "brute-force optimum over all profiles (n <= 4)");
  opt->fallthrough();
  opt->add_option("--game", game, "sum|max");
  opt->add_option("--n", n, "node count")->required();
  opt->add_option("--price", price, "price spec")->required();
  opt->add_option("--grid", grid, "candidate grid resolution")
      ->default_val(2);
  opt->add_option("--cap", cap, "enumeration cap");

  CLI::App* report = app.add_subcommand("report", "convert a record file");
  report->fallthrough();
  report->add_option("--record", record_path, "record.json path")->required();
  report->add_option("--format", format, "csv|json|svg");
  report->add_option("--out-file", out_file, "output path (- for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) return cmd_construct(opts, game, n, price, which);
    if (*verify) {
      return cmd_verify(opts, profile_path, family, all_bounds, grid);
    }
    if (*dynamics) {
      return cmd_dynamics(opts, init, game, n, price, family, scheduler,
                          max_rounds, grid);
    }
    if (*sweep) {
      return cmd_sweep(sweep_config(opts, config_path, game, price, alphas,
                                    epss, ns, grid, family),
                       svg_path);
    }
    if (*opt) return cmd_opt(opts, game, n, price, grid, cap);
    if (*report) return cmd_report(record_path, format, out_file);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
