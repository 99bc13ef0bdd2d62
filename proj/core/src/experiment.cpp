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

#include "qncg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qncg/serialization.hpp"

namespace qncg {

using nlohmann::json;

bool operator==(const BoundCheck& a, const BoundCheck& b) {
  return a.name == b.name && a.lhs == b.lhs && a.rhs == b.rhs &&
         a.satisfied == b.satisfied && a.slack == b.slack;
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
  return kind == other.kind && form == other.form && alphas == other.alphas &&
         epss == other.epss && lo == other.lo && hi == other.hi &&
         points == other.points && ns == other.ns && grid == other.grid &&
         family == other.family && scheduler == other.scheduler &&
         seed == other.seed && eps_ne == other.eps_ne;
}

std::vector<PriceSpec> price_variants(const ExperimentConfig& config) {
  std::vector<PriceSpec> variants;
  switch (config.form) {
    case PriceForm::kReciprocal:
      for (double a : config.alphas) {
        variants.push_back(PriceSpec::reciprocal(a, config.lo, config.hi));
      }
      break;
    case PriceForm::kConstant:
      for (double a : config.alphas) {
        variants.push_back(PriceSpec::constant(a, config.lo, config.hi));
      }
      break;
    case PriceForm::kLinear:
      for (double a : config.alphas) {
        for (double e : config.epss) {
          variants.push_back(PriceSpec::linear(a, e, config.lo, config.hi));
        }
      }
      break;
    case PriceForm::kTabulated:
      variants.push_back(PriceSpec::tabulated(config.points));
      break;
  }
  return variants;
}

void validate_config(const ExperimentConfig& config) {
  if (config.ns.empty()) throw InvalidConfig("empty n list");
  for (int n : config.ns) {
    if (n < 2) throw InvalidConfig("n must be at least 2");
  }
  if (config.grid < 2) throw InvalidConfig("grid must be at least 2");
  if (!(config.eps_ne > 0.0)) throw InvalidConfig("tolerance must be positive");
  if (config.scheduler == SchedulerKind::kRandomPermutation && !config.seed) {
    throw InvalidConfig("randomized scheduler needs a seed");
  }
  const auto variants = price_variants(config);
  if (variants.empty()) throw InvalidConfig("no price variants");
  for (const PriceSpec& spec : variants) {
    if (auto issue = validate(spec)) {
      throw InvalidConfig("price spec " + canonical_price_spec(spec) +
                          " invalid: " + to_string(*issue));
    }
  }
}

namespace {

template <typename T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, double>) {
      out += shortest_repr(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string points_text(const std::vector<PricePoint>& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ';';
    out += shortest_repr(points[i].x) + ":" + shortest_repr(points[i].price);
  }
  return out;
}

std::string serialize_config_core(const ExperimentConfig& c) {
  std::string out;
  out += "alpha = " + join_list(c.alphas) + "\n";
  out += "eps = " + join_list(c.epss) + "\n";
  out += "family = " + std::string(to_string(c.family)) + "\n";
  out += "game = " + std::string(to_string(c.kind)) + "\n";
  out += "grid = " + std::to_string(c.grid) + "\n";
  out += "hi = " + shortest_repr(c.hi) + "\n";
  out += "lo = " + shortest_repr(c.lo) + "\n";
  out += "n = " + join_list(c.ns) + "\n";
  out += "points = " + points_text(c.points) + "\n";
  out += "price = " + std::string(to_string(c.form)) + "\n";
  out += "scheduler = " + std::string(c.scheduler == SchedulerKind::kRoundRobin
                                          ? "round-robin"
                                          : "random") + "\n";
  out += "seed = " + (c.seed ? std::to_string(*c.seed) : std::string()) + "\n";
  out += "tolerance = " + shortest_repr(c.eps_ne) + "\n";
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& config) {
  std::string out = serialize_config_core(config);
  out += "out = " + config.out_dir + "\n";
  out += "workers = " + std::to_string(config.workers) + "\n";
  return out;
}

std::uint64_t config_fingerprint(const ExperimentConfig& config) {
  return fnv1a(serialize_config_core(config));
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  c.alphas.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    while (!view.empty() && (view.front() == ' ' || view.front() == '\t')) {
      view.remove_prefix(1);
    }
    if (view.empty() || view.front() == '#') continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidConfig("config line " + std::to_string(lineno) +
                          " is not key = value");
    }
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
      }
      return s;
    };
    const std::string key{trim(view.substr(0, eq))};
    const std::string value{trim(view.substr(eq + 1))};
    auto parse_list = [&](auto push) {
      std::istringstream ls(value);
      std::string item;
      while (std::getline(ls, item, ',')) {
        if (!item.empty()) push(item);
      }
    };
    if (key == "game") {
      if (value == "sum") {
        c.kind = GameKind::kSum;
      } else if (value == "max") {
        c.kind = GameKind::kMax;
      } else {
        throw InvalidConfig("unknown game '" + value + "'");
      }
    } else if (key == "price") {
      if (value == "reciprocal") {
        c.form = PriceForm::kReciprocal;
      } else if (value == "linear") {
        c.form = PriceForm::kLinear;
      } else if (value == "constant") {
        c.form = PriceForm::kConstant;
      } else if (value == "table") {
        c.form = PriceForm::kTabulated;
      } else {
        throw InvalidConfig("unknown price form '" + value + "'");
      }
    } else if (key == "alpha") {
      parse_list([&](const std::string& s) {
        c.alphas.push_back(parse_double(s));
      });
    } else if (key == "eps") {
      parse_list([&](const std::string& s) {
        c.epss.push_back(parse_double(s));
      });
    } else if (key == "lo") {
      c.lo = parse_double(value);
    } else if (key == "hi") {
      c.hi = parse_double(value);
    } else if (key == "points") {
      c.points.clear();
      std::istringstream ps(value);
      std::string item;
      while (std::getline(ps, item, ';')) {
        if (item.empty()) continue;
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) {
          throw InvalidConfig("bad point '" + item + "'");
        }
        c.points.push_back(
            {parse_double(std::string_view(item).substr(0, colon)),
             parse_double(std::string_view(item).substr(colon + 1))});
      }
    } else if (key == "n") {
      parse_list([&](const std::string& s) {
        c.ns.push_back(static_cast<int>(parse_double(s)));
      });
    } else if (key == "grid") {
      c.grid = static_cast<int>(parse_double(value));
    } else if (key == "family") {
      auto family = parse_family(value);
      if (!family) throw InvalidConfig("unknown family '" + value + "'");
      c.family = *family;
    } else if (key == "scheduler") {
      if (value == "round-robin") {
        c.scheduler = SchedulerKind::kRoundRobin;
      } else if (value == "random") {
        c.scheduler = SchedulerKind::kRandomPermutation;
      } else {
        throw InvalidConfig("unknown scheduler '" + value + "'");
      }
    } else if (key == "seed") {
      if (!value.empty()) c.seed = std::stoull(value);
    } else if (key == "tolerance") {
      c.eps_ne = parse_double(value);
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "workers") {
      c.workers = static_cast<int>(parse_double(value));
    } else {
      throw InvalidConfig("unknown config key '" + key + "'");
    }
  }
  return c;
}

namespace {

json double_to_json(double v) {
  if (std::isfinite(v)) return v;
  return shortest_repr(v);
}

double double_from_json(const json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>());
  if (j.is_null()) return kInfiniteCost;
  return j.get<double>();
}

json row_to_json(const InstanceRow& row) {
  json checks = json::array();
  for (const BoundCheck& c : row.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", double_to_json(c.lhs)},
                      {"rhs", double_to_json(c.rhs)},
                      {"satisfied", c.satisfied},
                      {"slack", double_to_json(c.slack)}});
  }
  json j{{"price", row.price_spec},
         {"alpha", double_to_json(row.alpha)},
         {"eps", double_to_json(row.eps)},
         {"n", row.n},
         {"case", row.case_label},
         {"family", row.family_label},
         {"stable", row.stable},
         {"ne_cost", double_to_json(row.ne_cost)},
         {"opt_cost", double_to_json(row.opt_cost)},
         {"ratio", double_to_json(row.ratio)},
         {"pos_ratio", double_to_json(row.pos_ratio)},
         {"pos_ceiling", double_to_json(row.pos_ceiling)},
         {"anarchy_bound", double_to_json(row.anarchy_bound)},
         {"checks", std::move(checks)},
         {"bounds_ok", row.bounds_ok},
         {"error", row.error}};
  if (row.worst_clique_ratio) {
    j["worst_clique_ratio"] = double_to_json(*row.worst_clique_ratio);
  }
  return j;
}

InstanceRow row_from_json(const json& j) {
  InstanceRow row;
  row.price_spec = j.at("price").get<std::string>();
  row.alpha = double_from_json(j.at("alpha"));
  row.eps = double_from_json(j.at("eps"));
  row.n = j.at("n").get<int>();
  row.case_label = j.at("case").get<std::string>();
  row.family_label = j.at("family").get<std::string>();
  row.stable = j.at("stable").get<bool>();
  row.ne_cost = double_from_json(j.at("ne_cost"));
  row.opt_cost = double_from_json(j.at("opt_cost"));
  row.ratio = double_from_json(j.at("ratio"));
  row.pos_ratio = double_from_json(j.at("pos_ratio"));
  row.pos_ceiling = double_from_json(j.at("pos_ceiling"));
  row.anarchy_bound = double_from_json(j.at("anarchy_bound"));
  for (const json& c : j.at("checks")) {
    BoundCheck check;
    check.name = c.at("name").get<std::string>();
    check.lhs = double_from_json(c.at("lhs"));
    check.rhs = double_from_json(c.at("rhs"));
    check.satisfied = c.at("satisfied").get<bool>();
    check.slack = double_from_json(c.at("slack"));
    row.checks.push_back(std::move(check));
  }
  row.bounds_ok = j.at("bounds_ok").get<bool>();
  row.error = j.at("error").get<std::string>();
  if (j.contains("worst_clique_ratio")) {
    row.worst_clique_ratio = double_from_json(j.at("worst_clique_ratio"));
  }
  return row;
}

InstanceRow run_instance(const ExperimentConfig& config, const PriceSpec& spec,
                         int n) {
  InstanceRow row;
  row.price_spec = canonical_price_spec(spec);
  row.alpha = spec.form == PriceForm::kTabulated ? 0.0 : spec.alpha;
  row.eps = spec.eps;
  row.n = n;
  try {
    const PriceFunction p(spec);
    const CandidateWeights cands = CandidateWeights::build(p, n, config.grid);
    SearchLimits limits;
    limits.improve_eps = config.eps_ne;

    const ConstructionOutcome ne = config.kind == GameKind::kSum
                                       ? sum_ne(n, p)
                                       : max_ne(n, p);
    std::vector<StabilityReport> reports;
    if (config.family == DeviationFamily::kExhaustiveSubset) {
      reports = certify_auto(ne.profile, cands, limits);
    } else {
      reports.push_back(certify_ne(ne.profile, config.family, cands, limits));
    }
    row.stable = all_stable(reports);
    row.case_label = ne.case_label;
    if (reports.size() == 1) {
      row.family_label = to_string(reports.front().family);
    } else {
      row.family_label = "restricted";
    }

    const RealizedGame game = realize(ne.profile);
    row.ne_cost = social_cost(game);

    const RatioReport pos = pos_report(config.kind, n, p);
    row.pos_ratio = pos.ratio;
    row.pos_ceiling = pos.bounds.at("ceiling");

    std::vector<CertifiedProfile> equilibria;
    if (row.stable) equilibria.push_back({ne.profile, reports.front()});

    if (config.kind == GameKind::kSum) {
      const WorstCliqueResult worst = sum_worst_clique(n, p);
      if (worst.ok()) {
        row.worst_clique_ratio = worst.outcome->proof_ratio;
        std::vector<StabilityReport> worst_reports;
        if (config.family == DeviationFamily::kExhaustiveSubset) {
          worst_reports = certify_auto(worst.outcome->profile, cands, limits);
        } else {
          worst_reports.push_back(
              certify_ne(worst.outcome->profile, config.family, cands, limits));
        }
        if (all_stable(worst_reports)) {
          equilibria.push_back(
              {worst.outcome->profile, worst_reports.front()});
        }
      }
      row.opt_cost = opt_sum(n, p).predicted_cost;
    } else {
      row.opt_cost = max_lower_bound(n, p);
    }

    if (!equilibria.empty()) {
      const RatioReport poa = poa_report(config.kind, n, p, equilibria);
      row.ratio = poa.ratio;
      if (config.kind == GameKind::kSum) {
        row.anarchy_bound = std::min(poa.bounds.at("n"),
                                     poa.bounds.at("tradeoff-over-min-weight"));
      } else {
        row.anarchy_bound = poa.bounds.at("explicit-cost-over-lower");
      }
    }

    if (row.stable) {
      const StabilityReport& witness = reports.front();
      if (config.kind == GameKind::kSum) {
        row.checks.push_back(sum_lower_bound(game));
        row.checks.push_back(sum_cost_upper_check(game, witness));
        for (BoundCheck& c : sum_diameter_check(game, witness)) {
          row.checks.push_back(std::move(c));
        }
      } else {
        row.checks.push_back(max_lower_bound_check(game));
        row.checks.push_back(max_cost_upper_check(game, witness));
        row.checks.push_back(max_diameter_check(
            game, witness, p.minimize_tradeoff(2.0).argmin));
      }
      row.bounds_ok =
          std::all_of(row.checks.begin(), row.checks.end(),
                      [](const BoundCheck& c) { return c.satisfied; });
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

const BoundCheck* find_check(const InstanceRow& row, std::string_view name) {
  for (const BoundCheck& c : row.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

ExperimentRecord run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();

  ExperimentRecord record;
  record.config = config;
  record.fingerprint = config_fingerprint(config);

  const std::vector<PriceSpec> variants = price_variants(config);
  std::vector<std::pair<PriceSpec, int>> instances;
  for (const PriceSpec& spec : variants) {
    for (int n : config.ns) instances.emplace_back(spec, n);
  }

  // Instance-level resume: rows already present in rows.jsonl are kept,
  // provided the file's header carries this config's fingerprint. A file
  // from some other experiment is ignored and rewritten.
  std::map<std::pair<std::string, int>, InstanceRow> existing;
  std::filesystem::path rows_path;
  bool file_matches = false;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    rows_path = std::filesystem::path(config.out_dir) / "rows.jsonl";
    if (std::filesystem::exists(rows_path)) {
      std::istringstream in(read_file(rows_path.string()));
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) break;  // partial trailing write
        if (first) {
          first = false;
          file_matches = j.contains("config") &&
                         j.at("config").get<std::uint64_t>() ==
                             record.fingerprint;
          if (!file_matches) break;
          continue;
        }
        InstanceRow row = row_from_json(j);
        existing.emplace(std::make_pair(row.price_spec, row.n), row);
      }
    }
  }

  std::vector<std::optional<InstanceRow>> results(instances.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto key = std::make_pair(
        canonical_price_spec(instances[i].first), instances[i].second);
    auto it = existing.find(key);
    if (it != existing.end()) results[i] = it->second;
  }

  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      {
        std::unique_lock lock(mu);
        if (results[i]) continue;  // resumed
      }
      InstanceRow row =
          run_instance(config, instances[i].first, instances[i].second);
      {
        std::unique_lock lock(mu);
        results[i] = std::move(row);
      }
      cv.notify_all();
    }
  };

  int workers = config.workers > 0
                    ? config.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers,
                                      static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(work);

  // Single writer appends newly computed rows in canonical order.
  std::ofstream out;
  if (!rows_path.empty()) {
    out.open(rows_path,
             file_matches ? std::ios::app : std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + rows_path.string());
    if (!file_matches) {
      out << json{{"config", record.fingerprint}}.dump() << "\n";
      out.flush();
    }
  }
  for (std::size_t i = 0; i < instances.size(); ++i) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return results[i].has_value(); });
    const auto key = std::make_pair(
        canonical_price_spec(instances[i].first), instances[i].second);
    if (out.is_open() && !existing.count(key)) {
      out << row_to_json(*results[i]).dump() << "\n";
      out.flush();
    }
    record.rows.push_back(*results[i]);
  }
  for (std::thread& t : pool) t.join();

  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return record;
}

std::uint64_t ExperimentRecord::rows_hash() const {
  std::string blob;
  for (const InstanceRow& row : rows) blob += row_to_json(row).dump() + "\n";
  return fnv1a(blob);
}

std::string record_to_csv(const ExperimentRecord& record) {
  const bool is_sum = record.config.kind == GameKind::kSum;
  std::string out =
      "game,price,alpha,eps,n,case,family,stable,ne_cost,opt_cost,ratio,"
      "pos_ratio,pos_ceiling,anarchy_bound,worst_clique_ratio";
  const std::vector<std::string> check_names =
      is_sum ? std::vector<std::string>{"sum-social-lower", "sum-ne-cost-upper",
                                        "sum-ne-max-weight", "sum-ne-diameter"}
             : std::vector<std::string>{"max-social-lower", "max-ne-cost-upper",
                                        "max-ne-diameter"};
  for (const std::string& name : check_names) {
    out += ",slack_" + name;
  }
  out += ",bounds_ok,error\n";
  for (const InstanceRow& row : record.rows) {
    out += std::string(to_string(record.config.kind)) + ",";
    out += csv_field(row.price_spec) + ",";
    out += shortest_repr(row.alpha) + "," + shortest_repr(row.eps) + ",";
    out += std::to_string(row.n) + "," + csv_field(row.case_label) + ",";
    out += row.family_label + "," + (row.stable ? "1" : "0") + ",";
    out += shortest_repr(row.ne_cost) + "," + shortest_repr(row.opt_cost) +
           "," + shortest_repr(row.ratio) + ",";
    out += shortest_repr(row.pos_ratio) + "," +
           shortest_repr(row.pos_ceiling) + "," +
           shortest_repr(row.anarchy_bound) + ",";
    out += row.worst_clique_ratio ? shortest_repr(*row.worst_clique_ratio)
                                  : std::string();
    for (const std::string& name : check_names) {
      const BoundCheck* check = find_check(row, name);
      out += ",";
      if (check) out += shortest_repr(check->slack);
    }
    out += std::string(",") + (row.bounds_ok ? "1" : "0") + "," +
           csv_field(row.error) + "\n";
  }
  return out;
}

std::string record_to_json(const ExperimentRecord& record) {
  json rows = json::array();
  for (const InstanceRow& row : record.rows) rows.push_back(row_to_json(row));
  json j{{"version", record.version},
         {"fingerprint", record.fingerprint},
         {"config", serialize_config(record.config)},
         {"rows", std::move(rows)},
         {"wall_seconds", record.wall_seconds}};
  return j.dump(2) + "\n";
}

ExperimentRecord record_from_json(std::string_view text) {
  json j = json::parse(text);
  ExperimentRecord record;
  record.version = j.at("version").get<std::string>();
  record.fingerprint = j.at("fingerprint").get<std::uint64_t>();
  record.config = parse_config(j.at("config").get<std::string>());
  for (const json& row : j.at("rows")) {
    record.rows.push_back(row_from_json(row));
  }
  record.wall_seconds = j.at("wall_seconds").get<double>();
  return record;
}

bool operator==(const ExperimentRecord& a, const ExperimentRecord& b) {
  return a.version == b.version && a.fingerprint == b.fingerprint &&
         a.config == b.config && a.rows == b.rows &&
         a.wall_seconds == b.wall_seconds;
}

namespace {

std::string svg_color(std::size_t series) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return palette[series % 8];
}

}  // namespace

std::string record_to_svg(const ExperimentRecord& record) {
  // Ratio against the swept parameter (alpha when several are swept,
  // otherwise n), one polyline per n (or per alpha), the closed-form bound
  // overlaid dashed.
  std::vector<const InstanceRow*> rows;
  for (const InstanceRow& row : record.rows) {
    if (row.error.empty() && row.ratio > 0.0) rows.push_back(&row);
  }
  const int width = 640, height = 440, margin = 56;
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
      std::to_string(width) + "\" height=\"" + std::to_string(height) + "\">\n";
  if (rows.empty()) {
    return svg + "<text x=\"20\" y=\"40\">no data</text>\n</svg>\n";
  }

  std::vector<double> alphas;
  for (const InstanceRow* row : rows) alphas.push_back(row->alpha);
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  const bool sweep_alpha = alphas.size() > 1;

  auto x_of = [&](const InstanceRow& r) {
    return sweep_alpha ? r.alpha : static_cast<double>(r.n);
  };
  auto series_of = [&](const InstanceRow& r) {
    return sweep_alpha ? static_cast<double>(r.n) : r.alpha;
  };

  double x_min = kInfiniteCost, x_max = -kInfiniteCost;
  double y_min = 0.0, y_max = -kInfiniteCost;
  for (const InstanceRow* row : rows) {
    x_min = std::min(x_min, x_of(*row));
    x_max = std::max(x_max, x_of(*row));
    y_max = std::max({y_max, row->ratio, row->anarchy_bound});
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  y_max *= 1.05;

  auto px = [&](double x) {
    return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height - margin -
           (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };

  // Axes and extreme tick labels.
  svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" fill=\"white\"/>\n";
  svg += "<line x1=\"" + std::to_string(px(x_min)) + "\" y1=\"" +
         std::to_string(py(y_min)) + "\" x2=\"" + std::to_string(px(x_max)) +
         "\" y2=\"" + std::to_string(py(y_min)) +
         "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + std::to_string(px(x_min)) + "\" y1=\"" +
         std::to_string(py(y_min)) + "\" x2=\"" + std::to_string(px(x_min)) +
         "\" y2=\"" + std::to_string(py(y_max)) +
         "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + std::to_string(px(x_min)) + "\" y=\"" +
         std::to_string(height - margin + 18) + "\" font-size=\"11\">" +
         shortest_repr(x_min) + "</text>\n";
  svg += "<text x=\"" + std::to_string(px(x_max) - 12) + "\" y=\"" +
         std::to_string(height - margin + 18) + "\" font-size=\"11\">" +
         shortest_repr(x_max) + "</text>\n";
  svg += "<text x=\"6\" y=\"" + std::to_string(py(y_max) + 4) +
         "\" font-size=\"11\">" + shortest_repr(y_max) + "</text>\n";
  svg += "<text x=\"" + std::to_string(width / 2 - 20) + "\" y=\"" +
         std::to_string(height - 12) + "\" font-size=\"12\">" +
         (sweep_alpha ? "alpha" : "n") + "</text>\n";
  svg += "<text x=\"6\" y=\"16\" font-size=\"12\">cost ratio</text>\n";

  std::vector<double> series_keys;
  for (const InstanceRow* row : rows) series_keys.push_back(series_of(*row));
  std::sort(series_keys.begin(), series_keys.end());
  series_keys.erase(std::unique(series_keys.begin(), series_keys.end()),
                    series_keys.end());

  for (std::size_t s = 0; s < series_keys.size(); ++s) {
    std::vector<const InstanceRow*> pts;
    for (const InstanceRow* row : rows) {
      if (series_of(*row) == series_keys[s]) pts.push_back(row);
    }
    std::sort(pts.begin(), pts.end(),
              [&](const InstanceRow* a, const InstanceRow* b) {
                return x_of(*a) < x_of(*b);
              });
    std::string line, bound;
    for (const InstanceRow* row : pts) {
      line += std::to_string(px(x_of(*row))) + "," +
              std::to_string(py(row->ratio)) + " ";
      bound += std::to_string(px(x_of(*row))) + "," +
               std::to_string(py(std::min(row->anarchy_bound, y_max))) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + svg_color(s) +
           "\" stroke-width=\"1.5\" points=\"" + line + "\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"" + svg_color(s) +
           "\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"" + bound +
           "\"/>\n";
    svg += "<text x=\"" + std::to_string(width - margin + 4) + "\" y=\"" +
           std::to_string(margin + 14 * static_cast<int>(s)) +
           "\" font-size=\"11\" fill=\"" + svg_color(s) + "\">" +
           (sweep_alpha ? "n=" : "a=") + shortest_repr(series_keys[s]) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace qncg
