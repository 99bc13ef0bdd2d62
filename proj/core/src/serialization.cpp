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

#include "qncg/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace qncg {

std::string shortest_repr(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "inf") return kInfiniteCost;
  if (text == "-inf") return -kInfiniteCost;
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ParseError("bad number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::map<std::string, std::string, std::less<>> parse_kv(
    std::string_view body) {
  std::map<std::string, std::string, std::less<>> kv;
  for (std::string_view item : split(body, ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value, got '" + std::string(item) + "'");
    }
    kv.emplace(std::string(item.substr(0, eq)),
               std::string(item.substr(eq + 1)));
  }
  return kv;
}

double require(const std::map<std::string, std::string, std::less<>>& kv,
               std::string_view key) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw ParseError("price spec missing '" + std::string(key) + "'");
  }
  return parse_double(it->second);
}

std::vector<PricePoint> parse_points(std::string_view text) {
  std::vector<PricePoint> points;
  for (std::string_view item : split(text, ';')) {
    if (item.empty()) continue;
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("expected x:price, got '" + std::string(item) + "'");
    }
    points.push_back({parse_double(item.substr(0, colon)),
                      parse_double(item.substr(colon + 1))});
  }
  return points;
}

std::vector<PricePoint> load_points_csv(const std::string& path) {
  std::string content = read_file(path);
  std::vector<PricePoint> points;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("table file line without comma: '" + line + "'");
    }
    points.push_back({parse_double(std::string_view(line).substr(0, comma)),
                      parse_double(std::string_view(line).substr(comma + 1))});
  }
  return points;
}

}  // namespace

PriceSpec parse_price_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("price spec needs '<form>:<params>', got '" +
                     std::string(text) + "'");
  }
  const std::string_view form = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (form == "table") {
    if (body.substr(0, 7) == "points=") {
      return PriceSpec::tabulated(parse_points(body.substr(7)));
    }
    auto kv = parse_kv(body);
    auto it = kv.find("file");
    if (it == kv.end()) {
      throw ParseError("table spec needs file= or points=");
    }
    return PriceSpec::tabulated(load_points_csv(it->second));
  }
  auto kv = parse_kv(body);
  if (form == "reciprocal") {
    return PriceSpec::reciprocal(require(kv, "alpha"), require(kv, "lo"),
                                 require(kv, "hi"));
  }
  if (form == "linear") {
    return PriceSpec::linear(require(kv, "alpha"), require(kv, "eps"),
                             require(kv, "lo"), require(kv, "hi"));
  }
  if (form == "constant") {
    return PriceSpec::constant(require(kv, "alpha"), require(kv, "lo"),
                               require(kv, "hi"));
  }
  throw ParseError("unknown price form '" + std::string(form) + "'");
}

std::string canonical_price_spec(const PriceSpec& spec) {
  std::string out;
  switch (spec.form) {
    case PriceForm::kReciprocal:
      out = "reciprocal:alpha=" + shortest_repr(spec.alpha);
      break;
    case PriceForm::kLinear:
      out = "linear:alpha=" + shortest_repr(spec.alpha) +
            ",eps=" + shortest_repr(spec.eps);
      break;
    case PriceForm::kConstant:
      out = "constant:alpha=" + shortest_repr(spec.alpha);
      break;
    case PriceForm::kTabulated: {
      out = "table:points=";
      for (std::size_t i = 0; i < spec.points.size(); ++i) {
        if (i) out += ';';
        out += shortest_repr(spec.points[i].x) + ":" +
               shortest_repr(spec.points[i].price);
      }
      return out;
    }
  }
  out += ",lo=" + shortest_repr(spec.interval.lo) +
         ",hi=" + shortest_repr(spec.interval.hi);
  return out;
}

std::string write_profile(const StrategyProfile& profile) {
  std::string out = "ncg " + std::to_string(profile.n()) + " " +
                    to_string(profile.kind()) + " " +
                    canonical_price_spec(profile.price().spec()) + "\n";
  for (const Strategy& s : profile.strategies()) {
    for (const OwnedEdge& e : s.edges) {
      out += std::to_string(s.owner) + " " + std::to_string(e.target) + " " +
             shortest_repr(e.weight) + "\n";
    }
  }
  return out;
}

StrategyProfile parse_profile(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty profile");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  std::istringstream hs(header);
  std::string magic, kind_str, price_str;
  int n = 0;
  if (!(hs >> magic >> n >> kind_str >> price_str) || magic != "ncg") {
    throw ParseError("bad profile header: '" + header + "'");
  }
  GameKind kind;
  if (kind_str == "sum") {
    kind = GameKind::kSum;
  } else if (kind_str == "max") {
    kind = GameKind::kMax;
  } else {
    throw ParseError("unknown game kind '" + kind_str + "'");
  }
  PriceFunction price{parse_price_spec(price_str)};

  std::vector<Strategy> strategies(static_cast<std::size_t>(std::max(n, 0)));
  for (int v = 0; v < n; ++v) strategies[v].owner = v;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int owner = -1, target = -1;
    std::string weight_str;
    if (!(ls >> owner >> target >> weight_str)) {
      throw ParseError("bad edge line: '" + line + "'");
    }
    if (owner < 0 || owner >= n) {
      throw ParseError("edge owner out of range: '" + line + "'");
    }
    strategies[owner].edges.push_back({target, parse_double(weight_str)});
  }
  return StrategyProfile(n, kind, std::move(price), std::move(strategies));
}

StrategyProfile load_profile(const std::string& path) {
  return parse_profile(read_file(path));
}

void save_profile(const StrategyProfile& profile, const std::string& path) {
  write_file(path, write_profile(profile));
}

std::uint64_t profile_hash(const StrategyProfile& profile) {
  return fnv1a(write_profile(profile));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoFailure("error reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoFailure("error writing '" + path + "'");
}

}  // namespace qncg
