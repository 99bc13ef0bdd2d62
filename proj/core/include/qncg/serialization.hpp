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

#ifndef QNCG_SERIALIZATION_HPP
#define QNCG_SERIALIZATION_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qncg/game_core.hpp"
#include "qncg/price_model.hpp"

namespace qncg {

// Shortest decimal representation that parses back to the same double.
// Infinities print as "inf"/"-inf".
std::string shortest_repr(double value);
double parse_double(std::string_view text);  // throws ParseError

// Price-spec grammar, used in CLI flags, config files and profile headers:
//   reciprocal:alpha=4,lo=1,hi=10
//   linear:alpha=3,eps=0.25,lo=1,hi=2.5
//   constant:alpha=1,lo=1,hi=1
//   table:file=points.csv         (CSV lines "x,p(x)" sorted by x)
//   table:points=1:1.75;2.5:0.125 (inline, self-contained form)
// Parsing a table:file= spec reads the file; throws ParseError/IoFailure.
PriceSpec parse_price_spec(std::string_view text);

// Canonical, self-contained spelling of a spec (tabulated specs are emitted
// in the inline points form). parse(canonical(s)) == s.
std::string canonical_price_spec(const PriceSpec& spec);

// Profile text format. Header line
//   ncg <n> <kind> <price-spec>
// followed by one line per bought edge:
//   <owner> <target> <weight>
// Weights round-trip exactly through shortest_repr. Edges are written owner
// ascending, target ascending.
std::string write_profile(const StrategyProfile& profile);
StrategyProfile parse_profile(std::string_view text);  // throws ParseError
StrategyProfile load_profile(const std::string& path);
void save_profile(const StrategyProfile& profile, const std::string& path);

// FNV-1a over a canonical serialization; stable across runs and platforms
// with identical IEEE doubles.
std::uint64_t fnv1a(std::string_view bytes);
std::uint64_t profile_hash(const StrategyProfile& profile);

std::string read_file(const std::string& path);               // throws IoFailure
void write_file(const std::string& path, std::string_view data);

}  // namespace qncg

#endif  // QNCG_SERIALIZATION_HPP
