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

#ifndef QNCG_COMPARE_HPP
#define QNCG_COMPARE_HPP

#include <cmath>
#include <limits>

namespace qncg {

// Single tolerance policy shared by every module. All cost comparisons are
// absolute-tolerance comparisons through these helpers.

// Interval membership and other domain checks.
inline constexpr double kDomainEps = 1e-12;

// Minimum cost decrease that counts as an improving response, and the
// direction tolerance of every bound check.
inline constexpr double kImproveEps = 1e-9;
inline constexpr double kBoundEps = 1e-9;

// Replaying a reported deviation must reproduce the reported gain this tightly.
inline constexpr double kReplayEps = 1e-12;

inline constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

inline bool approx_le(double a, double b, double eps = kBoundEps) {
  if (a == b) return true;  // covers inf == inf
  return a <= b + eps;
}

inline bool approx_ge(double a, double b, double eps = kBoundEps) {
  return approx_le(b, a, eps);
}

inline bool approx_eq(double a, double b, double eps) {
  if (a == b) return true;
  return std::abs(a - b) <= eps;
}

// True when switching from cost `before` to cost `after` is a strict
// improvement by more than eps. Handles the unreachable (infinite) sentinel:
// any finite cost improves on an infinite one, and inf never improves on inf.
inline bool improves(double before, double after, double eps = kImproveEps) {
  if (std::isinf(after)) return false;
  if (std::isinf(before)) return true;
  return after < before - eps;
}

}  // namespace qncg

#endif  // QNCG_COMPARE_HPP
