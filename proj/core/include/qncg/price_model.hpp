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

#ifndef QNCG_PRICE_MODEL_HPP
#define QNCG_PRICE_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "qncg/compare.hpp"
#include "qncg/errors.hpp"

namespace qncg {

// Interval of edge weights a node may buy, 0 < lo <= hi. A degenerate
// interval (lo == hi) reduces the game to the classical fixed-price model.
struct WeightInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x, double eps = kDomainEps) const {
    return x >= lo - eps && x <= hi + eps;
  }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  bool degenerate() const { return lo == hi; }
  bool operator==(const WeightInterval&) const = default;
};

enum class PriceForm {
  kReciprocal,  // p(x) = alpha / x
  kLinear,      // p(x) = alpha - (1 + eps) * x
  kConstant,    // p(x) = alpha
  kTabulated,   // piecewise linear through sorted breakpoints
};

struct PricePoint {
  double x = 0.0;
  double price = 0.0;
  bool operator==(const PricePoint&) const = default;
};

// Unvalidated description of a price function. PriceFunction construction
// validates it; `validate` reports the first problem without throwing.
struct PriceSpec {
  PriceForm form = PriceForm::kConstant;
  double alpha = 0.0;
  double eps = 0.0;
  WeightInterval interval;
  std::vector<PricePoint> points;  // kTabulated only

  static PriceSpec reciprocal(double alpha, double lo, double hi);
  static PriceSpec linear(double alpha, double eps, double lo, double hi);
  static PriceSpec constant(double alpha, double lo, double hi);
  static PriceSpec tabulated(std::vector<PricePoint> points);

  bool operator==(const PriceSpec&) const = default;
};

enum class PriceIssue {
  kBadInterval,
  kNonPositivePrice,
  kNotDecreasing,
  kBadTable,
};

const char* to_string(PriceIssue issue);

struct ValidationError : Error {
  ValidationError(PriceIssue issue_in, const std::string& what)
      : Error(what), issue(issue_in) {}
  PriceIssue issue;
};

// First validation problem of `spec`, or nullopt when the spec describes a
// positive, monotonically decreasing price function on a proper interval.
// Built-in forms are checked in closed form; tabulated ones on their
// breakpoints plus a grid of at least 1024 points.
std::optional<PriceIssue> validate(const PriceSpec& spec);

// Result of a one-dimensional tradeoff minimization. `argmin` lies in the
// weight interval and `value` equals the objective re-evaluated at `argmin`.
struct TradeoffMinimizer {
  double coefficient = 0.0;
  double argmin = 0.0;
  double value = 0.0;
};

// A validated price function. Immutable after construction, safe to share
// across threads.
class PriceFunction {
 public:
  // Throws ValidationError when the spec does not validate.
  explicit PriceFunction(PriceSpec spec);

  static PriceFunction reciprocal(double alpha, double lo, double hi) {
    return PriceFunction(PriceSpec::reciprocal(alpha, lo, hi));
  }
  static PriceFunction linear(double alpha, double eps, double lo, double hi) {
    return PriceFunction(PriceSpec::linear(alpha, eps, lo, hi));
  }
  static PriceFunction constant(double alpha, double lo, double hi) {
    return PriceFunction(PriceSpec::constant(alpha, lo, hi));
  }
  static PriceFunction tabulated(std::vector<PricePoint> points) {
    return PriceFunction(PriceSpec::tabulated(std::move(points)));
  }

  // Price of weight x. Throws OutOfDomain when x is outside the interval
  // beyond tolerance; values within tolerance are clamped first.
  double operator()(double x) const;

  const WeightInterval& interval() const { return spec_.interval; }
  const PriceSpec& spec() const { return spec_; }

  // Global minimizer of x -> p(x) + c*x over the interval, c > 0. Exact for
  // every form; ties break toward the smaller weight.
  TradeoffMinimizer minimize_tradeoff(double c) const;

  // Global minimizer of x -> a*p(x) + x over the interval, a > 0. Same
  // exactness and tie rule. Kept as a separate query so coefficients never
  // get divided through the price term.
  TradeoffMinimizer minimize_scaled_price(double a) const;

  bool operator==(const PriceFunction& other) const {
    return spec_ == other.spec_;
  }

 private:
  double eval_clamped(double x) const;

  PriceSpec spec_;
};

const char* to_string(PriceForm form);

}  // namespace qncg

#endif  // QNCG_PRICE_MODEL_HPP
