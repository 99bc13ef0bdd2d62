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

#include "qncg/price_model.hpp"

#include <algorithm>
#include <cmath>

namespace qncg {

PriceSpec PriceSpec::reciprocal(double alpha, double lo, double hi) {
  PriceSpec s;
  s.form = PriceForm::kReciprocal;
  s.alpha = alpha;
  s.interval = {lo, hi};
  return s;
}

PriceSpec PriceSpec::linear(double alpha, double eps, double lo, double hi) {
  PriceSpec s;
  s.form = PriceForm::kLinear;
  s.alpha = alpha;
  s.eps = eps;
  s.interval = {lo, hi};
  return s;
}

PriceSpec PriceSpec::constant(double alpha, double lo, double hi) {
  PriceSpec s;
  s.form = PriceForm::kConstant;
  s.alpha = alpha;
  s.interval = {lo, hi};
  return s;
}

PriceSpec PriceSpec::tabulated(std::vector<PricePoint> points) {
  PriceSpec s;
  s.form = PriceForm::kTabulated;
  s.points = std::move(points);
  if (!s.points.empty()) {
    s.interval = {s.points.front().x, s.points.back().x};
  }
  return s;
}

const char* to_string(PriceIssue issue) {
  switch (issue) {
    case PriceIssue::kBadInterval: return "BadInterval";
    case PriceIssue::kNonPositivePrice: return "NonPositivePrice";
    case PriceIssue::kNotDecreasing: return "NotDecreasing";
    case PriceIssue::kBadTable: return "BadTable";
  }
  return "?";
}

const char* to_string(PriceForm form) {
  switch (form) {
    case PriceForm::kReciprocal: return "reciprocal";
    case PriceForm::kLinear: return "linear";
    case PriceForm::kConstant: return "constant";
    case PriceForm::kTabulated: return "table";
  }
  return "?";
}

namespace {

double interpolate(const std::vector<PricePoint>& pts, double x) {
  if (pts.size() == 1) return pts.front().price;
  auto it = std::lower_bound(
      pts.begin(), pts.end(), x,
      [](const PricePoint& p, double v) { return p.x < v; });
  if (it == pts.end()) return pts.back().price;
  if (it->x == x || it == pts.begin()) return it->price;
  const PricePoint& hi = *it;
  const PricePoint& lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.price + t * (hi.price - lo.price);
}

}  // namespace

std::optional<PriceIssue> validate(const PriceSpec& spec) {
  if (spec.form == PriceForm::kTabulated && spec.points.empty()) {
    return PriceIssue::kBadTable;
  }
  const auto& iv = spec.interval;
  if (!(iv.lo > 0.0) || !(iv.hi >= iv.lo) || !std::isfinite(iv.lo) ||
      !std::isfinite(iv.hi)) {
    return PriceIssue::kBadInterval;
  }
  switch (spec.form) {
    case PriceForm::kReciprocal:
      if (!(spec.alpha > 0.0)) return PriceIssue::kNonPositivePrice;
      return std::nullopt;
    case PriceForm::kLinear: {
      const double slope = 1.0 + spec.eps;
      if (slope < 0.0) return PriceIssue::kNotDecreasing;
      // Decreasing, so the endpoint values bound the whole interval.
      if (!(spec.alpha - slope * iv.hi > 0.0)) {
        return PriceIssue::kNonPositivePrice;
      }
      return std::nullopt;
    }
    case PriceForm::kConstant:
      if (!(spec.alpha > 0.0)) return PriceIssue::kNonPositivePrice;
      return std::nullopt;
    case PriceForm::kTabulated: {
      const auto& pts = spec.points;
      if (pts.empty()) return PriceIssue::kBadTable;
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i].x < pts[i + 1].x)) return PriceIssue::kBadTable;
      }
      if (pts.front().x != iv.lo || pts.back().x != iv.hi) {
        return PriceIssue::kBadTable;
      }
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i].price < pts[i + 1].price) return PriceIssue::kNotDecreasing;
      }
      // Breakpoints already decide both properties for a piecewise-linear
      // function; the grid pass re-checks them on >= 1024 interior points.
      const int grid = std::max<int>(1024, static_cast<int>(pts.size()));
      double prev = pts.front().price;
      for (int i = 0; i <= grid; ++i) {
        const double x = iv.lo + (iv.hi - iv.lo) * i / grid;
        const double p = interpolate(pts, x);
        if (!(p > 0.0)) return PriceIssue::kNonPositivePrice;
        if (p > prev + 1e-15 * std::abs(prev)) {
          return PriceIssue::kNotDecreasing;
        }
        prev = p;
      }
      return std::nullopt;
    }
  }
  return PriceIssue::kBadTable;
}

PriceFunction::PriceFunction(PriceSpec spec) : spec_(std::move(spec)) {
  if (auto issue = validate(spec_)) {
    throw ValidationError(*issue, std::string("invalid price function: ") +
                                      to_string(*issue));
  }
}

double PriceFunction::eval_clamped(double x) const {
  x = spec_.interval.clamp(x);
  switch (spec_.form) {
    case PriceForm::kReciprocal: return spec_.alpha / x;
    case PriceForm::kLinear: return spec_.alpha - (1.0 + spec_.eps) * x;
    case PriceForm::kConstant: return spec_.alpha;
    case PriceForm::kTabulated: return interpolate(spec_.points, x);
  }
  return 0.0;
}

double PriceFunction::operator()(double x) const {
  if (!spec_.interval.contains(x)) {
    throw OutOfDomain("weight " + std::to_string(x) + " outside [" +
                      std::to_string(spec_.interval.lo) + ", " +
                      std::to_string(spec_.interval.hi) + "]");
  }
  return eval_clamped(x);
}

TradeoffMinimizer PriceFunction::minimize_tradeoff(double c) const {
  if (!(c > 0.0)) throw Error("tradeoff coefficient must be positive");
  const auto& iv = spec_.interval;
  double x = iv.lo;
  switch (spec_.form) {
    case PriceForm::kReciprocal:
      x = iv.clamp(std::sqrt(spec_.alpha / c));
      break;
    case PriceForm::kLinear:
      // Objective slope is c - (1 + eps); ties go to the smaller weight.
      x = (c >= 1.0 + spec_.eps) ? iv.lo : iv.hi;
      break;
    case PriceForm::kConstant:
      x = iv.lo;
      break;
    case PriceForm::kTabulated: {
      // Piecewise linear objective: the minimum sits on a breakpoint.
      double best = eval_clamped(iv.lo) + c * iv.lo;
      x = iv.lo;
      for (const PricePoint& pt : spec_.points) {
        const double v = pt.price + c * pt.x;
        if (v < best) {
          best = v;
          x = pt.x;
        }
      }
      break;
    }
  }
  return {c, x, eval_clamped(x) + c * x};
}

TradeoffMinimizer PriceFunction::minimize_scaled_price(double a) const {
  if (!(a > 0.0)) throw Error("price coefficient must be positive");
  const auto& iv = spec_.interval;
  double x = iv.lo;
  switch (spec_.form) {
    case PriceForm::kReciprocal:
      x = iv.clamp(std::sqrt(a * spec_.alpha));
      break;
    case PriceForm::kLinear:
      // Objective slope is 1 - a*(1 + eps); ties go to the smaller weight.
      x = (1.0 >= a * (1.0 + spec_.eps)) ? iv.lo : iv.hi;
      break;
    case PriceForm::kConstant:
      x = iv.lo;
      break;
    case PriceForm::kTabulated: {
      double best = a * eval_clamped(iv.lo) + iv.lo;
      x = iv.lo;
      for (const PricePoint& pt : spec_.points) {
        const double v = a * pt.price + pt.x;
        if (v < best) {
          best = v;
          x = pt.x;
        }
      }
      break;
    }
  }
  return {a, x, a * eval_clamped(x) + x};
}

}  // namespace qncg
