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

#ifndef QNCG_ERRORS_HPP
#define QNCG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qncg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A weight outside the price function's interval (beyond tolerance).
struct OutOfDomain : Error {
  using Error::Error;
};

// A strategy profile violating one of its structural invariants.
struct InvalidProfile : Error {
  InvalidProfile(int node_in, const std::string& what)
      : Error(what), node(node_in) {}
  int node = -1;
};

// Exhaustive search requested above the node limit.
struct LimitExceeded : Error {
  using Error::Error;
};

// A bound that is only defined for equilibria was asked about a profile
// without a matching Stable certificate.
struct NotCertified : Error {
  using Error::Error;
};

// A bound that requires a connected graph was asked about a disconnected one.
struct Disconnected : Error {
  using Error::Error;
};

// Profile enumeration would exceed the caller's cap.
struct CapExceeded : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct IoFailure : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace qncg

#endif  // QNCG_ERRORS_HPP
