// Copyright 2026 The nordheim-lab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace nordheim {

// Base of every domain error raised by the library. Argument-contract
// violations use std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The mixing coefficients of the blow-up family came out non-positive.
class InfeasibleKappa : public Error {
 public:
  InfeasibleKappa(const std::string& what, double kappa1, double kappa2,
                  double rho_bound)
      : Error(what), kappa1_(kappa1), kappa2_(kappa2), rho_bound_(rho_bound) {}

  double kappa1() const { return kappa1_; }
  double kappa2() const { return kappa2_; }
  // Largest peak width for which the analytic system still has positive
  // solutions (0 if none).
  double rho_bound() const { return rho_bound_; }

 private:
  double kappa1_;
  double kappa2_;
  double rho_bound_;
};

class PositivityViolation : public Error {
 public:
  PositivityViolation(const std::string& what, std::size_t node, double value)
      : Error(what), node_(node), value_(value) {}
  std::size_t node() const { return node_; }
  double value() const { return value_; }

 private:
  std::size_t node_;
  double value_;
};

class InsufficientWindow : public Error {
 public:
  using Error::Error;
};

class MeasureError : public Error {
 public:
  enum class Kind { kAtomAtZero, kZeroMeasure, kBadAtom };
  MeasureError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public Error {
 public:
  enum class Kind { kParse, kValidation };
  ConfigError(Kind kind, const std::string& what, int line = 0,
              std::string field = {})
      : Error(what), kind_(kind), line_(line), field_(std::move(field)) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  Kind kind_;
  int line_;
  std::string field_;
};

}  // namespace nordheim
