// Copyright 2026 The subgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "subgauss/errors.hpp"

namespace subgauss {

/// An immutable batch of finite observations. All estimators consume
/// samples in index order, so results are bit-deterministic.
class SampleSet {
 public:
  explicit SampleSet(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw Error("SampleSet: need at least one observation");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw Error("SampleSet: observations must be finite");
      }
    }
  }

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Failure probability delta in (0,1) together with the derived discard
/// budget (1/3)log(1/delta). The budget is always recomputed from delta.
class Confidence {
 public:
  explicit Confidence(double delta) : delta_(delta) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
      throw Error("Confidence: delta must lie strictly in (0,1)");
    }
  }

  double delta() const { return delta_; }
  double log_inv_delta() const { return -std::log(delta_); }
  double budget() const { return log_inv_delta() / 3.0; }

 private:
  double delta_;
};

}  // namespace subgauss
