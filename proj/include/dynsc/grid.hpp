// Copyright 2026 The Authors.
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

#ifndef DYNSC_GRID_HPP_
#define DYNSC_GRID_HPP_

#include <cmath>
#include <vector>

#include "dynsc/common.hpp"

namespace dynsc {

// The geometric grid (1+eps)^k shared by thresholds, buckets and run
// indices. Powers are produced once by repeated multiplication and cached;
// every comparison against the grid uses those exact doubles, never a
// fresh log/pow evaluation. That makes decisions like "value lies in
// bucket j" reproducible and mutually consistent: a bucket member always
// clears the bucket's own threshold.
//
// Not safe for concurrent use; each run pool owns its grid.
class GeometricGrid {
 public:
  explicit GeometricGrid(double eps) : base_(1.0 + eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw InvalidArgumentError("grid eps must be positive and finite");
    }
    pos_.push_back(1.0);
    neg_.push_back(1.0);
  }

  double base() const { return base_; }

  // (1+eps)^k.
  double power(int k) const {
    if (k >= 0) {
      grow_pos(static_cast<std::size_t>(k));
      return pos_[static_cast<std::size_t>(k)];
    }
    grow_neg(static_cast<std::size_t>(-k));
    return neg_[static_cast<std::size_t>(-k)];
  }

  // Largest k with power(k) <= x. Requires x > 0.
  int floor_log(double x) const {
    check_positive(x);
    int k = estimate(x);
    while (power(k + 1) <= x) ++k;
    while (power(k) > x) --k;
    return k;
  }

  // Smallest k with power(k) >= x. Requires x > 0.
  int ceil_log(double x) const {
    check_positive(x);
    int k = estimate(x);
    while (power(k) < x) ++k;
    while (power(k - 1) >= x) --k;
    return k;
  }

  // Largest j >= 0 with base * power(j) <= value; the bucket row of a
  // marginal density relative to threshold `base`. The returned j and the
  // exact product base * power(j) are what callers must reuse as the
  // bucket's own threshold, so membership implies clearing it.
  int bucket_index(double value, double base) const {
    if (!(value >= base)) {
      throw InternalInvariantError("bucket value below grid base");
    }
    int j = 0;
    // Exponential probe, then binary search on the exact products.
    while (base * power(2 * j + 1) <= value) j = 2 * j + 1;
    int lo = j, hi = 2 * j + 2;
    while (lo < hi) {
      int mid = lo + (hi - lo + 1) / 2;
      if (base * power(mid) <= value) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    return lo;
  }

 private:
  static constexpr int kMaxExponent = 6000;

  static void check_positive(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InvalidArgumentError("grid log argument must be positive");
    }
  }

  int estimate(double x) const {
    double r = std::log(x) / std::log(base_);
    if (r > kMaxExponent || r < -kMaxExponent) {
      throw InternalInvariantError("grid exponent out of range");
    }
    return static_cast<int>(std::lround(r));
  }

  void grow_pos(std::size_t k) const {
    if (k > kMaxExponent) {
      throw InternalInvariantError("grid exponent out of range");
    }
    while (pos_.size() <= k) pos_.push_back(pos_.back() * base_);
  }

  void grow_neg(std::size_t k) const {
    if (k > kMaxExponent) {
      throw InternalInvariantError("grid exponent out of range");
    }
    while (neg_.size() <= k) neg_.push_back(neg_.back() / base_);
  }

  double base_;
  mutable std::vector<double> pos_;  // pos_[k] = (1+eps)^k
  mutable std::vector<double> neg_;  // neg_[k] = (1+eps)^-k
};

}  // namespace dynsc

#endif  // DYNSC_GRID_HPP_
