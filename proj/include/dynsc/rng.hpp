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

#ifndef DYNSC_RNG_HPP_
#define DYNSC_RNG_HPP_

#include <cstdint>
#include <vector>

namespace dynsc {

// Counter-based pseudorandom stream (splitmix64). Unlike the standard
// <random> engines/distributions, every draw here is fully specified, so
// identical seeds replay identical runs on any platform. Independent
// substreams are derived from (seed, domain, index) without coordination,
// which is how each threshold run gets its own stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ kGolden)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t domain,
                       std::uint64_t index) {
    return Rng(mix(seed + kGolden * (domain + 1)) ^ mix(index + kGolden));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform double in [0, 1), 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n); n must be positive. Rejection sampling keeps
  // the draw unbiased and platform-independent.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Fisher-Yates shuffle of the whole vector.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  // Partial Fisher-Yates: after the call, v[0..m) is a uniformly random
  // ordered sample of size m drawn without replacement from v.
  template <typename T>
  void partial_shuffle(std::vector<T>& v, std::size_t m) {
    for (std::size_t i = 0; i < m && i < v.size(); ++i) {
      std::swap(v[i], v[i + below(v.size() - i)]);
    }
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

// Substream domains; keeps independent consumers off each other's streams.
enum class RngDomain : std::uint64_t {
  kThresholdRun = 1,
  kStreamGen = 2,
  kSelfTest = 3,
  kVerify = 4,
  kFixture = 5,
};

inline Rng make_substream(std::uint64_t seed, RngDomain domain,
                          std::uint64_t index) {
  return Rng::substream(seed, static_cast<std::uint64_t>(domain), index);
}

}  // namespace dynsc

#endif  // DYNSC_RNG_HPP_
