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

#ifndef DYNSC_COMMON_HPP_
#define DYNSC_COMMON_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynsc {

// Dense element handle; ground-set loaders intern external string ids.
using ElementId = std::uint32_t;

// A set of elements, stored as a sorted, duplicate-free vector. All
// algorithmic code iterates these in id order, which keeps every run
// deterministic for a fixed seed.
using IdSet = std::vector<ElementId>;

// Caller passed a value that violates an operation's contract.
class InvalidArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was invoked in a state its precondition forbids.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An oracle returned a value inconsistent with monotone submodularity.
class OracleContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The library detected a broken internal invariant; always a bug.
class InternalInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Filesystem / serialization failure, annotated with the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool set_contains(const IdSet& s, ElementId e) {
  return std::binary_search(s.begin(), s.end(), e);
}

// Inserts e keeping order; returns false if already present.
inline bool set_insert(IdSet& s, ElementId e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it != s.end() && *it == e) return false;
  s.insert(it, e);
  return true;
}

// Removes e; returns false if absent.
inline bool set_erase(IdSet& s, ElementId e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it == s.end() || *it != e) return false;
  s.erase(it);
  return true;
}

inline IdSet set_difference(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline std::size_t set_intersection_size(const IdSet& a, const IdSet& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

inline bool set_is_subset(const IdSet& sub, const IdSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline IdSet make_set(std::vector<ElementId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

}  // namespace dynsc

#endif  // DYNSC_COMMON_HPP_
