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

#ifndef DYNSC_STREAM_HPP_
#define DYNSC_STREAM_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynsc/common.hpp"

namespace dynsc {

struct UpdateOp {
  enum class Kind { kInsert, kDelete };
  Kind kind = Kind::kInsert;
  std::string id;
  std::uint64_t t = 0;

  bool operator==(const UpdateOp&) const = default;
};

enum class StreamKind { kInsertOnly, kSlidingWindow, kRandomChurn };

StreamKind stream_kind_from_name(const std::string& name);

struct StreamGenParams {
  std::size_t n = 0;            // distinct ids available
  std::size_t ops = 0;          // total updates; insert_only defaults to n
  std::size_t window = 0;       // sliding window width, must be <= n
  double churn_insert_prob = 0.5;  // random churn: P(op is an insert)
  std::vector<std::string> ids;    // optional explicit id pool
};

// Deterministic per (kind, params, seed). Every delete targets a live id
// and every insert a non-live one, by construction; validate_stream is run
// on the result as a belt check.
std::vector<UpdateOp> gen_stream(StreamKind kind, const StreamGenParams& p,
                                 std::uint64_t seed);

// Throws InvalidArgumentError on the first op that deletes a dead element
// or re-inserts a live one.
void validate_stream(const std::vector<UpdateOp>& stream);

// Text form: one op per line, "+ <id>" or "- <id>".
std::string format_stream(const std::vector<UpdateOp>& stream);
std::vector<UpdateOp> parse_stream(const std::string& text);

std::vector<UpdateOp> load_stream(const std::string& path);
void save_stream(const std::vector<UpdateOp>& stream,
                 const std::string& path);

}  // namespace dynsc

#endif  // DYNSC_STREAM_HPP_
