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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>

#include "doctest.h"
#include "dynsc/stream.hpp"

using namespace dynsc;

namespace {

std::string ops_text(const std::vector<UpdateOp>& stream) {
  return format_stream(stream);
}

}  // namespace

TEST_CASE("insert-only emits one insert per id") {
  std::vector<UpdateOp> stream =
      gen_stream(StreamKind::kInsertOnly, {.n = 5}, 0);
  REQUIRE(stream.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(stream[i].kind == UpdateOp::Kind::kInsert);
    CHECK(stream[i].id == "e" + std::to_string(i));
  }
}

TEST_CASE("sliding window slides oldest-out, newest-in") {
  std::vector<UpdateOp> stream = gen_stream(
      StreamKind::kSlidingWindow,
      {.n = 3, .ops = 5, .window = 2, .ids = {"a", "b", "c"}}, 0);
  CHECK(ops_text(stream) == "+ a\n+ b\n- a\n+ c\n- b\n");
}

TEST_CASE("sliding window recycles ids on long streams") {
  std::vector<UpdateOp> stream = gen_stream(
      StreamKind::kSlidingWindow, {.n = 4, .ops = 40, .window = 3}, 0);
  CHECK(stream.size() == 40);
  CHECK_NOTHROW(validate_stream(stream));
}

TEST_CASE("random churn is valid and seed-deterministic") {
  StreamGenParams params{.n = 12, .ops = 200, .churn_insert_prob = 0.5};
  std::vector<UpdateOp> a = gen_stream(StreamKind::kRandomChurn, params, 9);
  std::vector<UpdateOp> b = gen_stream(StreamKind::kRandomChurn, params, 9);
  std::vector<UpdateOp> c = gen_stream(StreamKind::kRandomChurn, params, 10);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.size() == 200);
  bool has_delete = false;
  for (const UpdateOp& op : a) {
    if (op.kind == UpdateOp::Kind::kDelete) has_delete = true;
  }
  CHECK(has_delete);
}

TEST_CASE("generation parameters are validated") {
  CHECK_THROWS_AS(gen_stream(StreamKind::kSlidingWindow,
                             {.n = 3, .ops = 5, .window = 4}, 0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(gen_stream(StreamKind::kRandomChurn,
                             {.n = 3, .ops = 5, .churn_insert_prob = 1.0},
                             0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(gen_stream(StreamKind::kInsertOnly, {.n = 0}, 0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(stream_kind_from_name("nope"), InvalidArgumentError);
  CHECK(stream_kind_from_name("sliding_window") ==
        StreamKind::kSlidingWindow);
}

TEST_CASE("text round trip preserves the stream") {
  std::vector<UpdateOp> stream = gen_stream(
      StreamKind::kRandomChurn, {.n = 8, .ops = 60}, 4);
  std::string text = format_stream(stream);
  std::vector<UpdateOp> parsed = parse_stream(text);
  REQUIRE(parsed.size() == stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    CHECK(parsed[i].kind == stream[i].kind);
    CHECK(parsed[i].id == stream[i].id);
  }
}

TEST_CASE("invalid streams are rejected at load") {
  CHECK_THROWS_AS(parse_stream("- a\n"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_stream("+ a\n+ a\n"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_stream("+ a\n- b\n"), InvalidArgumentError);
  CHECK_THROWS_AS(parse_stream("* a\n"), InvalidArgumentError);
  CHECK_NOTHROW(parse_stream("+ a\n- a\n+ a\n"));
}

TEST_CASE("stream files save and load") {
  std::string path = "/tmp/dynsc_test_stream.txt";
  std::vector<UpdateOp> stream = gen_stream(
      StreamKind::kSlidingWindow, {.n = 4, .ops = 9, .window = 2}, 0);
  save_stream(stream, path);
  std::vector<UpdateOp> loaded = load_stream(path);
  REQUIRE(loaded.size() == stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i) {
    CHECK(loaded[i].kind == stream[i].kind);
    CHECK(loaded[i].id == stream[i].id);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_stream("/nonexistent/stream.txt"), IoError);
}
