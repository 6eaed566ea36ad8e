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

#include "dynsc/stream.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dynsc/rng.hpp"

namespace dynsc {

namespace {

std::vector<std::string> id_pool(const StreamGenParams& p) {
  if (!p.ids.empty()) {
    if (p.ids.size() < p.n) {
      throw InvalidArgumentError("id pool smaller than n");
    }
    return {p.ids.begin(), p.ids.begin() + static_cast<long>(p.n)};
  }
  std::vector<std::string> ids;
  ids.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) ids.push_back("e" + std::to_string(i));
  return ids;
}

std::vector<UpdateOp> gen_insert_only(const StreamGenParams& p) {
  std::vector<std::string> ids = id_pool(p);
  std::size_t count = p.ops == 0 ? p.n : std::min(p.ops, p.n);
  std::vector<UpdateOp> stream;
  stream.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    stream.push_back({UpdateOp::Kind::kInsert, ids[i], i + 1});
  }
  return stream;
}

std::vector<UpdateOp> gen_sliding_window(const StreamGenParams& p) {
  if (p.window == 0 || p.window > p.n) {
    throw InvalidArgumentError("window must lie in [1, n]");
  }
  std::vector<std::string> ids = id_pool(p);
  std::size_t total = p.ops == 0 ? 2 * p.n : p.ops;
  std::vector<UpdateOp> stream;
  stream.reserve(total);
  std::deque<std::size_t> window;  // indices into ids, oldest first
  std::size_t next = 0;
  bool delete_turn = false;
  while (stream.size() < total) {
    if (window.size() < p.window && !delete_turn) {
      stream.push_back(
          {UpdateOp::Kind::kInsert, ids[next % p.n], stream.size() + 1});
      window.push_back(next % p.n);
      ++next;
      if (window.size() == p.window) delete_turn = true;
    } else if (delete_turn) {
      stream.push_back(
          {UpdateOp::Kind::kDelete, ids[window.front()], stream.size() + 1});
      window.pop_front();
      delete_turn = false;
    } else {
      delete_turn = true;
    }
  }
  return stream;
}

std::vector<UpdateOp> gen_random_churn(const StreamGenParams& p,
                                       std::uint64_t seed) {
  if (!(p.churn_insert_prob > 0.0) || !(p.churn_insert_prob < 1.0)) {
    throw InvalidArgumentError("churn probability must lie in (0, 1)");
  }
  std::vector<std::string> ids = id_pool(p);
  std::size_t total = p.ops == 0 ? 2 * p.n : p.ops;
  Rng rng = make_substream(seed, RngDomain::kStreamGen, 0);
  std::vector<UpdateOp> stream;
  stream.reserve(total);
  std::vector<std::size_t> live, dead;
  for (std::size_t i = 0; i < p.n; ++i) dead.push_back(i);

  auto take = [&rng](std::vector<std::size_t>& from) {
    std::size_t pos = rng.below(from.size());
    std::size_t idx = from[pos];
    from[pos] = from.back();
    from.pop_back();
    return idx;
  };

  for (std::size_t step = 0; step < total; ++step) {
    bool do_insert = live.empty() ||
                     (!dead.empty() &&
                      rng.next_double() < p.churn_insert_prob);
    if (do_insert) {
      std::size_t idx = take(dead);
      stream.push_back({UpdateOp::Kind::kInsert, ids[idx], step + 1});
      live.push_back(idx);
    } else {
      std::size_t idx = take(live);
      stream.push_back({UpdateOp::Kind::kDelete, ids[idx], step + 1});
      dead.push_back(idx);
    }
  }
  return stream;
}

}  // namespace

StreamKind stream_kind_from_name(const std::string& name) {
  if (name == "insert_only") return StreamKind::kInsertOnly;
  if (name == "sliding_window") return StreamKind::kSlidingWindow;
  if (name == "random_churn") return StreamKind::kRandomChurn;
  throw InvalidArgumentError("unknown stream kind: " + name);
}

std::vector<UpdateOp> gen_stream(StreamKind kind, const StreamGenParams& p,
                                 std::uint64_t seed) {
  if (p.n == 0) throw InvalidArgumentError("stream needs n >= 1");
  std::vector<UpdateOp> stream;
  switch (kind) {
    case StreamKind::kInsertOnly:
      stream = gen_insert_only(p);
      break;
    case StreamKind::kSlidingWindow:
      stream = gen_sliding_window(p);
      break;
    case StreamKind::kRandomChurn:
      stream = gen_random_churn(p, seed);
      break;
  }
  validate_stream(stream);
  return stream;
}

void validate_stream(const std::vector<UpdateOp>& stream) {
  std::unordered_set<std::string> live;
  for (const UpdateOp& op : stream) {
    if (op.kind == UpdateOp::Kind::kInsert) {
      if (!live.insert(op.id).second) {
        throw InvalidArgumentError("stream inserts live element " + op.id +
                                   " at t=" + std::to_string(op.t));
      }
    } else {
      if (live.erase(op.id) == 0) {
        throw InvalidArgumentError("stream deletes dead element " + op.id +
                                   " at t=" + std::to_string(op.t));
      }
    }
  }
}

std::string format_stream(const std::vector<UpdateOp>& stream) {
  std::ostringstream out;
  for (const UpdateOp& op : stream) {
    out << (op.kind == UpdateOp::Kind::kInsert ? "+ " : "- ") << op.id
        << "\n";
  }
  return out.str();
}

std::vector<UpdateOp> parse_stream(const std::string& text) {
  std::vector<UpdateOp> stream;
  std::istringstream in(text);
  std::string line;
  std::uint64_t t = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream parts(line);
    std::string sign, id;
    parts >> sign >> id;
    if ((sign != "+" && sign != "-") || id.empty()) {
      throw InvalidArgumentError("bad stream line " +
                                 std::to_string(line_no) + ": " + line);
    }
    stream.push_back({sign == "+" ? UpdateOp::Kind::kInsert
                                  : UpdateOp::Kind::kDelete,
                      id, ++t});
  }
  validate_stream(stream);
  return stream;
}

std::vector<UpdateOp> load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stream file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading stream file: " + path);
  return parse_stream(buf.str());
}

void save_stream(const std::vector<UpdateOp>& stream,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open stream file for write: " + path);
  out << format_stream(stream);
  if (!out) throw IoError("error writing stream file: " + path);
}

}  // namespace dynsc
