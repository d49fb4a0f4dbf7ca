// Copyright 2026 The detpart Authors
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

#include "detpart/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace detpart::io {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank, non-comment line; false at end of stream.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::vector<std::int64_t> parse_integers(const std::string& line, std::size_t line_no) {
  std::vector<std::int64_t> values;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    if (p == end) break;
    std::int64_t value = 0;
    auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t')) {
      throw ParseError(line_no, "expected an integer, got '" + std::string(p, std::min<std::size_t>(16, end - p)) + "'");
    }
    values.push_back(value);
    p = next;
  }
  return values;
}

}  // namespace

Hypergraph read_hmetis(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.line_no(), "missing header");
  const auto header = parse_integers(line, reader.line_no());
  if (header.size() < 2 || header.size() > 3) throw ParseError(reader.line_no(), "header must be '|E| |V| [fmt]'");
  const std::int64_t num_edges = header[0];
  const std::int64_t num_vertices = header[1];
  const std::int64_t fmt = header.size() == 3 ? header[2] : 0;
  if (num_edges < 0 || num_vertices < 0 || num_vertices > std::int64_t{0xfffffffe} ||
      num_edges > std::int64_t{0xfffffffe}) {
    throw ParseError(reader.line_no(), "invalid hyperedge or vertex count");
  }
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11) throw ParseError(reader.line_no(), "unsupported fmt " + std::to_string(fmt));
  const bool edge_weights = fmt == 1 || fmt == 11;
  const bool vertex_weights = fmt == 10 || fmt == 11;

  std::vector<PinIndex> offsets{0};
  offsets.reserve(static_cast<std::size_t>(num_edges) + 1);
  std::vector<VertexID> pins;
  std::vector<Weight> hyperedge_weight;
  hyperedge_weight.reserve(static_cast<std::size_t>(num_edges));
  std::vector<std::uint32_t> stamp(static_cast<std::size_t>(num_vertices), 0);

  for (std::int64_t e = 0; e < num_edges; ++e) {
    if (!reader.next(line)) throw ParseError(reader.line_no(), "expected " + std::to_string(num_edges) + " hyperedges, found " + std::to_string(e));
    const auto values = parse_integers(line, reader.line_no());
    std::size_t first_pin = 0;
    Weight weight = 1;
    if (edge_weights) {
      weight = values[0];
      if (weight <= 0) throw ParseError(reader.line_no(), "hyperedge weight must be positive");
      first_pin = 1;
    }
    if (values.size() <= first_pin) throw ParseError(reader.line_no(), "hyperedge has no pins");
    for (std::size_t i = first_pin; i < values.size(); ++i) {
      const std::int64_t pin = values[i];
      if (pin < 1 || pin > num_vertices) {
        throw ParseError(reader.line_no(), "pin " + std::to_string(pin) + " exceeds |V|=" + std::to_string(num_vertices));
      }
      const auto v = static_cast<VertexID>(pin - 1);
      if (stamp[v] == static_cast<std::uint32_t>(e + 1)) continue;
      stamp[v] = static_cast<std::uint32_t>(e + 1);
      pins.push_back(v);
    }
    offsets.push_back(pins.size());
    hyperedge_weight.push_back(weight);
  }

  std::vector<Weight> vertex_weight;
  if (vertex_weights) {
    vertex_weight.reserve(static_cast<std::size_t>(num_vertices));
    for (std::int64_t v = 0; v < num_vertices; ++v) {
      if (!reader.next(line)) throw ParseError(reader.line_no(), "expected " + std::to_string(num_vertices) + " vertex weights, found " + std::to_string(v));
      const auto values = parse_integers(line, reader.line_no());
      if (values.size() != 1) throw ParseError(reader.line_no(), "expected a single vertex weight");
      if (values[0] <= 0) throw ParseError(reader.line_no(), "vertex weight must be positive");
      vertex_weight.push_back(values[0]);
    }
  }
  if (reader.next(line)) throw ParseError(reader.line_no(), "unexpected trailing content");

  return Hypergraph(static_cast<VertexID>(num_vertices), std::move(offsets), std::move(pins),
                    std::move(hyperedge_weight), std::move(vertex_weight));
}

Hypergraph read_hmetis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_hmetis(in);
}

void write_hmetis(std::ostream& out, const Hypergraph& hg) {
  bool weighted_edges = false;
  bool weighted_vertices = false;
  for (Weight w : hg.hyperedge_weights()) weighted_edges |= w != 1;
  for (Weight w : hg.vertex_weights()) weighted_vertices |= w != 1;
  const bool weighted = weighted_edges || weighted_vertices;

  out << hg.num_hyperedges() << ' ' << hg.num_vertices();
  if (weighted) out << " 11";
  out << '\n';
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    bool first = true;
    if (weighted) {
      out << hg.hyperedge_weight(e);
      first = false;
    }
    for (VertexID v : hg.pins(e)) {
      if (!first) out << ' ';
      out << v + 1;
      first = false;
    }
    out << '\n';
  }
  if (weighted) {
    for (VertexID v = 0; v < hg.num_vertices(); ++v) out << hg.vertex_weight(v) << '\n';
  }
}

void write_hmetis_file(const std::string& path, const Hypergraph& hg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_hmetis(out, hg);
}

void write_partition(std::ostream& out, std::span<const BlockID> assignment) {
  for (BlockID b : assignment) out << b << '\n';
}

void write_partition_file(const std::string& path, std::span<const BlockID> assignment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_partition(out, assignment);
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::vector<BlockID> read_partition(std::istream& in) {
  std::vector<BlockID> assignment;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto values = parse_integers(line, line_no);
    if (values.size() != 1 || values[0] < 0) throw ParseError(line_no, "expected a non-negative block id");
    assignment.push_back(static_cast<BlockID>(values[0]));
  }
  return assignment;
}

}  // namespace detpart::io
