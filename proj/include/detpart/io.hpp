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

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "detpart/hypergraph.hpp"

namespace detpart::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the hMetis format:
///   header  "|E| |V| [fmt]", fmt ∈ {absent, 1, 10, 11}
///   |E| lines of 1-indexed pins, prefixed by the hyperedge weight if fmt ∈ {1, 11}
///   |V| vertex weight lines if fmt ∈ {10, 11}
/// Lines starting with '%' are comments; blank lines are skipped. Duplicate
/// pins inside a hyperedge are dropped.
Hypergraph read_hmetis(std::istream& in);
Hypergraph read_hmetis_file(const std::string& path);

/// Writes fmt 11 if any weight differs from 1, otherwise the plain header.
void write_hmetis(std::ostream& out, const Hypergraph& hg);
void write_hmetis_file(const std::string& path, const Hypergraph& hg);

/// One decimal block id per line, in vertex order.
void write_partition(std::ostream& out, std::span<const BlockID> assignment);
void write_partition_file(const std::string& path, std::span<const BlockID> assignment);
std::vector<BlockID> read_partition(std::istream& in);

}  // namespace detpart::io
