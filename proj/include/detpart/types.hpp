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

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace detpart {

using VertexID = std::uint32_t;
using HyperedgeID = std::uint32_t;
using ClusterID = std::uint32_t;
using BlockID = std::int32_t;
using Weight = std::int64_t;
using Gain = std::int64_t;
using PinIndex = std::uint64_t;

inline constexpr BlockID kInvalidBlock = -1;
inline constexpr HyperedgeID kRemovedHyperedge = std::numeric_limits<HyperedgeID>::max();

// Raised when no ε-balanced partition can exist, e.g. a vertex heavier than L_max.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detpart
