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

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

#include "detpart/hypergraph.hpp"
#include "detpart/io.hpp"
#include "test_util.hpp"

namespace detpart {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_hmetis(in);
}

std::vector<VertexID> pins_of(const Hypergraph& hg, HyperedgeID e) {
  return {hg.pins(e).begin(), hg.pins(e).end()};
}

TEST(Hypergraph, CsrAndIncidence) {
  auto hg = Hypergraph::from_pin_lists(4, {{0, 1, 2}, {2, 3}});
  EXPECT_EQ(hg.num_vertices(), 4u);
  EXPECT_EQ(hg.num_hyperedges(), 2u);
  EXPECT_EQ(hg.num_pins(), 5u);
  EXPECT_THAT(pins_of(hg, 0), ElementsAre(0, 1, 2));
  EXPECT_THAT(pins_of(hg, 1), ElementsAre(2, 3));
  EXPECT_THAT(std::vector<HyperedgeID>(hg.incident_nets(2).begin(), hg.incident_nets(2).end()), ElementsAre(0, 1));
  EXPECT_EQ(hg.degree(0), 1u);
  EXPECT_EQ(hg.edge_size(0), 3u);
  EXPECT_EQ(hg.total_vertex_weight(), 4);
  EXPECT_EQ(hg.total_hyperedge_weight(), 2);
  EXPECT_NO_THROW(hg.validate());
}

TEST(Hypergraph, RejectsBadInput) {
  EXPECT_THROW(Hypergraph::from_pin_lists(2, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph::from_pin_lists(2, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Hypergraph::from_pin_lists(2, {{0, 1}}, {0}), std::invalid_argument);
  EXPECT_THROW(Hypergraph::from_pin_lists(2, {{0, 1}}, {}, {1, -1}), std::invalid_argument);
  EXPECT_THROW(Hypergraph::from_pin_lists(2, {{0, 1}}, {1, 1}), std::invalid_argument);
}

TEST(Hypergraph, IncidenceIsTransposeOfPins) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto hg = testing::random_hypergraph(rng, {.max_vertices = 30, .max_edges = 40, .max_edge_size = 8,
                                                .allow_single_pin = true, .max_vertex_weight = 5,
                                                .max_edge_weight = 9});
    std::size_t incidences = 0;
    for (VertexID v = 0; v < hg.num_vertices(); ++v) {
      auto nets = hg.incident_nets(v);
      ASSERT_TRUE(std::is_sorted(nets.begin(), nets.end()));
      for (HyperedgeID e : nets) {
        auto pins = hg.pins(e);
        ASSERT_NE(std::find(pins.begin(), pins.end(), v), pins.end());
      }
      incidences += nets.size();
    }
    ASSERT_EQ(incidences, hg.num_pins());
  }
}

TEST(Clustering, Singletons) {
  auto hg = Hypergraph::from_pin_lists(3, {{0, 1}}, {}, {2, 3, 4});
  auto c = Clustering::singletons(hg);
  EXPECT_THAT(c.cluster_of, ElementsAre(0, 1, 2));
  EXPECT_THAT(c.cluster_weight, ElementsAre(2, 3, 4));
}

TEST(ReadHmetis, Unweighted) {
  auto hg = parse("2 4\n1 2 3\n3 4\n");
  EXPECT_EQ(hg.num_vertices(), 4u);
  EXPECT_THAT(pins_of(hg, 0), ElementsAre(0, 1, 2));
  EXPECT_THAT(pins_of(hg, 1), ElementsAre(2, 3));
  EXPECT_EQ(hg.hyperedge_weight(0), 1);
  EXPECT_EQ(hg.vertex_weight(3), 1);
}

TEST(ReadHmetis, HyperedgeWeights) {
  auto hg = parse("1 2 1\n7 1 2\n");
  ASSERT_EQ(hg.num_hyperedges(), 1u);
  EXPECT_THAT(pins_of(hg, 0), ElementsAre(0, 1));
  EXPECT_EQ(hg.hyperedge_weight(0), 7);
}

TEST(ReadHmetis, VertexWeightsAndComments) {
  auto hg = parse("% comment\n1 3 10\n\n1 3\n% another\n5\n6\n7\n");
  EXPECT_THAT(hg.vertex_weights(), ElementsAre(5, 6, 7));
  EXPECT_EQ(hg.total_vertex_weight(), 18);
}

TEST(ReadHmetis, BothWeights) {
  auto hg = parse("2 3 11\n4 1 2\n9 2 3\n1\n2\n3\n");
  EXPECT_THAT(hg.hyperedge_weights(), ElementsAre(4, 9));
  EXPECT_THAT(hg.vertex_weights(), ElementsAre(1, 2, 3));
}

TEST(ReadHmetis, DropsDuplicatePins) {
  auto hg = parse("1 3\n1 2 1 3 2\n");
  EXPECT_THAT(pins_of(hg, 0), ElementsAre(0, 1, 2));
}

TEST(ReadHmetis, PinOutOfRangeNamesLine) {
  try {
    parse("1 2\n1 3\n");
    FAIL() << "expected a parse error";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_THAT(e.what(), HasSubstr("line 2"));
  }
}

TEST(ReadHmetis, Malformed) {
  EXPECT_THROW(parse(""), io::ParseError);
  EXPECT_THROW(parse("1\n1 2\n"), io::ParseError);
  EXPECT_THROW(parse("2 2\n1 2\n"), io::ParseError);
  EXPECT_THROW(parse("1 2 7\n1 2\n"), io::ParseError);
  EXPECT_THROW(parse("1 2 1\n0 1 2\n"), io::ParseError);
  EXPECT_THROW(parse("1 2 10\n1 2\n1\n0\n"), io::ParseError);
  EXPECT_THROW(parse("1 2\n1 x\n"), io::ParseError);
  EXPECT_THROW(parse("1 2\n1 2\n1 2\n"), io::ParseError);
  EXPECT_THROW(parse("1 2\n0 1\n"), io::ParseError);
}

TEST(WriteHmetis, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto hg = testing::random_hypergraph(rng, {.max_vertices = 20, .max_edges = 30, .max_edge_size = 6,
                                                .allow_single_pin = true, .max_vertex_weight = trial % 2 ? 4 : 1,
                                                .max_edge_weight = trial % 3 ? 1 : 8});
    std::ostringstream out;
    io::write_hmetis(out, hg);
    auto back = parse(out.str());
    ASSERT_EQ(back.pin_offsets(), hg.pin_offsets());
    ASSERT_EQ(back.pin_array(), hg.pin_array());
    ASSERT_EQ(back.hyperedge_weights(), hg.hyperedge_weights());
    ASSERT_EQ(back.vertex_weights(), hg.vertex_weights());
  }
}

TEST(Partition, WriteAndRead) {
  std::ostringstream out;
  const std::vector<BlockID> assignment{0, 0, 1, 1};
  io::write_partition(out, assignment);
  EXPECT_EQ(out.str(), "0\n0\n1\n1\n");
  std::istringstream in(out.str());
  EXPECT_EQ(io::read_partition(in), assignment);
  std::istringstream bad("0\n-1\n");
  EXPECT_THROW(io::read_partition(bad), io::ParseError);
}

TEST(Corpus, AllInstancesLoad) {
  const auto files = testing::corpus_files();
  ASSERT_GE(files.size(), 10u);
  for (const auto& path : files) {
    auto hg = io::read_hmetis_file(path.string());
    EXPECT_NO_THROW(hg.validate()) << path;
    EXPECT_LE(hg.num_pins(), 100000u) << path;
  }
}

}  // namespace
}  // namespace detpart
