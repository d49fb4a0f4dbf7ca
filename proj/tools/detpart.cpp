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

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "detpart/io.hpp"
#include "detpart/partitioner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitNotDeterministic = 3;

using nlohmann::json;

json config_json(const detpart::PartitionConfig& cfg) {
  return {
      {"k", cfg.k},
      {"epsilon", cfg.epsilon},
      {"seed", cfg.seed},
      {"threads", cfg.thread_count},
      {"sub_rounds_preprocessing", cfg.preprocessing_sub_rounds},
      {"sub_rounds_coarsening", cfg.coarsening_sub_rounds},
      {"sub_rounds_refinement", cfg.refinement_sub_rounds},
      {"rounds_refinement", cfg.refinement_rounds_per_level},
      {"rounds_preprocessing", cfg.preprocessing_rounds},
      {"contraction_limit_factor", cfg.contraction_limit_factor},
      {"max_rated_hyperedge_size", cfg.max_rated_hyperedge_size},
      {"swap_sequential_threshold", cfg.swap_sequential_threshold},
      {"shuffle_chunk_count", cfg.shuffle_chunk_count},
  };
}

std::string hex(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

json report_json(const detpart::RunReport& r) {
  json levels = json::array();
  for (const auto& level : r.levels) {
    levels.push_back({
        {"vertices", level.num_vertices},
        {"hyperedges", level.num_hyperedges},
        {"coarse_connectivity", level.coarse_connectivity},
        {"projected_connectivity", level.projected_connectivity},
        {"refined_connectivity", level.refined_connectivity},
        {"projected_imbalance", level.projected_imbalance},
        {"refinement_rounds", level.refinement.rounds},
        {"refinement_reverts", level.refinement.reverts},
        {"refinement_moves", level.refinement.applied_moves},
    });
  }
  json clusterings = json::array();
  for (auto c : r.phases.clusterings) clusterings.push_back(hex(c));
  json refined = json::array();
  for (auto c : r.phases.refined) refined.push_back(hex(c));
  return {
      {"connectivity", r.connectivity},
      {"imbalance", r.imbalance},
      {"balanced", r.balanced},
      {"max_block_weight", r.max_block_weight},
      {"block_weights", r.block_weights},
      {"checksum", hex(r.checksum)},
      {"times",
       {{"preprocessing", r.times.preprocessing},
        {"coarsening", r.times.coarsening},
        {"initial_partitioning", r.times.initial_partitioning},
        {"refinement", r.times.refinement},
        {"total", r.times.total}}},
      {"config", config_json(r.config)},
      {"communities", r.num_communities},
      {"level_sizes", r.level_sizes},
      {"initial_connectivity", r.initial_connectivity},
      {"levels", levels},
      {"phase_checksums",
       {{"communities", hex(r.phases.communities)},
        {"clusterings", clusterings},
        {"initial_partition", hex(r.phases.initial_partition)},
        {"refined", refined}}},
  };
}

void print_text(std::ostream& out, const detpart::RunReport& r) {
  out << "connectivity         " << r.connectivity << '\n'
      << "imbalance            " << r.imbalance << '\n'
      << "balanced             " << (r.balanced ? "yes" : "no") << '\n'
      << "max block weight     " << r.max_block_weight << '\n'
      << "block weights       ";
  for (auto w : r.block_weights) out << ' ' << w;
  out << '\n'
      << "checksum             " << hex(r.checksum) << '\n'
      << "communities          " << r.num_communities << '\n'
      << "levels              ";
  for (auto n : r.level_sizes) out << ' ' << n;
  out << '\n'
      << "initial connectivity " << r.initial_connectivity << '\n'
      << "time preprocessing   " << r.times.preprocessing << " s\n"
      << "time coarsening      " << r.times.coarsening << " s\n"
      << "time initial         " << r.times.initial_partitioning << " s\n"
      << "time refinement      " << r.times.refinement << " s\n"
      << "time total           " << r.times.total << " s\n";
}

json determinism_json(const detpart::DeterminismReport& d) {
  json checksums = json::array();
  for (auto c : d.checksums) checksums.push_back(hex(c));
  json out = {
      {"passed", d.passed},
      {"thread_counts", d.thread_counts},
      {"checksums", checksums},
      {"connectivity", d.connectivity},
  };
  if (!d.passed) {
    out["first_differing_phase"] = d.first_differing_phase;
    out["differing_level"] = d.differing_level;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic parallel multilevel hypergraph partitioner"};
  detpart::PartitionConfig cfg;
  std::string hypergraph_path;
  std::string output_path;
  std::string report_format = "text";
  std::vector<int> verify_threads;

  app.add_option("--hypergraph", hypergraph_path, "Input hypergraph in hMetis format")->required();
  app.add_option("--k", cfg.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  app.add_option("--epsilon", cfg.epsilon, "Allowed imbalance")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", cfg.thread_count, "Number of threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--output", output_path, "Write the partition to this file");
  app.add_option("--sub-rounds-preprocessing", cfg.preprocessing_sub_rounds)->capture_default_str();
  app.add_option("--sub-rounds-coarsening", cfg.coarsening_sub_rounds)->capture_default_str();
  app.add_option("--sub-rounds-refinement", cfg.refinement_sub_rounds)->capture_default_str();
  app.add_option("--rounds-refinement", cfg.refinement_rounds_per_level)->capture_default_str();
  app.add_option("--verify-determinism", verify_threads, "Compare runs with these thread counts, e.g. 1,2,4,8")
      ->delimiter(',');
  app.add_option("--report", report_format, "Report format")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--inject-unordered-volume-updates", cfg.inject_unordered_volume_updates,
               "Debugging aid: make community detection order dependent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  if (cfg.max_refinement_sub_rounds < cfg.refinement_sub_rounds) cfg.max_refinement_sub_rounds = cfg.refinement_sub_rounds;

  try {
    const detpart::Hypergraph hg = detpart::io::read_hmetis_file(hypergraph_path);
    if (!verify_threads.empty()) {
      const detpart::DeterminismReport d = detpart::verify_determinism(hg, cfg, verify_threads);
      if (report_format == "json") {
        std::cout << determinism_json(d).dump(2) << '\n';
      } else {
        std::cout << "determinism " << (d.passed ? "passed" : "FAILED") << '\n';
        for (std::size_t i = 0; i < d.thread_counts.size(); ++i) {
          std::cout << "  threads " << d.thread_counts[i] << "  connectivity " << d.connectivity[i] << "  checksum "
                    << hex(d.checksums[i]) << '\n';
        }
        if (!d.passed) std::cout << "first differing phase: " << d.first_differing_phase << '\n';
      }
      return d.passed ? kExitOk : kExitNotDeterministic;
    }

    const detpart::PartitionResult result = detpart::partition(hg, cfg);
    if (!output_path.empty()) detpart::io::write_partition_file(output_path, result.assignment);
    if (report_format == "json") {
      std::cout << report_json(result.report).dump(2) << '\n';
    } else {
      print_text(std::cout, result.report);
    }
  } catch (const detpart::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
