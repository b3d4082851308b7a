// Copyright 2026 AnnealForge contributors
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
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "annealforge/ising.hpp"

namespace annealforge {

/// Undirected graph with edge weights and optional vertex weights.
/// No self loops; all weights finite.
struct WeightedGraph {
  int n = 0;
  std::map<std::pair<int, int>, double> edges;  // keys i < j
  std::optional<std::map<int, double>> vertex_weights;

  bool has_edge(int i, int j) const;
  double total_edge_weight() const;
};

struct UniformReal {
  double lo = 0.0;
  double hi = 1.0;
};

/// Erdos-Renyi G(n, p) with edge weights drawn from edge_w and, when
/// vertex_w is set, vertex weights drawn from vertex_w.  One rng stream;
/// pairs are visited in lexicographic order, then vertices.
WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed,
                          UniformReal edge_w = {-1.0, 1.0},
                          std::optional<UniformReal> vertex_w = UniformReal{0.001, 1.0});

/// Spin model J_ij = w(i, j) with no linear terms; for every assignment
/// energy(x) = W - 2 * cut(x) where W is the total edge weight, so the
/// minimum energy state is a maximum cut.
IsingModel max_cut_ising(const WeightedGraph& g);

/// Vertex-weighted Max-Clique QUBO
///   -sum_i w(i) b_i + 2 sum_{(i,j) not in E} max{w(i), w(j)} b_i b_j,
/// built over the complement edge set and returned converted to the
/// spin domain.  Requires positive vertex weights.
IsingModel max_clique_ising(const WeightedGraph& g);

/// Weight of the cutset induced by the two assignment sides.  Accepts
/// spin (-1/+1) or binary (0/1) encodings of the partition.
double score_cut(const WeightedGraph& g, const Assignment& a);

/// Total weight of the selected vertices if they induce a clique,
/// otherwise nullopt.  Selected means +1 (spin) or 1 (binary).
std::optional<double> score_clique(const WeightedGraph& g, const Assignment& a);

/// Forward-anneal batch abstraction used for baselines and tuning.
/// Implementations must be deterministic per (model, num_reads, seed).
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleSet sample(const IsingModel& model, int num_reads,
                           double anneal_time_us, std::uint64_t seed) = 0;
};

struct Baseline {
  std::string problem_id;
  double best_value = 0.0;   // cut weight or clique weight
  double best_energy = 0.0;
  int num_anneals = 0;
  double anneal_time_us = 0.0;
};

/// Runs one forward-anneal batch and records the best solution: the
/// lowest-energy sample whose score is defined (ties by first
/// occurrence).  Throws NoValidSolution when no sample scores.
Baseline compute_baseline(
    const std::string& problem_id, const IsingModel& model, Sampler& sampler,
    const std::function<std::optional<double>(const Assignment&)>& value_of,
    std::uint64_t seed, int n_anneals = 1000, double anneal_time_us = 1.0);

// Weighted graphs reuse the hardware graph format plus `w i value`
// vertex-weight lines; edges carry an optional trailing weight.
void write_weighted_graph(const WeightedGraph& g, std::ostream& out);
void write_weighted_graph_file(const WeightedGraph& g, const std::string& path);
WeightedGraph read_weighted_graph(std::istream& in);
WeightedGraph read_weighted_graph_file(const std::string& path);

}  // namespace annealforge
