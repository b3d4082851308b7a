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

#include "annealforge/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "annealforge/rng.hpp"

namespace annealforge {

bool WeightedGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return edges.count({i, j}) > 0;
}

double WeightedGraph::total_edge_weight() const {
  double w = 0.0;
  for (const auto& [key, v] : edges) w += v;
  return w;
}

WeightedGraph erdos_renyi(int n, double p, std::uint64_t seed,
                          UniformReal edge_w,
                          std::optional<UniformReal> vertex_w) {
  if (n < 0) {
    throw Error("erdos_renyi: negative vertex count");
  }
  if (p < 0.0 || p > 1.0) {
    throw Error("erdos_renyi: p must lie in [0, 1]");
  }
  Rng rng(seed);
  WeightedGraph g;
  g.n = n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) {
        g.edges[{i, j}] = rng.uniform(edge_w.lo, edge_w.hi);
      }
    }
  }
  if (vertex_w) {
    auto& weights = g.vertex_weights.emplace();
    for (int i = 0; i < n; ++i) {
      weights[i] = rng.uniform(vertex_w->lo, vertex_w->hi);
    }
  }
  return g;
}

IsingModel max_cut_ising(const WeightedGraph& g) {
  IsingModel model(g.n, Domain::Spin);
  for (const auto& [key, w] : g.edges) {
    model.add_coupler(key.first, key.second, w);
  }
  return model;
}

IsingModel max_clique_ising(const WeightedGraph& g) {
  if (!g.vertex_weights) {
    throw InvalidWeight("max_clique_ising: vertex weights required");
  }
  const auto& weights = *g.vertex_weights;
  for (int i = 0; i < g.n; ++i) {
    auto it = weights.find(i);
    if (it == weights.end() || it->second <= 0.0) {
      throw InvalidWeight("max_clique_ising: vertex " + std::to_string(i) +
                          " needs a positive weight");
    }
  }
  IsingModel qubo(g.n, Domain::Binary);
  for (int i = 0; i < g.n; ++i) {
    qubo.add_field(i, -weights.at(i));
  }
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (!g.has_edge(i, j)) {
        qubo.add_coupler(i, j, 2.0 * std::max(weights.at(i), weights.at(j)));
      }
    }
  }
  return convert(qubo, Domain::Spin);
}

namespace {

bool selected(int value) { return value == 1; }

}  // namespace

double score_cut(const WeightedGraph& g, const Assignment& a) {
  if (static_cast<int>(a.size()) != g.n) {
    throw InvalidAssignment("score_cut: assignment length mismatch");
  }
  double cut = 0.0;
  for (const auto& [key, w] : g.edges) {
    const bool side_i = a[static_cast<size_t>(key.first)] > 0;
    const bool side_j = a[static_cast<size_t>(key.second)] > 0;
    if (side_i != side_j) cut += w;
  }
  return cut;
}

std::optional<double> score_clique(const WeightedGraph& g, const Assignment& a) {
  if (static_cast<int>(a.size()) != g.n) {
    throw InvalidAssignment("score_clique: assignment length mismatch");
  }
  std::vector<int> members;
  for (int i = 0; i < g.n; ++i) {
    if (selected(a[static_cast<size_t>(i)])) members.push_back(i);
  }
  for (size_t x = 0; x < members.size(); ++x) {
    for (size_t y = x + 1; y < members.size(); ++y) {
      if (!g.has_edge(members[x], members[y])) return std::nullopt;
    }
  }
  if (!g.vertex_weights) {
    return static_cast<double>(members.size());
  }
  double w = 0.0;
  for (int v : members) w += g.vertex_weights->at(v);
  return w;
}

Baseline compute_baseline(
    const std::string& problem_id, const IsingModel& model, Sampler& sampler,
    const std::function<std::optional<double>(const Assignment&)>& value_of,
    std::uint64_t seed, int n_anneals, double anneal_time_us) {
  const SampleSet samples = sampler.sample(model, n_anneals, anneal_time_us, seed);
  for (const auto& rec : samples.records()) {
    if (auto value = value_of(rec.state)) {
      Baseline b;
      b.problem_id = problem_id;
      b.best_value = *value;
      b.best_energy = rec.energy;
      b.num_anneals = n_anneals;
      b.anneal_time_us = anneal_time_us;
      return b;
    }
  }
  throw NoValidSolution("compute_baseline: no sample yields a defined score for " +
                        problem_id);
}

void write_weighted_graph(const WeightedGraph& g, std::ostream& out) {
  for (int i = 0; i < g.n; ++i) {
    out << "node " << i << "\n";
  }
  for (const auto& [key, w] : g.edges) {
    out << "edge " << key.first << " " << key.second << " " << format_double(w)
        << "\n";
  }
  if (g.vertex_weights) {
    for (const auto& [v, w] : *g.vertex_weights) {
      out << "w " << v << " " << format_double(w) << "\n";
    }
  }
}

void write_weighted_graph_file(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write graph file: " + path);
  }
  write_weighted_graph(g, out);
}

WeightedGraph read_weighted_graph(std::istream& in) {
  WeightedGraph g;
  std::set<int> nodes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string kind;
    if (!(iss >> kind) || kind[0] == '#') continue;
    if (kind == "node") {
      int id;
      if (!(iss >> id)) {
        throw IoError("graph file line " + std::to_string(line_no) + ": bad node");
      }
      nodes.insert(id);
    } else if (kind == "edge") {
      int a, b;
      if (!(iss >> a >> b)) {
        throw IoError("graph file line " + std::to_string(line_no) + ": bad edge");
      }
      double w = 1.0;
      iss >> w;
      if (a == b) {
        throw IoError("graph file line " + std::to_string(line_no) + ": self loop");
      }
      if (a > b) std::swap(a, b);
      g.edges[{a, b}] = w;
      nodes.insert(a);
      nodes.insert(b);
    } else if (kind == "w") {
      int v;
      double w;
      if (!(iss >> v >> w)) {
        throw IoError("graph file line " + std::to_string(line_no) +
                      ": bad vertex weight");
      }
      if (!g.vertex_weights) g.vertex_weights.emplace();
      (*g.vertex_weights)[v] = w;
      nodes.insert(v);
    } else {
      throw IoError("graph file line " + std::to_string(line_no) +
                    ": unrecognized record '" + kind + "'");
    }
  }
  g.n = nodes.empty() ? 0 : *nodes.rbegin() + 1;
  return g;
}

WeightedGraph read_weighted_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open graph file: " + path);
  }
  return read_weighted_graph(in);
}

}  // namespace annealforge
