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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "annealforge/ising.hpp"

namespace annealforge {

enum class Topology { Chimera, Pegasus };

/// An annealer working graph: node ids under a fixed coordinate to
/// linear-index scheme, plus the coupler set.  Instances are immutable
/// once generated and deterministic in (topology, m, defect_seed,
/// defect counts).
struct HardwareGraph {
  Topology topology = Topology::Chimera;
  int m = 0;
  std::vector<int> nodes;                      // ascending
  std::vector<std::pair<int, int>> edges;      // i < j, ascending
  std::optional<std::uint64_t> defect_seed;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int max_degree() const;
};

/// Chimera cell/linear index mapping: cell (row, col), shore u in {0, 1}
/// (0 couples vertically, 1 horizontally), in-shore index k in 0..3.
int chimera_index(int m, int row, int col, int u, int k);

/// Ideal Chimera C_m: an m x m grid of complete bipartite K_{4,4} cells;
/// like-shore qubits of adjacent cells are coupled along rows/columns.
HardwareGraph chimera(int m);

/// Pegasus coordinate (u, w, k, z) linear index, row-major in that order.
int pegasus_index(int m, int u, int w, int k, int z);

/// Ideal Pegasus P_m from the published coordinate scheme with internal,
/// external and odd couplers.  With trim_to_fabric (the default), qubits
/// with no internal couplers -- the dangling half-wires on two edges of
/// the lattice -- are removed, matching the advertised chip graphs.
HardwareGraph pegasus(int m, bool trim_to_fabric = true);

/// Removes n_nodes random nodes (with incident edges), then n_edges
/// further random edges.  Deterministic per seed; the seed is recorded
/// on the returned graph.
HardwareGraph inject_defects(const HardwareGraph& g, int n_nodes, int n_edges,
                             std::uint64_t seed);

/// Coupler weight alphabet: `levels` linearly spaced values spanning
/// [lo, hi].  With exclude_zero the spacing must avoid zero exactly
/// (even `levels` over a symmetric range), otherwise construction fails.
struct PrecisionSpec {
  int levels = 10;
  double lo = -1.0;
  double hi = 1.0;
  bool exclude_zero = true;

  std::vector<double> weight_set() const;
};

/// Random spin glass on g: every edge draws a coupler uniformly from the
/// weight set; all linear terms are zero so the fields stay free for
/// initial-state encoding.  Variables are indexed by position of the
/// node id in g.nodes.
IsingModel spin_glass(const HardwareGraph& g, const PrecisionSpec& spec,
                      std::uint64_t seed);

// --- graph file format -------------------------------------------------
//
//   node i
//   edge i j

void write_graph(const HardwareGraph& g, std::ostream& out);
void write_graph_file(const HardwareGraph& g, const std::string& path);
HardwareGraph read_graph(std::istream& in);
HardwareGraph read_graph_file(const std::string& path);

}  // namespace annealforge
