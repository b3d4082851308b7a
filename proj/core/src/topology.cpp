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

#include "annealforge/topology.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "annealforge/rng.hpp"

namespace annealforge {

namespace {

// Canonical Pegasus shore offsets: o_vertical[k] shifts the extent of
// vertical wires, o_horizontal[k] of horizontal ones.
constexpr std::array<int, 12> kPegasusOffset[2] = {
    {2, 2, 2, 2, 6, 6, 6, 6, 10, 10, 10, 10},
    {6, 6, 2, 2, 2, 2, 10, 10, 6, 6, 10, 10}};

void add_edge(std::vector<std::pair<int, int>>& edges, int a, int b) {
  if (a > b) std::swap(a, b);
  edges.emplace_back(a, b);
}

void finalize_edges(std::vector<std::pair<int, int>>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

}  // namespace

int HardwareGraph::max_degree() const {
  std::map<int, int> deg;
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  int m = 0;
  for (const auto& [node, d] : deg) m = std::max(m, d);
  return m;
}

int chimera_index(int m, int row, int col, int u, int k) {
  return ((row * m + col) * 2 + u) * 4 + k;
}

HardwareGraph chimera(int m) {
  if (m < 1) {
    throw Error("chimera: m must be >= 1");
  }
  HardwareGraph g;
  g.topology = Topology::Chimera;
  g.m = m;
  g.nodes.resize(static_cast<size_t>(8 * m * m));
  for (int i = 0; i < 8 * m * m; ++i) g.nodes[static_cast<size_t>(i)] = i;
  for (int row = 0; row < m; ++row) {
    for (int col = 0; col < m; ++col) {
      // complete bipartite cell
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          add_edge(g.edges, chimera_index(m, row, col, 0, a),
                   chimera_index(m, row, col, 1, b));
        }
      }
      // vertical shore couples to the cell below, horizontal to the right
      for (int k = 0; k < 4; ++k) {
        if (row + 1 < m) {
          add_edge(g.edges, chimera_index(m, row, col, 0, k),
                   chimera_index(m, row + 1, col, 0, k));
        }
        if (col + 1 < m) {
          add_edge(g.edges, chimera_index(m, row, col, 1, k),
                   chimera_index(m, row, col + 1, 1, k));
        }
      }
    }
  }
  finalize_edges(g.edges);
  return g;
}

int pegasus_index(int m, int u, int w, int k, int z) {
  return z + (m - 1) * (k + 12 * (w + m * u));
}

HardwareGraph pegasus(int m, bool trim_to_fabric) {
  if (m < 2) {
    throw Error("pegasus: m must be >= 2");
  }
  HardwareGraph g;
  g.topology = Topology::Pegasus;
  g.m = m;

  // Internal couplers: a vertical wire (0, w, k, z) crosses exactly one
  // horizontal wire per k'; the perpendicular tile follows from whether
  // the crossing falls before or after the wire's offset.
  std::vector<std::pair<int, int>> internal;
  std::vector<int> internal_degree(static_cast<size_t>(24 * m * (m - 1)), 0);
  for (int w = 0; w < m; ++w) {
    for (int k = 0; k < 12; ++k) {
      for (int z = 0; z < m - 1; ++z) {
        for (int kk = 0; kk < 12; ++kk) {
          const int ww = z + (kk < kPegasusOffset[0][static_cast<size_t>(k)] ? 1 : 0);
          const int zz = w - (k < kPegasusOffset[1][static_cast<size_t>(kk)] ? 1 : 0);
          if (ww < 0 || ww >= m || zz < 0 || zz > m - 2) continue;
          const int a = pegasus_index(m, 0, w, k, z);
          const int b = pegasus_index(m, 1, ww, kk, zz);
          add_edge(internal, a, b);
          ++internal_degree[static_cast<size_t>(a)];
          ++internal_degree[static_cast<size_t>(b)];
        }
      }
    }
  }

  std::vector<char> keep(static_cast<size_t>(24 * m * (m - 1)), 1);
  if (trim_to_fabric) {
    for (size_t i = 0; i < keep.size(); ++i) {
      keep[i] = internal_degree[i] > 0 ? 1 : 0;
    }
  }

  for (int u = 0; u < 2; ++u) {
    for (int w = 0; w < m; ++w) {
      for (int k = 0; k < 12; ++k) {
        for (int z = 0; z < m - 1; ++z) {
          const int id = pegasus_index(m, u, w, k, z);
          if (!keep[static_cast<size_t>(id)]) continue;
          g.nodes.push_back(id);
          // external: same wire, next parallel tile
          if (z + 1 < m - 1) {
            const int next = pegasus_index(m, u, w, k, z + 1);
            if (keep[static_cast<size_t>(next)]) add_edge(g.edges, id, next);
          }
          // odd: the even/odd partner within the same shore
          if (k % 2 == 0) {
            const int partner = pegasus_index(m, u, w, k + 1, z);
            if (keep[static_cast<size_t>(partner)]) add_edge(g.edges, id, partner);
          }
        }
      }
    }
  }
  for (const auto& [a, b] : internal) {
    if (keep[static_cast<size_t>(a)] && keep[static_cast<size_t>(b)]) {
      add_edge(g.edges, a, b);
    }
  }
  std::sort(g.nodes.begin(), g.nodes.end());
  finalize_edges(g.edges);
  return g;
}

HardwareGraph inject_defects(const HardwareGraph& g, int n_nodes, int n_edges,
                             std::uint64_t seed) {
  if (n_nodes < 0 || n_edges < 0) {
    throw InvalidDefectCount("inject_defects: negative defect count");
  }
  if (n_nodes > g.num_nodes()) {
    throw InvalidDefectCount("inject_defects: cannot remove " +
                             std::to_string(n_nodes) + " of " +
                             std::to_string(g.num_nodes()) + " nodes");
  }
  Rng rng(seed);
  HardwareGraph out = g;
  out.defect_seed = seed;

  // partial Fisher-Yates over the node list
  std::vector<int> pool = g.nodes;
  std::set<int> removed;
  for (int i = 0; i < n_nodes; ++i) {
    const size_t j = static_cast<size_t>(i) +
                     rng.below(pool.size() - static_cast<size_t>(i));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
    removed.insert(pool[static_cast<size_t>(i)]);
  }
  out.nodes.clear();
  for (int id : g.nodes) {
    if (!removed.count(id)) out.nodes.push_back(id);
  }
  out.edges.clear();
  for (const auto& e : g.edges) {
    if (!removed.count(e.first) && !removed.count(e.second)) {
      out.edges.push_back(e);
    }
  }

  if (n_edges > out.num_edges()) {
    throw InvalidDefectCount("inject_defects: cannot remove " +
                             std::to_string(n_edges) + " of " +
                             std::to_string(out.num_edges()) +
                             " remaining edges");
  }
  for (int i = 0; i < n_edges; ++i) {
    const size_t j = static_cast<size_t>(i) +
                     rng.below(out.edges.size() - static_cast<size_t>(i));
    std::swap(out.edges[static_cast<size_t>(i)], out.edges[j]);
  }
  out.edges.erase(out.edges.begin(), out.edges.begin() + n_edges);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<double> PrecisionSpec::weight_set() const {
  if (levels < 2) {
    throw Error("PrecisionSpec: need at least 2 levels");
  }
  if (!(lo < hi)) {
    throw Error("PrecisionSpec: empty range");
  }
  std::vector<double> values(static_cast<size_t>(levels));
  for (int i = 0; i < levels; ++i) {
    values[static_cast<size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(levels - 1);
  }
  if (exclude_zero) {
    for (double v : values) {
      if (v == 0.0) {
        throw Error("PrecisionSpec: linear spacing hits zero; use an even "
                    "level count over a symmetric range");
      }
    }
  }
  return values;
}

IsingModel spin_glass(const HardwareGraph& g, const PrecisionSpec& spec,
                      std::uint64_t seed) {
  const auto weights = spec.weight_set();
  std::map<int, int> index_of;
  for (int i = 0; i < g.num_nodes(); ++i) {
    index_of[g.nodes[static_cast<size_t>(i)]] = i;
  }
  Rng rng(seed);
  IsingModel model(g.num_nodes(), Domain::Spin);
  for (const auto& [a, b] : g.edges) {
    const double w = weights[rng.below(weights.size())];
    model.add_coupler(index_of.at(a), index_of.at(b), w);
  }
  return model;
}

void write_graph(const HardwareGraph& g, std::ostream& out) {
  for (int id : g.nodes) {
    out << "node " << id << "\n";
  }
  for (const auto& [a, b] : g.edges) {
    out << "edge " << a << " " << b << "\n";
  }
}

void write_graph_file(const HardwareGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write graph file: " + path);
  }
  write_graph(g, out);
}

HardwareGraph read_graph(std::istream& in) {
  HardwareGraph g;
  std::string line;
  int line_no = 0;
  std::set<int> nodes;
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
      add_edge(g.edges, a, b);
      nodes.insert(a);
      nodes.insert(b);
    } else if (kind == "w") {
      // vertex weights belong to the problems layer; tolerated here
      continue;
    } else {
      throw IoError("graph file line " + std::to_string(line_no) +
                    ": unrecognized record '" + kind + "'");
    }
  }
  g.nodes.assign(nodes.begin(), nodes.end());
  finalize_edges(g.edges);
  return g;
}

HardwareGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open graph file: " + path);
  }
  return read_graph(in);
}

}  // namespace annealforge
