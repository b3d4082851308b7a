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
#include <vector>

#include "annealforge/ising.hpp"
#include "annealforge/rng.hpp"

namespace aftest {

using annealforge::Assignment;
using annealforge::Domain;
using annealforge::IsingModel;
using annealforge::Rng;

/// Random spin model: each pair is a coupler with probability p_edge,
/// values uniform in [-j_scale, j_scale]; fields uniform in
/// [-h_scale, h_scale] (h_scale 0 leaves the model linear-free).
inline IsingModel random_spin_model(int n, double p_edge, double h_scale,
                                    double j_scale, std::uint64_t seed) {
  Rng rng(seed);
  IsingModel model(n, Domain::Spin);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p_edge) {
        model.add_coupler(i, j, rng.uniform(-j_scale, j_scale));
      }
    }
  }
  if (h_scale > 0.0) {
    for (int i = 0; i < n; ++i) {
      model.add_field(i, rng.uniform(-h_scale, h_scale));
    }
  }
  return model;
}

/// Spin glass on an Erdos-Renyi topology with couplers drawn from a
/// discrete linearly spaced level set, no linear terms.
inline IsingModel random_discrete_glass(int n, double p_edge, int levels,
                                        std::uint64_t seed) {
  Rng rng(seed);
  IsingModel model(n, Domain::Spin);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p_edge) {
        const int idx = rng.pick_index(levels);
        model.add_coupler(i, j, -1.0 + 2.0 * idx / (levels - 1.0));
      }
    }
  }
  return model;
}

/// All 2^n assignments of a model's domain in counting order.
inline std::vector<Assignment> all_assignments(int n, Domain domain) {
  const int lo = domain == Domain::Spin ? -1 : 0;
  std::vector<Assignment> out;
  out.reserve(static_cast<size_t>(1) << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Assignment a(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      a[static_cast<size_t>(i)] = ((mask >> i) & 1u) ? 1 : lo;
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// Independent energy oracle: dense-matrix accumulation in the opposite
/// pair order from the library implementation.
inline double dense_energy(const IsingModel& model, const Assignment& a) {
  const int n = model.num_vars();
  std::vector<std::vector<double>> matrix(
      static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (const auto& [key, v] : model.quadratic()) {
    matrix[static_cast<size_t>(key.second)][static_cast<size_t>(key.first)] = v;
  }
  double e = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    for (int j = n - 1; j > i; --j) {
      e += matrix[static_cast<size_t>(j)][static_cast<size_t>(i)] *
           a[static_cast<size_t>(i)] * a[static_cast<size_t>(j)];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    e += model.linear()[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
  }
  return e + model.offset();
}

inline Assignment random_spins(int n, std::uint64_t seed) {
  Rng rng(seed);
  Assignment a(static_cast<size_t>(n));
  for (auto& v : a) v = rng.bernoulli(0.5) ? 1 : -1;
  return a;
}

/// Greedy single-flip descent to a local minimum; the usual stand-in
/// for a "good but not optimal" solution.
inline Assignment greedy_descent(const IsingModel& model, Assignment a) {
  bool improved = true;
  while (improved) {
    improved = false;
    double current = energy(model, a);
    for (int i = 0; i < model.num_vars(); ++i) {
      a[static_cast<size_t>(i)] = -a[static_cast<size_t>(i)];
      const double flipped = energy(model, a);
      if (flipped < current) {
        current = flipped;
        improved = true;
      } else {
        a[static_cast<size_t>(i)] = -a[static_cast<size_t>(i)];
      }
    }
  }
  return a;
}

}  // namespace aftest
