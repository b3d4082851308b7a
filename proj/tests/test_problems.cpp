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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "annealforge/problems.hpp"
#include "test_util.hpp"

using namespace annealforge;
using namespace aftest;

namespace {

WeightedGraph unit_triangle() {
  WeightedGraph g;
  g.n = 3;
  g.edges[{0, 1}] = 1.0;
  g.edges[{0, 2}] = 1.0;
  g.edges[{1, 2}] = 1.0;
  auto& w = g.vertex_weights.emplace();
  w[0] = w[1] = w[2] = 1.0;
  return g;
}

/// Exhaustive maximum-weight clique over all vertex subsets.
double best_clique_weight(const WeightedGraph& g) {
  double best = 0.0;  // the empty clique
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.n); ++mask) {
    Assignment pick(static_cast<size_t>(g.n), 0);
    for (int i = 0; i < g.n; ++i) {
      pick[static_cast<size_t>(i)] = (mask >> i) & 1u ? 1 : 0;
    }
    if (const auto w = score_clique(g, pick)) {
      best = std::max(best, *w);
    }
  }
  return best;
}

struct StubSampler : Sampler {
  Assignment fixed;
  SampleSet sample(const IsingModel& model, int num_reads, double,
                   std::uint64_t seed) override {
    return SampleSet::from_reads(
        model, std::vector<Assignment>(static_cast<size_t>(num_reads), fixed),
        seed);
  }
};

}  // namespace

TEST_SUITE_BEGIN("problems");

TEST_CASE("erdos_renyi edge probability extremes") {
  CHECK(erdos_renyi(10, 0.0, 1).edges.empty());
  CHECK(erdos_renyi(65, 1.0, 1).edges.size() == 2080);
  CHECK_THROWS_AS(erdos_renyi(5, 1.5, 1), Error);
}

TEST_CASE("erdos_renyi mean edge count is binomial to 5 sigma") {
  const int trials = 200;
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    total += static_cast<double>(erdos_renyi(65, 0.5, 9000 + t).edges.size());
  }
  const double mean = total / trials;
  const double sigma_mean = std::sqrt(2080.0 * 0.25 / trials);
  CHECK(std::abs(mean - 1040.0) <= 5.0 * sigma_mean);
}

TEST_CASE("erdos_renyi draws weights in the requested ranges") {
  const WeightedGraph g = erdos_renyi(65, 0.5, 7);
  for (const auto& [key, w] : g.edges) {
    CHECK(w > -1.0);
    CHECK(w < 1.0);
  }
  REQUIRE(g.vertex_weights.has_value());
  for (const auto& [v, w] : *g.vertex_weights) {
    CHECK(w > 0.001);
    CHECK(w < 1.0);
  }
  const WeightedGraph same = erdos_renyi(65, 0.5, 7);
  CHECK(same.edges == g.edges);
}

TEST_CASE("max cut on a single edge") {
  WeightedGraph g;
  g.n = 2;
  g.edges[{0, 1}] = 1.0;
  const IsingModel model = max_cut_ising(g);
  CHECK(!model.has_linear_terms());
  const auto result = brute_force(model);
  CHECK(result.min_energy == -1.0);
  CHECK(score_cut(g, result.ground_states.front()) == 1.0);
}

TEST_CASE("max cut on the unit triangle") {
  const WeightedGraph g = unit_triangle();
  const auto result = brute_force(max_cut_ising(g));
  CHECK(result.min_energy == -1.0);
  for (const auto& state : result.ground_states) {
    CHECK(score_cut(g, state) == 2.0);
  }
}

TEST_CASE("cut identity and argmin/argmax equivalence, exhaustive") {
  const WeightedGraph g = erdos_renyi(12, 0.5, 21);
  const IsingModel model = max_cut_ising(g);
  const double total_weight = g.total_edge_weight();

  double best_cut = 0.0;
  for (const auto& x : all_assignments(12, Domain::Spin)) {
    // Q_cut(x) + 2 cut(x) = W, exactly
    CHECK(energy(model, x) + 2.0 * score_cut(g, x) ==
          doctest::Approx(total_weight).epsilon(1e-12));
    best_cut = std::max(best_cut, score_cut(g, x));
  }
  const auto result = brute_force(model);
  for (const auto& state : result.ground_states) {
    CHECK(score_cut(g, state) == doctest::Approx(best_cut).epsilon(1e-12));
  }
}

TEST_CASE("max clique QUBO on the unit triangle selects everything") {
  const WeightedGraph g = unit_triangle();
  const IsingModel spin = max_clique_ising(g);
  const auto result = brute_force(spin);
  CHECK(result.min_energy == doctest::Approx(-3.0));
  REQUIRE(result.ground_states.size() == 1);
  CHECK(result.ground_states.front() == Assignment{1, 1, 1});
}

TEST_CASE("max clique QUBO on two isolated vertices picks one") {
  WeightedGraph g;
  g.n = 2;
  auto& w = g.vertex_weights.emplace();
  w[0] = w[1] = 1.0;
  const auto result = brute_force(max_clique_ising(g));
  CHECK(result.min_energy == doctest::Approx(-1.0));
  for (const auto& state : result.ground_states) {
    CHECK(std::count(state.begin(), state.end(), 1) == 1);
  }
}

TEST_CASE("max clique QUBO argmin is a maximum-weight clique") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const WeightedGraph g = erdos_renyi(12, 0.5, seed);
    const IsingModel spin = max_clique_ising(g);
    const auto result = brute_force(spin);
    const double best = best_clique_weight(g);
    for (const auto& state : result.ground_states) {
      const auto w = score_clique(g, state);
      REQUIRE(w.has_value());
      CHECK(*w == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("max clique rejects missing or nonpositive weights") {
  WeightedGraph g;
  g.n = 2;
  CHECK_THROWS_AS(max_clique_ising(g), InvalidWeight);
  auto& w = g.vertex_weights.emplace();
  w[0] = 1.0;
  w[1] = -0.5;
  CHECK_THROWS_AS(max_clique_ising(g), InvalidWeight);
}

TEST_CASE("scoring edge cases") {
  const WeightedGraph g = unit_triangle();
  CHECK(score_cut(g, {1, 1, 1}) == 0.0);
  CHECK(score_cut(g, {1, -1, -1}) == 2.0);
  CHECK(score_clique(g, {1, 1, 0}).value() == 2.0);
  CHECK(score_clique(g, {0, 0, 0}).value() == 0.0);

  WeightedGraph sparse;
  sparse.n = 3;
  sparse.edges[{0, 1}] = 1.0;
  auto& w = sparse.vertex_weights.emplace();
  w[0] = w[1] = w[2] = 1.0;
  CHECK(!score_clique(sparse, {1, 0, 1}).has_value());
}

TEST_CASE("cut scoring is invariant under side relabeling") {
  const WeightedGraph g = erdos_renyi(10, 0.6, 77);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Assignment x = random_spins(10, rng.next_u64());
    Assignment flipped = x;
    for (auto& v : flipped) v = -v;
    CHECK(score_cut(g, x) == score_cut(g, flipped));
  }
}

TEST_CASE("baseline takes the best-energy sample") {
  WeightedGraph g;
  g.n = 2;
  g.edges[{0, 1}] = 1.0;
  const IsingModel model = max_cut_ising(g);
  StubSampler sampler;
  sampler.fixed = {1, -1};
  const Baseline baseline = compute_baseline(
      "stub", model, sampler,
      [&](const Assignment& a) { return std::optional<double>(score_cut(g, a)); },
      1, 100, 1.0);
  CHECK(baseline.problem_id == "stub");
  CHECK(baseline.best_value == 1.0);
  CHECK(baseline.best_energy == -1.0);
  CHECK(baseline.num_anneals == 100);
  CHECK(baseline.anneal_time_us == 1.0);
}

TEST_CASE("weighted graph files round-trip") {
  const WeightedGraph g = erdos_renyi(8, 0.5, 13);
  std::stringstream buffer;
  write_weighted_graph(g, buffer);
  const WeightedGraph back = read_weighted_graph(buffer);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.vertex_weights == g.vertex_weights);
}

TEST_SUITE_END();
