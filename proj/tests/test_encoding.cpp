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

#include "annealforge/encoding.hpp"
#include "test_util.hpp"

using namespace annealforge;
using namespace aftest;

namespace {

Assignment with_slack(Assignment x, int z) {
  x.push_back(z);
  return x;
}

}  // namespace

TEST_SUITE_BEGIN("encoding");

TEST_CASE("homogenize passes linear-free models through") {
  const IsingModel model = random_spin_model(6, 0.5, 0.0, 1.0, 5);
  const auto result = homogenize(model);
  CHECK(!result.slack_index.has_value());
  CHECK(result.model.quadratic() == model.quadratic());
  CHECK(result.model.num_vars() == model.num_vars());
}

TEST_CASE("homogenize turns a field into a slack coupler") {
  IsingModel model(1);
  model.add_field(0, 2.0);
  const auto result = homogenize(model);
  REQUIRE(result.slack_index == 1);
  CHECK(result.model.num_vars() == 2);
  CHECK(!result.model.has_linear_terms());
  CHECK(result.model.quadratic().at({0, 1}) == 2.0);
  CHECK(energy(result.model, {1, 1}) == 2.0);
}

TEST_CASE("homogenized model recovers the original at z=+1") {
  const IsingModel model = random_spin_model(8, 0.5, 1.0, 1.0, 19);
  const auto result = homogenize(model);
  REQUIRE(result.slack_index == 8);
  for (const auto& x : all_assignments(8, Domain::Spin)) {
    CHECK(energy(result.model, with_slack(x, 1)) ==
          doctest::Approx(energy(model, x)).epsilon(1e-14));
  }
}

TEST_CASE("homogenized model has global flip symmetry") {
  const IsingModel model = random_spin_model(8, 0.5, 1.0, 1.0, 20);
  const auto result = homogenize(model);
  for (const auto& x : all_assignments(8, Domain::Spin)) {
    for (int z : {-1, 1}) {
      Assignment flipped(x.size());
      for (size_t i = 0; i < x.size(); ++i) flipped[i] = -x[i];
      CHECK(energy(result.model, with_slack(x, z)) ==
            energy(result.model, with_slack(flipped, -z)));
    }
  }
}

TEST_CASE("bias term points at the initial state") {
  SUBCASE("all up") {
    const auto h = bias_term(InitialState{{1, 1, 1}});
    CHECK(h == std::vector<double>{-1.0, -1.0, -1.0});
  }
  SUBCASE("single down spin") {
    const auto h = bias_term(InitialState{{-1}});
    CHECK(h == std::vector<double>{1.0});
  }
  SUBCASE("argmin over all assignments is x0, uniquely, with value -n") {
    Rng rng(71);
    for (int trial = 0; trial < 10; ++trial) {
      const Assignment x0 = random_spins(10, rng.next_u64());
      const auto h = bias_term(InitialState{x0});
      double best = 1e300;
      Assignment argmin;
      int ties = 0;
      for (const auto& x : all_assignments(10, Domain::Spin)) {
        double e = 0.0;
        for (size_t i = 0; i < h.size(); ++i) e += h[i] * x[i];
        if (e < best) {
          best = e;
          argmin = x;
          ties = 1;
        } else if (e == best) {
          ++ties;
        }
      }
      CHECK(best == -10.0);
      CHECK(ties == 1);
      CHECK(argmin == x0);
    }
  }
  CHECK_THROWS_AS(bias_term(InitialState{{1, 0}}), InvalidAssignment);
}

TEST_CASE("encode with zero scales reproduces the problem") {
  const IsingModel model = random_spin_model(6, 0.5, 0.0, 1.0, 33);
  const Assignment x0 = random_spins(6, 2);
  const EncodedProblem encoded = encode(model, InitialState{x0}, 0.0, 0.0);
  CHECK(!encoded.slack_index.has_value());
  CHECK(encoded.alpha2 == 0.0);
  for (const auto& x : all_assignments(6, Domain::Spin)) {
    CHECK(energy(encoded.model, x) == energy(model, x));
  }
}

TEST_CASE("encode adds exactly the scaled bias and slack field") {
  const IsingModel model = random_spin_model(5, 0.6, 1.0, 1.0, 44);
  const Assignment x0 = random_spins(5, 3);
  const EncodedProblem encoded =
      encode(model, InitialState{x0}, 0.41, 0.25, "inst");
  REQUIRE(encoded.slack_index == 5);
  CHECK(encoded.source_id == "inst");
  for (int i = 0; i < 5; ++i) {
    CHECK(encoded.model.linear()[static_cast<size_t>(i)] ==
          doctest::Approx(-0.41 * x0[static_cast<size_t>(i)]));
  }
  CHECK(encoded.model.linear()[5] == -0.25);
  // homogenized couplers carry the original fields
  for (int i = 0; i < 5; ++i) {
    const double h = model.linear()[static_cast<size_t>(i)];
    if (h != 0.0) {
      CHECK(encoded.model.quadratic().at({i, 5}) == h);
    }
  }
  CHECK_THROWS_AS(encode(model, InitialState{x0}, -0.1, 0.0), InvalidScale);
  CHECK_THROWS_AS(encode(model, InitialState{x0}, 0.1, -1.0), InvalidScale);
  CHECK_THROWS_AS(encode(model, InitialState{{1}}, 0.1, 0.0),
                  InvalidAssignment);
}

TEST_CASE("encode on a quadratic-only model omits alpha2 and slack") {
  const IsingModel model = random_spin_model(5, 0.6, 0.0, 1.0, 45);
  const EncodedProblem encoded =
      encode(model, InitialState{random_spins(5, 4)}, 0.3, 0.9);
  CHECK(!encoded.slack_index.has_value());
  CHECK(encoded.alpha2 == 0.0);
  CHECK(encoded.model.num_vars() == 5);
}

TEST_CASE("a dominant bias plants the initial state as the argmin") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const IsingModel model = random_discrete_glass(12, 0.5, 10, seed);
    const Assignment x0 = random_spins(12, seed + 100);
    const double alpha1 = model.max_row_coupler_norm() + 0.5;
    const EncodedProblem encoded = encode(model, InitialState{x0}, alpha1, 0.0);
    const auto result = brute_force(encoded.model);
    REQUIRE(result.ground_states.size() == 1);
    CHECK(result.ground_states.front() == x0);
  }
}

TEST_CASE("filter_slack keeps z=+1, drops the column, re-derives energies") {
  IsingModel original(2);
  original.add_field(0, 1.0);
  original.add_coupler(0, 1, -1.0);
  const auto hom = homogenize(original);
  REQUIRE(hom.slack_index == 2);

  SUBCASE("all retained") {
    const SampleSet samples = SampleSet::from_reads(
        hom.model, {{1, 1, 1}, {-1, 1, 1}, {1, 1, 1}}, 5);
    const auto filtered = filter_slack(samples, 2, original);
    CHECK(!filtered.all_filtered);
    CHECK(filtered.samples.total_reads() == 3);
    for (const auto& rec : filtered.samples.records()) {
      CHECK(rec.state.size() == 2);
      CHECK(rec.energy == energy(original, rec.state));
    }
  }
  SUBCASE("all filtered away") {
    const SampleSet samples =
        SampleSet::from_reads(hom.model, {{1, 1, -1}, {-1, -1, -1}}, 5);
    const auto filtered = filter_slack(samples, 2, original);
    CHECK(filtered.all_filtered);
    CHECK(filtered.samples.empty());
  }
  SUBCASE("mixed batch recount") {
    std::vector<Assignment> reads;
    Rng rng(8);
    int expected = 0;
    for (int r = 0; r < 40; ++r) {
      const int z = rng.bernoulli(0.5) ? 1 : -1;
      expected += z == 1 ? 1 : 0;
      reads.push_back({rng.bernoulli(0.5) ? 1 : -1,
                       rng.bernoulli(0.5) ? 1 : -1, z});
    }
    const auto filtered =
        filter_slack(SampleSet::from_reads(hom.model, reads, 5), 2, original);
    CHECK(filtered.samples.total_reads() == expected);
  }
}

TEST_CASE("encode + slack filter is the identity on energies") {
  const IsingModel model = random_spin_model(6, 0.5, 1.0, 1.0, 59);
  const Assignment x0 = random_spins(6, 6);
  const EncodedProblem encoded = encode(model, InitialState{x0}, 0.0, 0.0);
  REQUIRE(encoded.slack_index.has_value());

  std::vector<Assignment> reads;
  for (const auto& x : all_assignments(6, Domain::Spin)) {
    reads.push_back(with_slack(x, 1));
  }
  const SampleSet samples = SampleSet::from_reads(encoded.model, reads, 1);
  const auto filtered = filter_slack(samples, *encoded.slack_index, model);
  REQUIRE(filtered.samples.records().size() == 64);
  for (const auto& rec : filtered.samples.records()) {
    CHECK(rec.energy == energy(model, rec.state));
  }
}

TEST_SUITE_END();
