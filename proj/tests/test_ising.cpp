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

#include "annealforge/ising.hpp"
#include "test_util.hpp"

using namespace annealforge;
using namespace aftest;

TEST_SUITE_BEGIN("ising");

TEST_CASE("energy of a single coupler") {
  IsingModel model(2);
  model.add_coupler(0, 1, 1.0);
  CHECK(energy(model, {1, 1}) == 1.0);
  CHECK(energy(model, {1, -1}) == -1.0);
}

TEST_CASE("energy of a single field") {
  IsingModel model(1);
  model.add_field(0, -1.0);
  CHECK(energy(model, {1}) == -1.0);
  CHECK(energy(model, {-1}) == 1.0);
}

TEST_CASE("energy matches an independent evaluator on all assignments") {
  const IsingModel model = random_spin_model(4, 0.8, 1.0, 1.0, 7);
  for (const auto& a : all_assignments(4, Domain::Spin)) {
    CHECK(energy(model, a) == doctest::Approx(dense_energy(model, a)).epsilon(1e-14));
  }
}

TEST_CASE("assignment validation") {
  IsingModel model(3);
  model.add_coupler(0, 1, 1.0);
  CHECK_THROWS_AS(energy(model, {1, 1}), InvalidAssignment);
  CHECK_THROWS_AS(energy(model, {1, 0, 1}), InvalidAssignment);
  IsingModel qubo(2, Domain::Binary);
  qubo.add_field(0, 1.0);
  CHECK_THROWS_AS(energy(qubo, {-1, 1}), InvalidAssignment);
}

TEST_CASE("duplicate and reversed coupler keys accumulate") {
  IsingModel model(2);
  model.add_coupler(0, 1, 0.5);
  model.add_coupler(1, 0, 0.25);
  REQUIRE(model.quadratic().size() == 1);
  CHECK(model.quadratic().at({0, 1}) == 0.75);
  CHECK_THROWS_AS(model.add_coupler(1, 1, 1.0), Error);
}

TEST_CASE("one-variable binary-to-spin conversion preserves energies") {
  IsingModel qubo(1, Domain::Binary);
  qubo.add_field(0, -1.0);
  const IsingModel spin = convert(qubo, Domain::Spin);
  CHECK(energy(qubo, {0}) == doctest::Approx(energy(spin, {-1})));
  CHECK(energy(qubo, {1}) == doctest::Approx(energy(spin, {1})));
}

TEST_CASE("conversion to the same domain is an unchanged copy") {
  IsingModel model = random_spin_model(4, 0.5, 1.0, 1.0, 11);
  const IsingModel copy = convert(model, Domain::Spin);
  CHECK(copy.linear() == model.linear());
  CHECK(copy.quadratic() == model.quadratic());
  CHECK(copy.offset() == model.offset());
}

TEST_CASE("random QUBO conversion preserves all 32 energies") {
  Rng rng(23);
  IsingModel qubo(5, Domain::Binary);
  for (int i = 0; i < 5; ++i) {
    qubo.add_field(i, rng.uniform(-2.0, 2.0));
    for (int j = i + 1; j < 5; ++j) {
      qubo.add_coupler(i, j, rng.uniform(-2.0, 2.0));
    }
  }
  const IsingModel spin = convert(qubo, Domain::Spin);
  for (const auto& b : all_assignments(5, Domain::Binary)) {
    const Assignment x = convert_assignment(b, Domain::Binary, Domain::Spin);
    CHECK(energy(qubo, b) == doctest::Approx(energy(spin, x)).epsilon(1e-12));
  }
}

TEST_CASE("round-trip conversion reproduces energies exactly") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const IsingModel model = random_spin_model(8, 0.5, 1.0, 1.0, 100 + seed);
    const IsingModel back =
        convert(convert(model, Domain::Binary), Domain::Spin);
    for (const auto& x : all_assignments(8, Domain::Spin)) {
      CHECK(energy(model, x) == doctest::Approx(energy(back, x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("autoscale divides by a single uniform factor") {
  SUBCASE("single large coupler") {
    IsingModel model(2);
    model.add_coupler(0, 1, 4.0);
    const auto scaled = autoscale(model, 2.0);
    CHECK(scaled.scale == 4.0);
    CHECK(scaled.model.quadratic().at({0, 1}) == 1.0);
  }
  SUBCASE("already in range") {
    IsingModel model(2);
    model.add_coupler(0, 1, 0.5);
    model.add_field(0, 0.25);
    const auto scaled = autoscale(model, 2.0);
    CHECK(scaled.scale == 1.0);
    CHECK(scaled.model.quadratic().at({0, 1}) == 0.5);
    CHECK(scaled.model.linear()[0] == 0.25);
  }
  SUBCASE("all-zero model") {
    IsingModel model(3);
    const auto scaled = autoscale(model, 2.0);
    CHECK(scaled.scale == 1.0);
  }
  SUBCASE("field range binds") {
    IsingModel model(2);
    model.add_field(0, 6.0);
    model.add_coupler(0, 1, 1.0);
    const auto scaled = autoscale(model, 2.0);
    CHECK(scaled.scale == 3.0);
    CHECK(scaled.model.linear()[0] == 2.0);
  }
}

TEST_CASE("autoscale keeps the argmin set") {
  const IsingModel model = random_spin_model(10, 0.4, 2.5, 3.0, 31);
  const auto scaled = autoscale(model, 2.0);
  const auto before = brute_force(model);
  const auto after = brute_force(scaled.model);
  CHECK(before.ground_states == after.ground_states);
  CHECK(scaled.model.max_abs_coupler() <= 1.0 + 1e-12);
  CHECK(scaled.model.max_abs_linear() <= 2.0 + 1e-12);
}

TEST_CASE("brute force on the ferromagnetic chain") {
  IsingModel model(5);
  for (int i = 0; i + 1 < 5; ++i) {
    model.add_coupler(i, i + 1, -1.0);
  }
  const auto result = brute_force(model);
  CHECK(result.min_energy == -4.0);
  REQUIRE(result.ground_states.size() == 2);
  CHECK(result.ground_states.front() == Assignment{-1, -1, -1, -1, -1});
  CHECK(result.ground_states.back() == Assignment{1, 1, 1, 1, 1});
}

TEST_CASE("brute force on a single spin") {
  IsingModel model(1);
  model.add_field(0, -1.0);
  const auto result = brute_force(model);
  CHECK(result.min_energy == -1.0);
  REQUIRE(result.ground_states.size() == 1);
  CHECK(result.ground_states.front() == Assignment{1});
}

TEST_CASE("brute force agrees with a second enumeration order") {
  const IsingModel model = random_spin_model(10, 0.5, 1.0, 1.0, 3);
  const auto result = brute_force(model);
  // oracle: walk the assignments in reverse counting order
  double min_energy = 0.0;
  bool first = true;
  const auto assignments = all_assignments(10, Domain::Spin);
  for (auto it = assignments.rbegin(); it != assignments.rend(); ++it) {
    const double e = dense_energy(model, *it);
    if (first || e < min_energy) {
      min_energy = e;
      first = false;
    }
  }
  CHECK(result.min_energy == doctest::Approx(min_energy).epsilon(1e-14));
}

TEST_CASE("brute force rejects models over the cap") {
  IsingModel model(25);
  CHECK_THROWS_AS(brute_force(model), TooLarge);
  CHECK_THROWS_AS(brute_force(random_spin_model(8, 0.5, 1, 1, 1), 6), TooLarge);
}

TEST_CASE("global spin-flip symmetry for linear-free models") {
  const IsingModel model = random_spin_model(8, 0.6, 0.0, 1.0, 17);
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Assignment x = random_spins(8, rng.next_u64());
    Assignment flipped = x;
    for (auto& v : flipped) v = -v;
    CHECK(energy(model, x) == energy(model, flipped));
  }
}

TEST_CASE("energy is linear in the coefficients") {
  const IsingModel model = random_spin_model(6, 0.7, 1.0, 1.0, 41);
  IsingModel doubled(6);
  for (int i = 0; i < 6; ++i) {
    doubled.add_field(i, 2.0 * model.linear()[static_cast<size_t>(i)]);
  }
  for (const auto& [key, v] : model.quadratic()) {
    doubled.add_coupler(key.first, key.second, 2.0 * v);
  }
  doubled.set_offset(model.offset());
  for (const auto& x : all_assignments(6, Domain::Spin)) {
    const double base = energy(model, x) - model.offset();
    CHECK(energy(doubled, x) - doubled.offset() ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
  }
}

TEST_CASE("brute-force minimum bounds sampled energies") {
  const IsingModel model = random_spin_model(9, 0.5, 1.0, 1.0, 53);
  const auto result = brute_force(model);
  for (int trial = 0; trial < 200; ++trial) {
    CHECK(result.min_energy <= energy(model, random_spins(9, 1000 + trial)));
  }
}

TEST_CASE("sample sets aggregate, sort and break ties by first read") {
  IsingModel model(2);
  model.add_coupler(0, 1, 1.0);  // (1,-1) and (-1,1) tie at -1
  const std::vector<Assignment> reads = {
      {1, 1}, {-1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const SampleSet set = SampleSet::from_reads(model, reads, 77);
  REQUIRE(set.records().size() == 4);
  CHECK(set.total_reads() == 5);
  CHECK(set.rng_seed() == 77);
  // the -1 tie resolves to the read that appeared first
  CHECK(set.best().state == Assignment{-1, 1});
  CHECK(set.best().num_occurrences == 2);
  CHECK(set.records()[1].state == Assignment{1, -1});
  for (size_t i = 1; i < set.records().size(); ++i) {
    CHECK(set.records()[i - 1].energy <= set.records()[i].energy);
  }
  for (const auto& rec : set.records()) {
    CHECK(rec.energy == energy(model, rec.state));
  }
}

TEST_CASE("problem files round-trip") {
  IsingModel model = random_spin_model(6, 0.5, 1.0, 1.0, 67);
  model.set_offset(1.25);
  std::stringstream buffer;
  write_problem(model, buffer);
  const IsingModel back = read_problem(buffer);
  CHECK(back.num_vars() == model.num_vars());
  CHECK(back.domain() == model.domain());
  CHECK(back.offset() == model.offset());
  CHECK(back.linear() == model.linear());
  CHECK(back.quadratic() == model.quadratic());
}

TEST_CASE("problem files reject malformed input") {
  {
    std::stringstream in("h 0 1\n");
    CHECK_THROWS_AS(read_problem(in), IoError);
  }
  {
    std::stringstream in("vars 3 domain qubit\n");
    CHECK_THROWS_AS(read_problem(in), IoError);
  }
  {
    std::stringstream in("vars 2 domain spin\nJ 0 abc 1\n");
    CHECK_THROWS_AS(read_problem(in), IoError);
  }
  {
    std::stringstream in("vars 2 domain spin\nh 5 1\n");
    CHECK_THROWS_AS(read_problem(in), Error);
  }
}

TEST_SUITE_END();
