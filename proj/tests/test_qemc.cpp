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

#include <sstream>

#include "annealforge/qemc.hpp"
#include "test_util.hpp"

using namespace annealforge;
using namespace aftest;

namespace {

SimParams fast_sim(std::uint64_t seed) {
  SimParams params;
  params.rng_seed = seed;
  return params;
}

QemcConfig small_config(SeedingMethod method) {
  QemcConfig config;
  config.method = method;
  config.iterations = 5;
  config.reads_per_iter = 60;
  config.anneal_time_us = 40.0;
  return config;
}

}  // namespace

TEST_SUITE_BEGIN("qemc");

TEST_CASE("schedules per method have the protocol shapes") {
  QemcConfig config;
  config.anneal_time_us = 100.0;
  config.s_pause = 0.45;
  config.h_mid = 1.5;
  config.g0 = 2.0;
  config.t_hg_zero_us = 10.0;

  SUBCASE("ra: pause between the 10us ramps") {
    config.method = SeedingMethod::RA;
    const QemcSchedules s = build_schedules(config);
    CHECK(s.anneal.kind() == AnnealKind::Reverse);
    CHECK(s.anneal.s(10.0) == 0.45);
    CHECK(s.anneal.s(90.0) == 0.45);
    CHECK(!s.hgain.has_value());
  }
  SUBCASE("hg: plain forward anneal, gain zero from t_hg_zero on") {
    config.method = SeedingMethod::HG;
    const QemcSchedules s = build_schedules(config);
    CHECK(s.anneal.kind() == AnnealKind::Forward);
    REQUIRE(s.hgain.has_value());
    CHECK(s.hgain->g(0.0) == 2.0);
    CHECK(s.hgain->g(10.0) == 0.0);
    CHECK(s.hgain->g(55.0) == 0.0);
  }
  SUBCASE("ra_hg: gain reaches zero exactly when the ramp-up begins") {
    config.method = SeedingMethod::RA_HG;
    const QemcSchedules s = build_schedules(config);
    CHECK(s.anneal.kind() == AnnealKind::Reverse);
    REQUIRE(s.hgain.has_value());
    CHECK(s.hgain->g(0.0) == 2.0);
    CHECK(s.hgain->g(10.0) == 1.5);
    CHECK(s.hgain->g(90.0) == 0.0);
    CHECK(s.hgain->g(100.0) == 0.0);
  }
  SUBCASE("fa_pause_hg: same alignment on a forward pause") {
    config.method = SeedingMethod::FA_PAUSE_HG;
    const QemcSchedules s = build_schedules(config);
    CHECK(s.anneal.kind() == AnnealKind::ForwardPause);
    CHECK(s.anneal.s(0.0) == 0.0);
    CHECK(s.anneal.s(50.0) == 0.45);
    REQUIRE(s.hgain.has_value());
    CHECK(s.hgain->g(90.0) == 0.0);
  }
}

TEST_CASE("a single iteration trace carries its own best") {
  const IsingModel glass = random_discrete_glass(10, 0.5, 10, 7);
  QemcConfig config = small_config(SeedingMethod::RA);
  config.iterations = 1;
  const QemcTrace trace =
      run_qemc(glass, config, DeviceProfile::dw2000q(), fast_sim(1),
               EnvelopeCurves::standard(), 42);
  REQUIRE(trace.iterations.size() == 1);
  CHECK(trace.global_best_energy == trace.iterations.front().min_energy);
  CHECK(trace.global_best_state == trace.iterations.front().best_state);
}

TEST_CASE("seed chaining holds exactly for every method") {
  const IsingModel glass = random_discrete_glass(10, 0.5, 10, 11);
  for (const auto method : {SeedingMethod::RA, SeedingMethod::HG,
                            SeedingMethod::RA_HG, SeedingMethod::FA_PAUSE_HG}) {
    CAPTURE(to_string(method));
    const QemcTrace trace =
        run_qemc(glass, small_config(method), DeviceProfile::dw2000q(),
                 fast_sim(2), EnvelopeCurves::standard(), 7);
    REQUIRE(trace.iterations.size() == 5);
    for (size_t k = 1; k < trace.iterations.size(); ++k) {
      CHECK(trace.iterations[k].seed_state ==
            trace.iterations[k - 1].best_state);
    }
    for (const auto& rec : trace.iterations) {
      CHECK(rec.seed_energy == energy(glass, rec.seed_state));
      CHECK(rec.min_energy == energy(glass, rec.best_state));
    }
  }
}

TEST_CASE("the global best series is monotone non-increasing") {
  const IsingModel glass = random_discrete_glass(12, 0.5, 100, 13);
  const QemcTrace trace =
      run_qemc(glass, small_config(SeedingMethod::HG),
               DeviceProfile::dw2000q(), fast_sim(3),
               EnvelopeCurves::standard(), 9);
  double best = trace.iterations.front().min_energy;
  for (const auto& rec : trace.iterations) {
    best = std::min(best, rec.min_energy);
    CHECK(trace.global_best_energy <= rec.min_energy);
  }
  CHECK(trace.global_best_energy == best);
}

TEST_CASE("a strong bias keeps every iteration at or below its seed energy") {
  const IsingModel glass = random_discrete_glass(12, 0.5, 10, 17);
  QemcConfig config = small_config(SeedingMethod::HG);
  config.alpha1 = glass.max_row_coupler_norm() + 1.0;
  config.g0 = DeviceProfile::dw2000q().g_max;
  const QemcTrace trace =
      run_qemc(glass, config, DeviceProfile::dw2000q(), fast_sim(4),
               EnvelopeCurves::standard(), 21);
  for (const auto& rec : trace.iterations) {
    CHECK(rec.min_energy <= rec.seed_energy + 1e-12);
  }
}

TEST_CASE("sweeps share iteration-0 seeds across configs") {
  const IsingModel glass = random_discrete_glass(10, 0.5, 10, 19);
  std::vector<QemcConfig> configs;
  for (double s : {0.3, 0.5, 0.7}) {
    QemcConfig c = small_config(SeedingMethod::RA);
    c.s_pause = s;
    configs.push_back(c);
  }
  const auto traces = sweep(glass, configs, DeviceProfile::dw2000q(),
                            fast_sim(5), EnvelopeCurves::standard(), 23);
  REQUIRE(traces.size() == 3);
  for (const auto& trace : traces) {
    CHECK(trace.iterations.front().seed_state ==
          traces.front().iterations.front().seed_state);
  }
  CHECK(sweep(glass, {}, DeviceProfile::dw2000q(), fast_sim(5),
              EnvelopeCurves::standard(), 23)
            .empty());
}

TEST_CASE("the paper's RA pause-fraction grid yields 13 runs") {
  const IsingModel glass = random_discrete_glass(8, 0.5, 10, 23);
  std::vector<QemcConfig> configs;
  for (double s = 0.2; s <= 0.8 + 1e-9; s += 0.05) {
    QemcConfig c = small_config(SeedingMethod::RA);
    c.iterations = 2;
    c.reads_per_iter = 20;
    c.s_pause = s;
    configs.push_back(c);
  }
  REQUIRE(configs.size() == 13);
  const auto traces = sweep(glass, configs, DeviceProfile::dw2000q(),
                            fast_sim(6), EnvelopeCurves::standard(), 29);
  CHECK(traces.size() == 13);
}

TEST_CASE("the combined-method grid validates on all three devices") {
  QemcConfig config;
  config.method = SeedingMethod::RA_HG;
  config.g0 = 2.0;  // the cross-device protocol value
  for (double s = 0.3; s <= 0.7 + 1e-9; s += 0.1) {
    for (double h = 0.0; h <= 2.0 + 1e-9; h += 0.5) {
      config.s_pause = s;
      config.h_mid = h;
      const QemcSchedules schedules = build_schedules(config);
      for (const auto& device :
           {DeviceProfile::dw2000q(), DeviceProfile::advantage4_1(),
            DeviceProfile::advantage6_1()}) {
        CHECK(validate(schedules.anneal, device).empty());
        REQUIRE(schedules.hgain.has_value());
        CHECK(validate(*schedules.hgain, device).empty());
      }
    }
  }
}

TEST_CASE("device violations abort with the violation list") {
  const IsingModel glass = random_discrete_glass(6, 0.5, 10, 31);
  QemcConfig config = small_config(SeedingMethod::HG);
  config.g0 = 4.5;  // over the Advantage 4.1 gain range
  CHECK_THROWS_AS(run_qemc(glass, config, DeviceProfile::advantage4_1(),
                           fast_sim(7), EnvelopeCurves::standard(), 1),
                  InvalidSchedule);
}

TEST_CASE("slack problems reinforce z=+1 through the RA initial state") {
  IsingModel model = random_spin_model(8, 0.5, 1.0, 1.0, 37);
  QemcConfig config = small_config(SeedingMethod::RA_HG);
  config.alpha1 = model.max_row_coupler_norm() + model.max_abs_linear() + 1.0;
  const QemcTrace trace =
      run_qemc(model, config, DeviceProfile::dw2000q(), fast_sim(8),
               EnvelopeCurves::standard(), 31);
  REQUIRE(trace.iterations.size() == 5);
  for (const auto& rec : trace.iterations) {
    CHECK(static_cast<int>(rec.seed_state.size()) == 8);
    CHECK(rec.valid_reads > 0);
  }
}

TEST_CASE("trace CSV has one row per iteration plus the running best") {
  const IsingModel glass = random_discrete_glass(8, 0.5, 10, 41);
  const QemcTrace trace =
      run_qemc(glass, small_config(SeedingMethod::RA),
               DeviceProfile::dw2000q(), fast_sim(9),
               EnvelopeCurves::standard(), 77);
  std::stringstream out;
  write_trace_csv(trace, out, "deadbeefdeadbeef");
  std::string line;
  std::getline(out, line);
  CHECK(line == "# run_config_hash=deadbeefdeadbeef");
  std::getline(out, line);
  CHECK(line == "iteration,min_energy,global_best_energy,seed_hash");
  int rows = 0;
  double prev_best = 1e300;
  while (std::getline(out, line)) {
    ++rows;
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const auto third = line.find(',', second + 1);
    const double best = std::stod(line.substr(second + 1, third - second - 1));
    CHECK(best <= prev_best);
    prev_best = best;
  }
  CHECK(rows == 5);
}

TEST_SUITE_END();
