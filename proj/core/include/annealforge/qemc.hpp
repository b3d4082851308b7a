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
#include <vector>

#include "annealforge/encoding.hpp"
#include "annealforge/ising.hpp"
#include "annealforge/schedule.hpp"
#include "annealforge/simulator.hpp"

namespace annealforge {

/// The four iterated state-encoding methods: reverse annealing with a
/// symmetric pause, h-gain encoding on a plain forward anneal, both
/// combined, and h-gain encoding on a forward anneal with a pause.
enum class SeedingMethod { RA, HG, RA_HG, FA_PAUSE_HG };

std::string to_string(SeedingMethod m);
SeedingMethod seeding_method_from_string(const std::string& name);

struct QemcConfig {
  SeedingMethod method = SeedingMethod::RA;
  int iterations = 20;
  int reads_per_iter = 1000;
  double anneal_time_us = 100.0;

  // method parameters
  double s_pause = 0.5;        // pause anneal fraction (RA, RA_HG, FA_PAUSE_HG)
  double h_mid = 0.0;          // gain at the pause start (RA_HG, FA_PAUSE_HG)
  double g0 = 2.0;             // gain at t=0; 2 stays within every device range
  double t_hg_zero_us = 10.0;  // HG: time at which the gain reaches zero

  double alpha1 = 1.0;  // bias scale before autoscaling
  double alpha2 = 1.0;  // slack scale, used only when homogenization applies

  std::string label;  // output naming in sweeps; derived when empty

  std::string derived_label() const;
};

struct QemcIterationRecord {
  Assignment seed_state;
  double seed_energy = 0.0;
  Assignment best_state;
  double min_energy = 0.0;   // batch minimum on the original model
  int distinct_samples = 0;
  int valid_reads = 0;       // reads surviving the slack filter
};

/// Per-iteration minima as plotted plus the running best.  The chain
/// invariant holds exactly: iteration k+1 is seeded with iteration k's
/// best state, even when that is worse than an earlier iterate.
struct QemcTrace {
  QemcConfig config;
  std::uint64_t rng_seed = 0;
  std::vector<QemcIterationRecord> iterations;
  Assignment global_best_state;
  double global_best_energy = 0.0;
};

/// Runs the iterated refinement loop.  The starting seed is the best
/// sample of a plain forward-anneal batch (same read count and total
/// time) unless initial_seed is supplied.  Schedules are constructed
/// once, validated against the device profile (failures abort with the
/// violation list) and reused for every iteration; all reported
/// energies are on the original model.
QemcTrace run_qemc(const IsingModel& model, const QemcConfig& config,
                   const DeviceProfile& device, const SimParams& sim,
                   const EnvelopeCurves& curves, std::uint64_t seed,
                   const std::optional<Assignment>& initial_seed = std::nullopt);

/// Runs run_qemc once per config with one shared starting seed so every
/// experiment in the grid begins in exactly the same state.
std::vector<QemcTrace> sweep(const IsingModel& model,
                             const std::vector<QemcConfig>& configs,
                             const DeviceProfile& device, const SimParams& sim,
                             const EnvelopeCurves& curves, std::uint64_t seed);

/// Schedules a config resolves to; exposed so grids can be validated
/// against device profiles without sampling.
struct QemcSchedules {
  AnnealSchedule anneal;
  std::optional<HGainSchedule> hgain;
};
QemcSchedules build_schedules(const QemcConfig& config);

/// FNV-1a hash of a state, as printed in the seed_hash trace column.
std::uint64_t state_hash(const Assignment& a);

// trace CSV: iteration, min_energy, global_best_energy, seed_hash
void write_trace_csv(const QemcTrace& trace, std::ostream& out,
                     const std::string& config_hash = "");

}  // namespace annealforge
