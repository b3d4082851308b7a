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
#include <optional>
#include <vector>

#include "annealforge/encoding.hpp"
#include "annealforge/ising.hpp"
#include "annealforge/problems.hpp"
#include "annealforge/rng.hpp"
#include "annealforge/schedule.hpp"

namespace annealforge {

// Classical surrogate for the schedule-driven quantum evolution: one
// rotor angle per variable, with sigma_x represented by sin(theta) and
// sigma_z by cos(theta).  At time t the configuration energy is
//
//   E(theta) = -A(s(t))/2 * sum_i sin(theta_i)
//            +  B(s(t))/2 * [ g(t) * sum_i h_i cos(theta_i)
//                           + sum_{i<j} J_ij cos(theta_i) cos(theta_j) ]
//
// and Metropolis single-angle updates sweep the sites.

struct SimParams {
  int sweeps_per_us = 10;
  double beta = 10.0;  // inverse Monte Carlo temperature
  std::uint64_t rng_seed = 0;
  int num_reads = 1;
  bool reinitialize_state = true;
  int num_threads = 0;  // 0 = hardware concurrency
};

/// Angles in [0, pi]: 0 reads out as spin +1, pi as -1.
struct RotorState {
  std::vector<double> angles;
};

using Adjacency = std::vector<std::vector<std::pair<int, double>>>;

/// Per-read dynamics over a shared model/adjacency.  Exposed so tests
/// can drive individual sweeps and audit the incremental energy
/// bookkeeping against full re-evaluation.
class RotorEngine {
 public:
  RotorEngine(const IsingModel& model, const Adjacency& adjacency);

  int num_vars() const { return n_; }

  void init_transverse();                        // all angles pi/2
  void init_classical(const Assignment& spins);  // 0 or pi per spin
  void set_state(const RotorState& state);
  const RotorState& state() const { return state_; }

  /// One Metropolis pass over all sites in index order at fixed
  /// coefficients; returns the number of accepted proposals.
  int sweep(double a_coeff, double b_coeff, double g, double beta, Rng& rng);

  /// Full O(n + |J|) re-evaluation of the configuration energy.
  double classical_energy(double a_coeff, double b_coeff, double g) const;

  /// Energy terms local to site i for the given cos/sin of its angle;
  /// the difference of two of these is the Metropolis delta.
  double site_energy(int i, double cos_i, double sin_i, double a_coeff,
                     double b_coeff, double g) const;

  /// sign(cos(theta_i)) per site; an exact pi/2 tie flips a seeded coin.
  Assignment readout(Rng& rng) const;

 private:
  const std::vector<double>* linear_;
  const Adjacency* adj_;
  double offset_;
  int n_;
  RotorState state_;
  std::vector<double> cos_, sin_;
};

/// Runs num_reads independent anneals of the model along the schedule
/// (with optional h-gain modulation; g = 1 when absent) and aggregates
/// the readouts.  Reverse schedules require an initial state.  Energies
/// in the returned set are plain model energies, independent of the
/// schedules.  Reads use decorrelated rng streams derived from
/// (rng_seed, read index) and are bit-identical across rerun and across
/// thread counts; with reinitialize_state = false reads chain
/// sequentially, each starting from the previous readout.
SampleSet anneal(const IsingModel& model, const AnnealSchedule& schedule,
                 const std::optional<HGainSchedule>& hgain,
                 const std::optional<InitialState>& init,
                 const SimParams& params,
                 const EnvelopeCurves& curves = EnvelopeCurves::standard());

struct AnnealJob {
  AnnealSchedule schedule;
  std::optional<HGainSchedule> hgain;
  std::optional<InitialState> init;
};

/// Independent jobs with decorrelated seed streams; job k reruns
/// bit-identically for the same params.
std::vector<SampleSet> batch(const IsingModel& model,
                             const std::vector<AnnealJob>& jobs,
                             const SimParams& params,
                             const EnvelopeCurves& curves = EnvelopeCurves::standard());

/// Splitmix64-style mixer for deriving per-job seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Forward-anneal Sampler adapter used by baselines and the tuner.
class SimulatedSampler : public Sampler {
 public:
  explicit SimulatedSampler(SimParams params,
                            EnvelopeCurves curves = EnvelopeCurves::standard())
      : params_(params), curves_(std::move(curves)) {}

  SampleSet sample(const IsingModel& model, int num_reads,
                   double anneal_time_us, std::uint64_t seed) override;

 private:
  SimParams params_;
  EnvelopeCurves curves_;
};

}  // namespace annealforge
