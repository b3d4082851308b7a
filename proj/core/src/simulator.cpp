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

#include "annealforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace annealforge {

namespace {
constexpr double kPi = std::numbers::pi;
}

RotorEngine::RotorEngine(const IsingModel& model, const Adjacency& adjacency)
    : linear_(&model.linear()),
      adj_(&adjacency),
      offset_(model.offset()),
      n_(model.num_vars()) {
  state_.angles.assign(static_cast<size_t>(n_), kPi / 2.0);
  cos_.assign(static_cast<size_t>(n_), 0.0);
  sin_.assign(static_cast<size_t>(n_), 1.0);
}

void RotorEngine::init_transverse() {
  std::fill(state_.angles.begin(), state_.angles.end(), kPi / 2.0);
  std::fill(cos_.begin(), cos_.end(), std::cos(kPi / 2.0));
  std::fill(sin_.begin(), sin_.end(), std::sin(kPi / 2.0));
}

void RotorEngine::init_classical(const Assignment& spins) {
  if (static_cast<int>(spins.size()) != n_) {
    throw InvalidAssignment("RotorEngine: initial state length mismatch");
  }
  for (int i = 0; i < n_; ++i) {
    const double angle = spins[static_cast<size_t>(i)] == 1 ? 0.0 : kPi;
    state_.angles[static_cast<size_t>(i)] = angle;
    cos_[static_cast<size_t>(i)] = std::cos(angle);
    sin_[static_cast<size_t>(i)] = std::sin(angle);
  }
}

void RotorEngine::set_state(const RotorState& state) {
  if (static_cast<int>(state.angles.size()) != n_) {
    throw InvalidAssignment("RotorEngine: state length mismatch");
  }
  state_ = state;
  for (int i = 0; i < n_; ++i) {
    cos_[static_cast<size_t>(i)] = std::cos(state_.angles[static_cast<size_t>(i)]);
    sin_[static_cast<size_t>(i)] = std::sin(state_.angles[static_cast<size_t>(i)]);
  }
}

double RotorEngine::site_energy(int i, double cos_i, double sin_i,
                                double a_coeff, double b_coeff, double g) const {
  double field = g * (*linear_)[static_cast<size_t>(i)];
  for (const auto& [j, coupling] : (*adj_)[static_cast<size_t>(i)]) {
    field += coupling * cos_[static_cast<size_t>(j)];
  }
  return -0.5 * a_coeff * sin_i + 0.5 * b_coeff * cos_i * field;
}

int RotorEngine::sweep(double a_coeff, double b_coeff, double g, double beta,
                       Rng& rng) {
  int accepted = 0;
  for (int i = 0; i < n_; ++i) {
    const double proposal = rng.uniform(0.0, kPi);
    const double cos_new = std::cos(proposal);
    const double sin_new = std::sin(proposal);
    const double before = site_energy(i, cos_[static_cast<size_t>(i)],
                                      sin_[static_cast<size_t>(i)], a_coeff,
                                      b_coeff, g);
    const double after =
        site_energy(i, cos_new, sin_new, a_coeff, b_coeff, g);
    const double delta = after - before;
    if (delta <= 0.0 || rng.uniform01() < std::exp(-beta * delta)) {
      state_.angles[static_cast<size_t>(i)] = proposal;
      cos_[static_cast<size_t>(i)] = cos_new;
      sin_[static_cast<size_t>(i)] = sin_new;
      ++accepted;
    }
  }
  return accepted;
}

double RotorEngine::classical_energy(double a_coeff, double b_coeff,
                                     double g) const {
  double transverse = 0.0;
  double field = 0.0;
  for (int i = 0; i < n_; ++i) {
    transverse += sin_[static_cast<size_t>(i)];
    field += g * (*linear_)[static_cast<size_t>(i)] * cos_[static_cast<size_t>(i)];
  }
  double coupling = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (const auto& [j, v] : (*adj_)[static_cast<size_t>(i)]) {
      if (j > i) coupling += v * cos_[static_cast<size_t>(i)] * cos_[static_cast<size_t>(j)];
    }
  }
  return -0.5 * a_coeff * transverse + 0.5 * b_coeff * (field + coupling);
}

Assignment RotorEngine::readout(Rng& rng) const {
  Assignment out(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const double c = cos_[static_cast<size_t>(i)];
    if (c > 0.0) {
      out[static_cast<size_t>(i)] = 1;
    } else if (c < 0.0) {
      out[static_cast<size_t>(i)] = -1;
    } else {
      out[static_cast<size_t>(i)] = rng.bernoulli(0.5) ? 1 : -1;
    }
  }
  return out;
}

namespace {

struct SweepPlan {
  long long total_sweeps;
  double total_time_us;
};

// Midpoint time of sweep k; pauses simply accumulate sweeps at fixed s.
double sweep_time(const SweepPlan& plan, long long k) {
  return plan.total_time_us * (static_cast<double>(k) + 0.5) /
         static_cast<double>(plan.total_sweeps);
}

void run_read(RotorEngine& engine, const AnnealSchedule& schedule,
              const HGainSchedule* hgain, const EnvelopeCurves& curves,
              const SimParams& params, const SweepPlan& plan, Rng& rng) {
  for (long long k = 0; k < plan.total_sweeps; ++k) {
    const double t = sweep_time(plan, k);
    const double s = schedule.s(t);
    const double g = hgain ? hgain->g(t) : 1.0;
    engine.sweep(curves.a(s), curves.b(s), g, params.beta, rng);
  }
}

}  // namespace

SampleSet anneal(const IsingModel& model, const AnnealSchedule& schedule,
                 const std::optional<HGainSchedule>& hgain,
                 const std::optional<InitialState>& init,
                 const SimParams& params, const EnvelopeCurves& curves) {
  if (model.domain() != Domain::Spin) {
    throw Error("anneal: spin-domain model required");
  }
  if (params.num_reads < 1 || params.sweeps_per_us < 1 || params.beta <= 0.0) {
    throw Error("anneal: SimParams must be positive");
  }
  if (schedule.kind() == AnnealKind::Reverse && !init) {
    throw MissingInitialState("anneal: reverse schedules start from a "
                              "classical state; none given");
  }
  if (init && init->size() != model.num_vars()) {
    throw InvalidAssignment("anneal: initial state length mismatch");
  }
  if (hgain && hgain->total_time_us() != schedule.total_time_us()) {
    throw InvalidSchedule("anneal: h-gain and anneal schedules span "
                          "different total times");
  }

  const Adjacency adjacency = model.adjacency();
  SweepPlan plan;
  plan.total_time_us = schedule.total_time_us();
  plan.total_sweeps = static_cast<long long>(
      std::llround(params.sweeps_per_us * plan.total_time_us));

  const HGainSchedule* hg = hgain ? &*hgain : nullptr;
  std::vector<Assignment> reads(static_cast<size_t>(params.num_reads));

  auto init_engine = [&](RotorEngine& engine) {
    if (schedule.kind() == AnnealKind::Reverse) {
      engine.init_classical(init->values);
    } else if (init) {
      engine.init_classical(init->values);
    } else {
      engine.init_transverse();
    }
  };

  if (!params.reinitialize_state) {
    RotorEngine engine(model, adjacency);
    init_engine(engine);
    for (int r = 0; r < params.num_reads; ++r) {
      Rng rng = Rng::derive(params.rng_seed, static_cast<std::uint64_t>(r));
      if (r > 0) {
        engine.init_classical(reads[static_cast<size_t>(r - 1)]);
      }
      run_read(engine, schedule, hg, curves, params, plan, rng);
      reads[static_cast<size_t>(r)] = engine.readout(rng);
    }
  } else {
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int threads = std::max(
        1, std::min(params.num_threads > 0 ? params.num_threads : hw,
                    params.num_reads));
    auto work = [&](int first, int stride) {
      RotorEngine engine(model, adjacency);
      for (int r = first; r < params.num_reads; r += stride) {
        Rng rng = Rng::derive(params.rng_seed, static_cast<std::uint64_t>(r));
        init_engine(engine);
        run_read(engine, schedule, hg, curves, params, plan, rng);
        reads[static_cast<size_t>(r)] = engine.readout(rng);
      }
    };
    if (threads == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(threads));
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back(work, t, threads);
      }
      for (auto& th : pool) th.join();
    }
  }

  SampleSet set = SampleSet::from_reads(model, reads, params.rng_seed);
  set.set_metadata("anneal_time_us", format_double(schedule.total_time_us()));
  set.set_metadata("sweeps_per_us", std::to_string(params.sweeps_per_us));
  set.set_metadata("beta", format_double(params.beta));
  set.set_metadata("num_reads", std::to_string(params.num_reads));
  set.set_metadata("reinitialize_state",
                   params.reinitialize_state ? "true" : "false");
  // no surrogate analogue; recorded for parity with hardware submissions
  set.set_metadata("readout_thermalization_us", "0");
  set.set_metadata("programming_thermalization_us", "0");
  return set;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<SampleSet> batch(const IsingModel& model,
                             const std::vector<AnnealJob>& jobs,
                             const SimParams& params,
                             const EnvelopeCurves& curves) {
  std::vector<SampleSet> out;
  out.reserve(jobs.size());
  for (size_t k = 0; k < jobs.size(); ++k) {
    SimParams job_params = params;
    job_params.rng_seed = mix_seed(params.rng_seed, k);
    out.push_back(anneal(model, jobs[k].schedule, jobs[k].hgain, jobs[k].init,
                         job_params, curves));
  }
  return out;
}

SampleSet SimulatedSampler::sample(const IsingModel& model, int num_reads,
                                   double anneal_time_us, std::uint64_t seed) {
  SimParams params = params_;
  params.num_reads = num_reads;
  params.rng_seed = seed;
  return anneal(model, forward_anneal(anneal_time_us), std::nullopt,
                std::nullopt, params, curves_);
}

}  // namespace annealforge
