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

#include "annealforge/qemc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace annealforge {

std::string to_string(SeedingMethod m) {
  switch (m) {
    case SeedingMethod::RA: return "ra";
    case SeedingMethod::HG: return "hg";
    case SeedingMethod::RA_HG: return "ra_hg";
    case SeedingMethod::FA_PAUSE_HG: return "fa_pause_hg";
  }
  return "?";
}

SeedingMethod seeding_method_from_string(const std::string& name) {
  if (name == "ra") return SeedingMethod::RA;
  if (name == "hg") return SeedingMethod::HG;
  if (name == "ra_hg") return SeedingMethod::RA_HG;
  if (name == "fa_pause_hg") return SeedingMethod::FA_PAUSE_HG;
  throw Error("unknown seeding method '" + name +
              "' (expected ra|hg|ra_hg|fa_pause_hg)");
}

std::string QemcConfig::derived_label() const {
  if (!label.empty()) return label;
  std::ostringstream oss;
  oss << to_string(method);
  switch (method) {
    case SeedingMethod::RA:
      oss << "_s" << s_pause;
      break;
    case SeedingMethod::HG:
      oss << "_g" << g0 << "_z" << t_hg_zero_us;
      break;
    case SeedingMethod::RA_HG:
    case SeedingMethod::FA_PAUSE_HG:
      oss << "_s" << s_pause << "_h" << h_mid;
      break;
  }
  return oss.str();
}

QemcSchedules build_schedules(const QemcConfig& config) {
  const double T = config.anneal_time_us;
  // the protocol shape: 10% ramps around an 80% pause
  const double t_a = 0.1 * T;
  const double t_b = 0.9 * T;
  switch (config.method) {
    case SeedingMethod::RA:
      return {ra_pause(T, config.s_pause, t_a, t_b), std::nullopt};
    case SeedingMethod::HG: {
      if (config.t_hg_zero_us <= 0.0 || config.t_hg_zero_us >= T) {
        throw InvalidSchedule("qemc: t_hg_zero_us must lie inside (0, T)");
      }
      return {forward_anneal(T),
              hg_three_point(T, config.t_hg_zero_us / T, 0.0, config.g0)};
    }
    case SeedingMethod::RA_HG:
    case SeedingMethod::FA_PAUSE_HG: {
      // the gain reaches zero exactly when the pause ends
      HGainSchedule hg({{0.0, config.g0},
                        {t_a, config.h_mid},
                        {t_b, 0.0},
                        {T, 0.0}});
      AnnealSchedule sched =
          config.method == SeedingMethod::RA_HG
              ? ra_pause(T, config.s_pause, t_a, t_b)
              : fa_pause(T, config.s_pause, t_a, t_b);
      return {std::move(sched), std::move(hg)};
    }
  }
  throw Error("qemc: unreachable");
}

std::uint64_t state_hash(const Assignment& a) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (int v : a) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint8_t>(v));
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

void throw_on_violations(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::string msg = "qemc: schedule fails device validation:";
  for (const auto& v : violations) {
    msg += "\n  " + v.message;
  }
  throw InvalidSchedule(msg);
}

/// Re-derives a sample set's energies on `model` (states unchanged).
SampleSet reevaluate(const SampleSet& samples, const IsingModel& model) {
  std::vector<Assignment> reads;
  for (const auto& rec : samples.records()) {
    for (int k = 0; k < rec.num_occurrences; ++k) {
      reads.push_back(rec.state);
    }
  }
  return SampleSet::from_reads(model, reads, samples.rng_seed());
}

Assignment forward_seed(const IsingModel& model, const QemcConfig& config,
                        const SimParams& sim, const EnvelopeCurves& curves,
                        std::uint64_t seed) {
  SimParams params = sim;
  params.num_reads = config.reads_per_iter;
  params.rng_seed = mix_seed(seed, 0);
  const SampleSet batch = anneal(model, forward_anneal(config.anneal_time_us),
                                 std::nullopt, std::nullopt, params, curves);
  return batch.best().state;
}

}  // namespace

QemcTrace run_qemc(const IsingModel& model, const QemcConfig& config,
                   const DeviceProfile& device, const SimParams& sim,
                   const EnvelopeCurves& curves, std::uint64_t seed,
                   const std::optional<Assignment>& initial_seed) {
  if (model.domain() != Domain::Spin) {
    throw Error("qemc: spin-domain model required");
  }
  if (config.iterations < 1 || config.reads_per_iter < 1) {
    throw Error("qemc: iterations and reads_per_iter must be >= 1");
  }

  const QemcSchedules schedules = build_schedules(config);
  throw_on_violations(validate(schedules.anneal, device));
  if (schedules.hgain) {
    throw_on_violations(validate(*schedules.hgain, device));
  }

  const bool uses_hg = config.method != SeedingMethod::RA;
  const bool uses_ra_init = config.method == SeedingMethod::RA ||
                            config.method == SeedingMethod::RA_HG;

  QemcTrace trace;
  trace.config = config;
  trace.rng_seed = seed;

  Assignment current =
      initial_seed ? *initial_seed
                   : forward_seed(model, config, sim, curves, seed);
  check_assignment(model, current);

  for (int iter = 1; iter <= config.iterations; ++iter) {
    QemcIterationRecord rec;
    rec.seed_state = current;
    rec.seed_energy = energy(model, current);

    IsingModel run_model(0);
    std::optional<int> slack;
    if (uses_hg) {
      EncodedProblem encoded =
          encode(model, InitialState{current}, config.alpha1, config.alpha2);
      slack = encoded.slack_index;
      run_model = autoscale(encoded.model, device.h_range).model;
    } else {
      run_model = model;
    }

    std::optional<InitialState> init;
    if (uses_ra_init) {
      InitialState state{current};
      if (slack) state.values.push_back(1);  // reinforce z = +1
      init = std::move(state);
    }

    SimParams params = sim;
    params.num_reads = config.reads_per_iter;
    params.rng_seed = mix_seed(seed, static_cast<std::uint64_t>(iter));
    const SampleSet raw = anneal(run_model, schedules.anneal, schedules.hgain,
                                 init, params, curves);

    SampleSet projected;
    if (slack) {
      const SlackFilterResult filtered = filter_slack(raw, *slack, model);
      projected = filtered.samples;
      if (filtered.all_filtered) {
        // nothing usable this iteration; keep the seed and move on
        rec.best_state = current;
        rec.min_energy = rec.seed_energy;
        rec.distinct_samples = 0;
        rec.valid_reads = 0;
        trace.iterations.push_back(std::move(rec));
        continue;
      }
    } else {
      projected = reevaluate(raw, model);
    }

    const SampleRecord& best = projected.best();
    rec.best_state = best.state;
    rec.min_energy = best.energy;
    rec.distinct_samples = static_cast<int>(projected.records().size());
    rec.valid_reads = projected.total_reads();
    current = best.state;
    trace.iterations.push_back(std::move(rec));
  }

  trace.global_best_state = trace.iterations.front().best_state;
  trace.global_best_energy = trace.iterations.front().min_energy;
  for (const auto& rec : trace.iterations) {
    if (rec.min_energy < trace.global_best_energy) {
      trace.global_best_energy = rec.min_energy;
      trace.global_best_state = rec.best_state;
    }
  }
  return trace;
}

std::vector<QemcTrace> sweep(const IsingModel& model,
                             const std::vector<QemcConfig>& configs,
                             const DeviceProfile& device, const SimParams& sim,
                             const EnvelopeCurves& curves, std::uint64_t seed) {
  std::vector<QemcTrace> traces;
  if (configs.empty()) return traces;
  const Assignment shared_seed =
      forward_seed(model, configs.front(), sim, curves, seed);
  traces.reserve(configs.size());
  for (size_t i = 0; i < configs.size(); ++i) {
    traces.push_back(run_qemc(model, configs[i], device, sim, curves,
                              mix_seed(seed, i + 1), shared_seed));
  }
  return traces;
}

void write_trace_csv(const QemcTrace& trace, std::ostream& out,
                     const std::string& config_hash) {
  if (!config_hash.empty()) {
    out << "# run_config_hash=" << config_hash << "\n";
  }
  out << "iteration,min_energy,global_best_energy,seed_hash\n";
  double best = trace.iterations.empty() ? 0.0
                                         : trace.iterations.front().min_energy;
  char hex[24];
  int iter = 1;
  for (const auto& rec : trace.iterations) {
    best = std::min(best, rec.min_energy);
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(state_hash(rec.seed_state)));
    out << iter << "," << format_double(rec.min_energy) << ","
        << format_double(best) << "," << hex << "\n";
    ++iter;
  }
}

}  // namespace annealforge
