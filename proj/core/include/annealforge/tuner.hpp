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

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "annealforge/encoding.hpp"
#include "annealforge/gp.hpp"
#include "annealforge/problems.hpp"
#include "annealforge/qemc.hpp"
#include "annealforge/schedule.hpp"
#include "annealforge/simulator.hpp"

namespace annealforge {

struct SearchDim {
  std::string name;  // decoding key: alpha1, alpha2, p1, p2, hg_t, hg_g
  double lo = 0.0;
  double hi = 1.0;
};

struct SearchSpace {
  std::vector<SearchDim> dims;

  void validate() const;
  int size() const { return static_cast<int>(dims.size()); }
  std::optional<int> index_of(const std::string& name) const;
  /// Maps unit-box coordinates to real parameter values and back.
  std::vector<double> from_unit(const std::vector<double>& u) const;
  std::vector<double> to_unit(const std::vector<double>& x) const;
};

struct BoObservation {
  std::vector<double> point;  // real coordinates
  double value = 0.0;
  bool failed = false;  // fitness raised and the penalty was recorded
};

struct BoOptions {
  int init_points = 100;
  int n_iter = 200;
  double noise_alpha = 0.01;
  std::uint64_t seed = 0;
  /// Recorded in place of the fitness value when the fitness throws;
  /// without it the exception propagates.
  std::optional<double> failure_penalty;
  /// Evaluated as the first probe (warm start).
  std::optional<std::vector<double>> warm_start;
};

struct BoResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  std::vector<BoObservation> history;  // length init_points + n_iter, always
  GpSurrogate surrogate{1};            // fitted on the full history
};

/// Random exploration of init_points uniform draws followed by n_iter
/// proposals maximizing expected improvement over the GP posterior
/// (multi-start compass search).  Returns the argmax over everything
/// observed.
BoResult bayes_optimize(
    const std::function<double(const std::vector<double>&)>& fitness,
    const SearchSpace& space, const BoOptions& options = {});

enum class ProblemClass { MaxCut, MaxClique };
enum class TuningMethod { RA, HG, RA_HG };

std::string to_string(ProblemClass c);
std::string to_string(TuningMethod m);

/// Everything a fitness evaluation needs: the 10 fixed instances with
/// aligned models, baselines and baseline states to encode.
struct FitnessContext {
  ProblemClass problem_class = ProblemClass::MaxCut;
  TuningMethod method = TuningMethod::HG;
  std::vector<WeightedGraph> graphs;
  std::vector<IsingModel> models;  // spin domain, aligned with graphs
  std::vector<Assignment> seeds;   // baseline best states, aligned
  std::vector<Baseline> baselines;
  DeviceProfile device = DeviceProfile::dw2000q();
  double anneal_time_us = 1.0;
  int reads = 1000;
  double alpha1 = 0.5;  // used when not part of the search space
  double alpha2 = 0.5;
  double failure_penalty = -1000.0;
  SimParams sim;
  EnvelopeCurves curves = EnvelopeCurves::standard();
  // schedules held fixed when the search space carries no schedule dims
  std::optional<AnnealSchedule> fixed_schedule;
  std::optional<HGainSchedule> fixed_hgain;
  // test seam: replaces the simulator batch when set
  using SampleFn = std::function<SampleSet(
      const IsingModel&, const AnnealSchedule&,
      const std::optional<HGainSchedule>&, const std::optional<InitialState>&,
      const SimParams&)>;
  SampleFn sample_override;
};

/// Schedules and scaling constants decoded from a search-space point
/// by dimension name.
struct DecodedPoint {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  AnnealSchedule schedule;
  std::optional<HGainSchedule> hgain;
};

DecodedPoint decode_point(const std::vector<double>& point,
                          const SearchSpace& space, const FitnessContext& ctx);

/// Mean over instances of (best cut found - baseline cut).
double cut_fitness(const std::vector<double>& point, const SearchSpace& space,
                   const FitnessContext& ctx, std::uint64_t call_seed);

/// Mean over instances of (best valid clique weight - baseline weight);
/// an instance with no slack-satisfying sample, or none that induces a
/// clique, scores the failure penalty (-1000).
double clique_fitness(const std::vector<double>& point,
                      const SearchSpace& space, const FitnessContext& ctx,
                      std::uint64_t call_seed);

/// Builds the 10-instance context for one (class, density): fixed
/// graphs, models, forward-anneal baselines and their best states.
FitnessContext make_fitness_context(ProblemClass problem_class,
                                    TuningMethod method, double density,
                                    const DeviceProfile& device,
                                    const SimParams& sim,
                                    const EnvelopeCurves& curves,
                                    std::uint64_t seed, int num_graphs = 10,
                                    int graph_n = 65, int reads = 1000,
                                    double anneal_time_us = 1.0);

/// Scaling factors found for the h-gain encoding, per graph density
/// {0.1, ..., 0.9}.
double default_maxcut_alpha1(double density);
std::pair<double, double> default_maxclique_alphas(double density);

/// The search space each (method, class) tunes over.
SearchSpace make_search_space(ProblemClass problem_class, TuningMethod method,
                              const DeviceProfile& device,
                              bool include_scaling);

enum class TuneStage { ScalingAndSchedule, ScheduleOnly, ScalingRefit };

struct TunedConfig {
  std::string problem_class;
  double density = 0.0;
  std::string method;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::vector<SchedulePoint> anneal_points;
  std::vector<SchedulePoint> hgain_points;
  double anneal_time_us = 1.0;
};

void write_tuned_config_json(const TunedConfig& config, const std::string& path,
                             const std::string& config_hash = "");

struct TuneOptions {
  TuningMethod method = TuningMethod::HG;
  int init_points = 100;
  int n_iter = 200;
  double noise_alpha = 0.01;
  std::uint64_t seed = 0;
  int num_graphs = 10;
  int graph_n = 65;
  int reads = 1000;
  double anneal_time_us = 1.0;
  SimParams sim;
  EnvelopeCurves curves = EnvelopeCurves::standard();
  std::optional<TunedConfig> previous;  // warm start / fixed schedule input
};

struct TuneOutcome {
  TunedConfig config;
  BoResult result;
};

/// The staged workflow: joint schedule+scaling fit at short anneal time,
/// schedule-only fit with fixed scaling, or a scaling refit warm-started
/// from a previous outcome with the schedule held fixed.
TuneOutcome tune_pipeline(ProblemClass problem_class, double density,
                          const DeviceProfile& device, TuneStage stage,
                          const TuneOptions& options);

struct GridScanResult {
  double best_x = 0.0;
  double best_value = 0.0;
  std::vector<std::pair<double, double>> history;
};

/// Cross-check of alpha1 on a linear grid over [lo, hi] in steps of
/// `step` (0.01 by default, matching the staged workflow).
GridScanResult alpha1_grid_scan(const std::function<double(double)>& fitness,
                                double lo = 0.01, double hi = 1.0,
                                double step = 0.01);

/// Posterior mean/variance of a 2-dimensional surrogate on a grid:
/// CSV columns x, y, posterior_mean, posterior_variance.
void write_heatmap_csv(const GpSurrogate& surrogate, const SearchSpace& space,
                       int grid_points, std::ostream& out,
                       const std::string& config_hash = "");

}  // namespace annealforge
