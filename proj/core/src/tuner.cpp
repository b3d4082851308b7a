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

#include "annealforge/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "annealforge/rng.hpp"

namespace annealforge {

void SearchSpace::validate() const {
  if (dims.empty()) {
    throw Error("SearchSpace: no dimensions");
  }
  for (const auto& d : dims) {
    if (!(d.lo < d.hi) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
      throw Error("SearchSpace: dimension '" + d.name +
                  "' needs finite lo < hi");
    }
  }
}

std::optional<int> SearchSpace::index_of(const std::string& name) const {
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<double> SearchSpace::from_unit(const std::vector<double>& u) const {
  std::vector<double> x(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    x[i] = dims[i].lo + (dims[i].hi - dims[i].lo) * u[i];
  }
  return x;
}

std::vector<double> SearchSpace::to_unit(const std::vector<double>& x) const {
  std::vector<double> u(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    u[i] = (x[i] - dims[i].lo) / (dims[i].hi - dims[i].lo);
  }
  return u;
}

namespace {

std::vector<double> clamp_unit(std::vector<double> u) {
  for (double& v : u) v = std::clamp(v, 0.0, 1.0);
  return u;
}

std::vector<double> maximize_ei(const GpSurrogate& gp, Rng& rng) {
  const int dims = gp.dims();
  // multi-start: random candidates, then compass search from the best few
  constexpr int kCandidates = 256;
  constexpr int kStarts = 4;
  std::vector<std::pair<double, std::vector<double>>> pool;
  pool.reserve(kCandidates);
  for (int c = 0; c < kCandidates; ++c) {
    std::vector<double> u(static_cast<size_t>(dims));
    for (double& v : u) v = rng.uniform01();
    pool.emplace_back(gp.expected_improvement(u), std::move(u));
  }
  std::sort(pool.begin(), pool.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<double> best = pool.front().second;
  double best_ei = pool.front().first;
  for (int s = 0; s < kStarts && s < static_cast<int>(pool.size()); ++s) {
    std::vector<double> u = pool[static_cast<size_t>(s)].second;
    double ei = pool[static_cast<size_t>(s)].first;
    double step = 0.2;
    while (step > 1e-3) {
      bool improved = false;
      for (int d = 0; d < dims; ++d) {
        for (double dir : {+1.0, -1.0}) {
          std::vector<double> probe = u;
          probe[static_cast<size_t>(d)] =
              std::clamp(probe[static_cast<size_t>(d)] + dir * step, 0.0, 1.0);
          const double probe_ei = gp.expected_improvement(probe);
          if (probe_ei > ei) {
            ei = probe_ei;
            u = std::move(probe);
            improved = true;
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    if (ei > best_ei) {
      best_ei = ei;
      best = u;
    }
  }
  return best;
}

}  // namespace

BoResult bayes_optimize(
    const std::function<double(const std::vector<double>&)>& fitness,
    const SearchSpace& space, const BoOptions& options) {
  space.validate();
  if (options.init_points < 1 || options.n_iter < 0) {
    throw Error("bayes_optimize: need init_points >= 1 and n_iter >= 0");
  }
  const int dims = space.size();
  Rng rng(options.seed);
  GpSurrogate gp(dims, options.noise_alpha);
  BoResult result;
  result.history.reserve(static_cast<size_t>(options.init_points + options.n_iter));

  auto probe = [&](const std::vector<double>& unit_point) {
    const std::vector<double> x = space.from_unit(unit_point);
    BoObservation obs;
    obs.point = x;
    try {
      obs.value = fitness(x);
    } catch (const std::exception&) {
      if (!options.failure_penalty) throw;
      obs.value = *options.failure_penalty;
      obs.failed = true;
    }
    gp.add_observation(unit_point, obs.value);
    result.history.push_back(obs);
  };

  for (int i = 0; i < options.init_points; ++i) {
    std::vector<double> u(static_cast<size_t>(dims));
    if (i == 0 && options.warm_start) {
      u = clamp_unit(space.to_unit(*options.warm_start));
    } else {
      for (double& v : u) v = rng.uniform01();
    }
    probe(u);
  }

  for (int i = 0; i < options.n_iter; ++i) {
    // length-scale refits get expensive as the history grows
    const bool refit = gp.num_observations() <= 60 ||
                       gp.num_observations() % 5 == 0;
    gp.fit(refit);
    probe(maximize_ei(gp, rng));
  }

  int best = 0;
  for (size_t i = 1; i < result.history.size(); ++i) {
    if (result.history[i].value > result.history[static_cast<size_t>(best)].value) {
      best = static_cast<int>(i);
    }
  }
  result.best_point = result.history[static_cast<size_t>(best)].point;
  result.best_value = result.history[static_cast<size_t>(best)].value;
  gp.fit(true);
  result.surrogate = std::move(gp);
  return result;
}

std::string to_string(ProblemClass c) {
  return c == ProblemClass::MaxCut ? "maxcut" : "maxclique";
}

std::string to_string(TuningMethod m) {
  switch (m) {
    case TuningMethod::RA: return "ra";
    case TuningMethod::HG: return "hg";
    case TuningMethod::RA_HG: return "ra_hg";
  }
  return "?";
}

DecodedPoint decode_point(const std::vector<double>& point,
                          const SearchSpace& space, const FitnessContext& ctx) {
  auto value_of = [&](const std::string& name,
                      double fallback) {
    if (auto idx = space.index_of(name)) {
      return point[static_cast<size_t>(*idx)];
    }
    return fallback;
  };
  const double T = ctx.anneal_time_us;

  DecodedPoint decoded{value_of("alpha1", ctx.alpha1),
                       value_of("alpha2", ctx.alpha2), forward_anneal(T),
                       std::nullopt};

  const bool has_ra = space.index_of("p1").has_value();
  const bool has_hg = space.index_of("hg_t").has_value();
  if (has_ra) {
    decoded.schedule =
        ra_from_search(T, value_of("p1", 0.5), value_of("p2", 0.5));
  } else if (ctx.fixed_schedule) {
    decoded.schedule = *ctx.fixed_schedule;
  } else if (ctx.method != TuningMethod::HG) {
    // the equidistant shape used while scaling is being fitted
    decoded.schedule = ra_pause(T, 0.25, 0.25 * T, 0.75 * T);
  }
  if (has_hg) {
    decoded.hgain = hg_three_point(T, value_of("hg_t", 0.5),
                                   value_of("hg_g", ctx.device.g_max / 2.0),
                                   ctx.device.g_max);
  } else if (ctx.fixed_hgain) {
    decoded.hgain = *ctx.fixed_hgain;
  } else if (ctx.method != TuningMethod::RA) {
    // the straight-through shape used while scaling is being fitted
    decoded.hgain =
        hg_three_point(T, 0.5, ctx.device.g_max / 2.0, ctx.device.g_max);
  }
  return decoded;
}

namespace {

/// Best objective value over a sampled batch for one instance, or
/// nullopt when nothing scores (no z=+1 read, or no clique found).
std::optional<double> best_instance_value(const FitnessContext& ctx, int index,
                                          const DecodedPoint& decoded,
                                          std::uint64_t seed) {
  const IsingModel& model = ctx.models[static_cast<size_t>(index)];
  const WeightedGraph& graph = ctx.graphs[static_cast<size_t>(index)];
  const Assignment& x0 = ctx.seeds[static_cast<size_t>(index)];

  SimParams params = ctx.sim;
  params.num_reads = ctx.reads;
  params.rng_seed = seed;

  auto run = [&](const IsingModel& m, const AnnealSchedule& sched,
                 const std::optional<HGainSchedule>& hg,
                 const std::optional<InitialState>& init) {
    if (ctx.sample_override) {
      return ctx.sample_override(m, sched, hg, init, params);
    }
    return anneal(m, sched, hg, init, params, ctx.curves);
  };

  SampleSet samples;
  std::optional<int> slack;
  if (ctx.method == TuningMethod::RA) {
    samples = run(model, decoded.schedule, std::nullopt, InitialState{x0});
  } else {
    EncodedProblem encoded =
        encode(model, InitialState{x0}, decoded.alpha1, decoded.alpha2);
    slack = encoded.slack_index;
    const IsingModel scaled =
        autoscale(encoded.model, ctx.device.h_range).model;
    std::optional<InitialState> init;
    if (ctx.method == TuningMethod::RA_HG) {
      InitialState state{x0};
      if (slack) state.values.push_back(1);
      init = std::move(state);
    }
    samples = run(scaled, decoded.schedule, decoded.hgain, init);
  }

  std::vector<Assignment> states;
  if (slack) {
    for (const auto& rec : samples.records()) {
      if (rec.state[static_cast<size_t>(*slack)] != 1) continue;
      Assignment reduced = rec.state;
      reduced.erase(reduced.begin() + *slack);
      states.push_back(std::move(reduced));
    }
    if (states.empty()) return std::nullopt;  // z = -1 across the batch
  } else {
    for (const auto& rec : samples.records()) states.push_back(rec.state);
  }

  std::optional<double> best;
  for (const auto& state : states) {
    std::optional<double> value;
    if (ctx.problem_class == ProblemClass::MaxCut) {
      value = score_cut(graph, state);
    } else {
      value = score_clique(graph, state);
    }
    if (value && (!best || *value > *best)) best = value;
  }
  return best;
}

double objective_fitness(const std::vector<double>& point,
                         const SearchSpace& space, const FitnessContext& ctx,
                         std::uint64_t call_seed) {
  DecodedPoint decoded = [&]() -> DecodedPoint {
    try {
      return decode_point(point, space, ctx);
    } catch (const InvalidSchedule&) {
      return DecodedPoint{-1.0, -1.0, forward_anneal(1.0), std::nullopt};
    } catch (const InvalidAnnealTime&) {
      return DecodedPoint{-1.0, -1.0, forward_anneal(1.0), std::nullopt};
    }
  }();
  if (decoded.alpha1 < 0.0) return ctx.failure_penalty;

  double total = 0.0;
  for (size_t i = 0; i < ctx.models.size(); ++i) {
    const auto value = best_instance_value(ctx, static_cast<int>(i), decoded,
                                           mix_seed(call_seed, i));
    if (!value) return ctx.failure_penalty;
    total += *value - ctx.baselines[i].best_value;
  }
  return total / static_cast<double>(ctx.models.size());
}

}  // namespace

double cut_fitness(const std::vector<double>& point, const SearchSpace& space,
                   const FitnessContext& ctx, std::uint64_t call_seed) {
  return objective_fitness(point, space, ctx, call_seed);
}

double clique_fitness(const std::vector<double>& point,
                      const SearchSpace& space, const FitnessContext& ctx,
                      std::uint64_t call_seed) {
  return objective_fitness(point, space, ctx, call_seed);
}

FitnessContext make_fitness_context(ProblemClass problem_class,
                                    TuningMethod method, double density,
                                    const DeviceProfile& device,
                                    const SimParams& sim,
                                    const EnvelopeCurves& curves,
                                    std::uint64_t seed, int num_graphs,
                                    int graph_n, int reads,
                                    double anneal_time_us) {
  FitnessContext ctx;
  ctx.problem_class = problem_class;
  ctx.method = method;
  ctx.device = device;
  ctx.sim = sim;
  ctx.curves = curves;
  ctx.reads = reads;
  ctx.anneal_time_us = anneal_time_us;

  SimulatedSampler sampler(sim, curves);
  for (int i = 0; i < num_graphs; ++i) {
    WeightedGraph graph = erdos_renyi(graph_n, density, mix_seed(seed, i));
    IsingModel model = problem_class == ProblemClass::MaxCut
                           ? max_cut_ising(graph)
                           : max_clique_ising(graph);
    const SampleSet batch =
        sampler.sample(model, reads, anneal_time_us, mix_seed(seed, 1000 + i));
    const std::string id = to_string(problem_class) + "_d" +
                           format_double(density) + "_g" + std::to_string(i);
    bool found = false;
    for (const auto& rec : batch.records()) {
      std::optional<double> value =
          problem_class == ProblemClass::MaxCut
              ? std::optional<double>(score_cut(graph, rec.state))
              : score_clique(graph, rec.state);
      if (!value) continue;
      Baseline baseline;
      baseline.problem_id = id;
      baseline.best_value = *value;
      baseline.best_energy = rec.energy;
      baseline.num_anneals = reads;
      baseline.anneal_time_us = anneal_time_us;
      ctx.baselines.push_back(baseline);
      ctx.seeds.push_back(rec.state);
      found = true;
      break;
    }
    if (!found) {
      throw NoValidSolution("make_fitness_context: no scoring sample for " + id);
    }
    ctx.graphs.push_back(std::move(graph));
    ctx.models.push_back(std::move(model));
  }
  return ctx;
}

namespace {

constexpr double kMaxcutAlpha1[9] = {0.16, 0.23, 0.51, 0.48, 0.41,
                                     0.48, 0.63, 0.93, 0.33};
constexpr double kMaxcliqueAlpha1[9] = {0.3271, 0.2709, 0.1997, 0.1542, 0.3467,
                                        0.2602, 0.0292, 0.0334, 0.0370};
constexpr double kMaxcliqueAlpha2[9] = {0.2997, 0.8897, 0.5401, 0.9246, 0.2473,
                                        0.7586, 0.7455, 0.0210, 0.5121};

int density_index(double density) {
  const int idx = static_cast<int>(std::lround(density * 10.0)) - 1;
  if (idx < 0 || idx > 8 ||
      std::abs(density * 10.0 - std::lround(density * 10.0)) > 1e-9) {
    throw Error("density must be one of 0.1, 0.2, ..., 0.9");
  }
  return idx;
}

}  // namespace

double default_maxcut_alpha1(double density) {
  return kMaxcutAlpha1[density_index(density)];
}

std::pair<double, double> default_maxclique_alphas(double density) {
  const int idx = density_index(density);
  return {kMaxcliqueAlpha1[idx], kMaxcliqueAlpha2[idx]};
}

SearchSpace make_search_space(ProblemClass problem_class, TuningMethod method,
                              const DeviceProfile& device,
                              bool include_scaling) {
  SearchSpace space;
  if (include_scaling && method != TuningMethod::RA) {
    space.dims.push_back({"alpha1", 0.01, 1.0});
    if (problem_class == ProblemClass::MaxClique) {
      space.dims.push_back({"alpha2", 0.01, 1.0});
    }
  }
  if (method == TuningMethod::RA || method == TuningMethod::RA_HG) {
    space.dims.push_back({"p1", 0.1, 0.9});
    space.dims.push_back({"p2", 0.1, 0.9});
  }
  if (method == TuningMethod::HG || method == TuningMethod::RA_HG) {
    space.dims.push_back({"hg_t", 0.01, 0.99});
    space.dims.push_back({"hg_g", 0.0, device.g_max});
  }
  space.validate();
  return space;
}

TuneOutcome tune_pipeline(ProblemClass problem_class, double density,
                          const DeviceProfile& device, TuneStage stage,
                          const TuneOptions& options) {
  FitnessContext ctx = make_fitness_context(
      problem_class, options.method, density, device, options.sim,
      options.curves, options.seed, options.num_graphs, options.graph_n,
      options.reads, options.anneal_time_us);

  // scaling defaults: previous outcome first, then the shipped tables
  if (options.previous) {
    ctx.alpha1 = options.previous->alpha1;
    ctx.alpha2 = options.previous->alpha2;
  } else if (problem_class == ProblemClass::MaxCut) {
    ctx.alpha1 = default_maxcut_alpha1(density);
    ctx.alpha2 = 0.0;
  } else {
    const auto alphas = default_maxclique_alphas(density);
    ctx.alpha1 = alphas.first;
    ctx.alpha2 = alphas.second;
  }

  SearchSpace space;
  BoOptions bo;
  bo.init_points = options.init_points;
  bo.n_iter = options.n_iter;
  bo.noise_alpha = options.noise_alpha;
  bo.seed = mix_seed(options.seed, 0xB0);
  bo.failure_penalty = ctx.failure_penalty;

  switch (stage) {
    case TuneStage::ScalingAndSchedule:
      space = make_search_space(problem_class, options.method, device,
                                /*include_scaling=*/true);
      break;
    case TuneStage::ScheduleOnly:
      space = make_search_space(problem_class, options.method, device,
                                /*include_scaling=*/false);
      break;
    case TuneStage::ScalingRefit: {
      if (options.method == TuningMethod::RA) {
        throw Error("tune_pipeline: the RA method has no scaling constants");
      }
      if (options.previous) {
        if (!options.previous->anneal_points.empty()) {
          const auto& pts = options.previous->anneal_points;
          const AnnealKind kind = pts.front().value == 1.0
                                      ? AnnealKind::Reverse
                                      : AnnealKind::Forward;
          ctx.fixed_schedule = AnnealSchedule(pts, kind);
        }
        if (!options.previous->hgain_points.empty()) {
          ctx.fixed_hgain = HGainSchedule(options.previous->hgain_points);
        }
      }
      space.dims.push_back({"alpha1", 0.01, 1.0});
      std::vector<double> warm{ctx.alpha1};
      if (problem_class == ProblemClass::MaxClique) {
        space.dims.push_back({"alpha2", 0.01, 1.0});
        warm.push_back(ctx.alpha2);
      }
      space.validate();
      bo.warm_start = std::move(warm);
      break;
    }
  }

  std::uint64_t call_index = 0;
  auto fitness = [&](const std::vector<double>& point) {
    const std::uint64_t call_seed = mix_seed(options.seed, 0xF17 + call_index);
    ++call_index;
    return objective_fitness(point, space, ctx, call_seed);
  };

  TuneOutcome outcome{TunedConfig{}, bayes_optimize(fitness, space, bo)};

  const DecodedPoint decoded =
      decode_point(outcome.result.best_point, space, ctx);
  outcome.config.problem_class = to_string(problem_class);
  outcome.config.density = density;
  outcome.config.method = to_string(options.method);
  outcome.config.alpha1 = decoded.alpha1;
  outcome.config.alpha2 =
      problem_class == ProblemClass::MaxClique ? decoded.alpha2 : 0.0;
  outcome.config.anneal_points = decoded.schedule.points();
  if (decoded.hgain) {
    outcome.config.hgain_points = decoded.hgain->points();
  }
  outcome.config.anneal_time_us = options.anneal_time_us;
  return outcome;
}

GridScanResult alpha1_grid_scan(const std::function<double(double)>& fitness,
                                double lo, double hi, double step) {
  if (!(lo < hi) || step <= 0.0) {
    throw Error("alpha1_grid_scan: need lo < hi and positive step");
  }
  GridScanResult result;
  result.best_value = -std::numeric_limits<double>::infinity();
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1.5));
  for (int i = 0; i < count; ++i) {
    const double x = lo + step * i;
    if (x > hi + step / 2.0) break;
    const double v = fitness(x);
    result.history.emplace_back(x, v);
    if (v > result.best_value) {
      result.best_value = v;
      result.best_x = x;
    }
  }
  return result;
}

void write_tuned_config_json(const TunedConfig& config, const std::string& path,
                             const std::string& config_hash) {
  nlohmann::json j;
  j["problem_class"] = config.problem_class;
  j["density"] = config.density;
  j["method"] = config.method;
  j["alpha1"] = config.alpha1;
  j["alpha2"] = config.alpha2;
  j["anneal_time_us"] = config.anneal_time_us;
  auto points_json = [](const std::vector<SchedulePoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) arr.push_back({p.t_us, p.value});
    return arr;
  };
  j["schedule"] = {{"anneal", points_json(config.anneal_points)},
                   {"hgain", points_json(config.hgain_points)}};
  if (!config_hash.empty()) j["run_config_hash"] = config_hash;
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write tuned config: " + path);
  }
  out << j.dump(2) << "\n";
}

void write_heatmap_csv(const GpSurrogate& surrogate, const SearchSpace& space,
                       int grid_points, std::ostream& out,
                       const std::string& config_hash) {
  if (space.size() != 2 || surrogate.dims() != 2) {
    throw Error("write_heatmap_csv: needs a 2-dimensional space");
  }
  if (grid_points < 2) {
    throw Error("write_heatmap_csv: need at least a 2x2 grid");
  }
  if (!config_hash.empty()) {
    out << "# run_config_hash=" << config_hash << "\n";
  }
  out << "x,y,posterior_mean,posterior_variance\n";
  for (int i = 0; i < grid_points; ++i) {
    for (int j = 0; j < grid_points; ++j) {
      const double ux = static_cast<double>(i) / (grid_points - 1);
      const double uy = static_cast<double>(j) / (grid_points - 1);
      const auto p = surrogate.predict({ux, uy});
      const auto real = space.from_unit({ux, uy});
      out << format_double(real[0]) << "," << format_double(real[1]) << ","
          << format_double(p.mean) << "," << format_double(p.variance) << "\n";
    }
  }
}

}  // namespace annealforge
