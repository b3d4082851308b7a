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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "annealforge/encoding.hpp"
#include "annealforge/ising.hpp"
#include "annealforge/problems.hpp"
#include "annealforge/qemc.hpp"
#include "annealforge/schedule.hpp"
#include "annealforge/simulator.hpp"
#include "annealforge/topology.hpp"
#include "annealforge/tuner.hpp"
#include "json_config.hpp"
#include "run_config.hpp"

namespace fs = std::filesystem;
using namespace annealforge;
using annealforge::cli::JsonConfig;
using annealforge::cli::RunConfig;

namespace {

/// Exit code 2: the inputs parsed but failed semantic validation; the
/// details go to stderr.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error("cannot create output directory " + dir + ": " + ec.message());
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path);
  }
  return out;
}

void write_meta_file(const RunConfig& config, const std::string& path) {
  nlohmann::json meta{{"command", config.command()},
                      {"run_config_hash", config.hash()},
                      {"config", config.values()}};
  open_out(path) << meta.dump(2) << "\n";
}

struct SimFlags {
  int sweeps_per_us = 10;
  double beta = 10.0;
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sweeps-per-us", sweeps_per_us,
                    "Monte Carlo sweeps per microsecond of anneal time");
    cmd->add_option("--beta", beta, "inverse Monte Carlo temperature");
    cmd->add_option("--threads", threads,
                    "read-level parallelism cap (0 = all cores)");
  }

  SimParams params(std::uint64_t seed, int reads) const {
    SimParams p;
    p.sweeps_per_us = sweeps_per_us;
    p.beta = beta;
    p.rng_seed = seed;
    p.num_reads = reads;
    p.num_threads = threads;
    return p;
  }

  nlohmann::json json() const {
    return {{"sweeps_per_us", sweeps_per_us},
            {"beta", beta},
            {"threads", threads}};
  }
};

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  std::string out;
  std::uint64_t seed = 0;
  int n = 65;
  double p = 0.5;
  int count = 1;
  std::string problem = "none";
  int m = 16;
  int precision = 10;
  int node_defects = 0;
  int edge_defects = 0;
  bool full_lattice = false;
};

int run_generate(const GenerateArgs& args) {
  const std::uint64_t seed = cli::apply_seed_env(args.seed);
  nlohmann::json values{{"kind", args.kind}, {"out", args.out}, {"seed", seed}};

  ensure_dir(args.out);
  if (args.kind == "er-graph") {
    values["n"] = args.n;
    values["p"] = args.p;
    values["count"] = args.count;
    values["problem"] = args.problem;
    RunConfig config("generate", values);
    for (int i = 0; i < args.count; ++i) {
      const WeightedGraph g = erdos_renyi(args.n, args.p, mix_seed(seed, i));
      char name[64];
      std::snprintf(name, sizeof(name), "graph_%03d.txt", i);
      {
        auto out = open_out(args.out + "/" + name);
        out << "# run_config_hash=" << config.hash() << "\n";
        write_weighted_graph(g, out);
      }
      if (args.problem != "none") {
        const IsingModel model = args.problem == "maxcut" ? max_cut_ising(g)
                                                          : max_clique_ising(g);
        std::snprintf(name, sizeof(name), "problem_%03d.txt", i);
        auto out = open_out(args.out + "/" + name);
        out << "# run_config_hash=" << config.hash() << "\n";
        write_problem(model, out);
      }
    }
    config.write_meta(args.out);
    return 0;
  }

  if (args.kind != "chimera-glass" && args.kind != "pegasus-glass") {
    throw CLI::ValidationError("generate",
                               "kind must be er-graph|chimera-glass|pegasus-glass");
  }
  values["m"] = args.m;
  values["precision"] = args.precision;
  values["node_defects"] = args.node_defects;
  values["edge_defects"] = args.edge_defects;
  if (args.kind == "pegasus-glass") values["full_lattice"] = args.full_lattice;
  RunConfig config("generate", values);

  HardwareGraph g = args.kind == "chimera-glass"
                        ? chimera(args.m)
                        : pegasus(args.m, !args.full_lattice);
  if (args.node_defects > 0 || args.edge_defects > 0) {
    g = inject_defects(g, args.node_defects, args.edge_defects,
                       mix_seed(seed, 1));
  }
  PrecisionSpec spec;
  spec.levels = args.precision;
  const IsingModel instance = spin_glass(g, spec, mix_seed(seed, 2));
  {
    auto out = open_out(args.out + "/graph.txt");
    out << "# run_config_hash=" << config.hash() << "\n";
    write_graph(g, out);
  }
  {
    auto out = open_out(args.out + "/instance.txt");
    out << "# run_config_hash=" << config.hash() << "\n";
    write_problem(instance, out);
  }
  config.write_meta(args.out);
  return 0;
}

// ------------------------------------------------------------------ anneal

struct AnnealArgs {
  std::string problem;
  std::string schedule;
  std::string hgain;
  std::string init;
  int reads = 1000;
  std::uint64_t seed = 0;
  std::string out;
  bool no_reinitialize = false;
  SimFlags sim;
};

int run_anneal(const AnnealArgs& args) {
  const std::uint64_t seed = cli::apply_seed_env(args.seed);
  const IsingModel model = read_problem_file(args.problem);
  const AnnealSchedule schedule = read_anneal_schedule_file(args.schedule);
  std::optional<HGainSchedule> hgain;
  if (!args.hgain.empty()) {
    hgain = read_hgain_schedule_file(args.hgain);
  }
  std::optional<InitialState> init;
  if (!args.init.empty()) {
    init = read_initial_state_file(args.init);
  }

  nlohmann::json values{{"problem", args.problem}, {"schedule", args.schedule},
                        {"hgain", args.hgain},     {"init", args.init},
                        {"reads", args.reads},     {"seed", seed},
                        {"out", args.out},
                        {"reinitialize_state", !args.no_reinitialize},
                        {"sim", args.sim.json()}};
  RunConfig config("anneal", values);

  SimParams params = args.sim.params(seed, args.reads);
  params.reinitialize_state = !args.no_reinitialize;
  const SampleSet samples = anneal(model, schedule, hgain, init, params);

  const fs::path out_path(args.out);
  if (out_path.has_parent_path()) {
    ensure_dir(out_path.parent_path().string());
  }
  {
    auto out = open_out(args.out);
    write_samples_csv(samples, out, config.hash());
  }
  write_meta_file(config, args.out + ".meta.json");
  return 0;
}

// ------------------------------------------------------------------ encode

struct EncodeArgs {
  std::string problem;
  std::string init;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::string out;
};

int run_encode(const EncodeArgs& args) {
  const IsingModel model = read_problem_file(args.problem);
  const InitialState x0 = read_initial_state_file(args.init);
  const EncodedProblem encoded = encode(model, x0, args.alpha1, args.alpha2,
                                        fs::path(args.problem).stem().string());

  nlohmann::json values{{"problem", args.problem},
                        {"init", args.init},
                        {"alpha1", args.alpha1},
                        {"alpha2", args.alpha2},
                        {"out", args.out}};
  RunConfig config("encode", values);

  ensure_dir(args.out);
  {
    auto out = open_out(args.out + "/encoded.txt");
    out << "# run_config_hash=" << config.hash() << "\n";
    write_problem(encoded.model, out);
  }
  nlohmann::json sidecar{{"alpha1", encoded.alpha1},
                         {"alpha2", encoded.alpha2},
                         {"source_id", encoded.source_id},
                         {"x0", x0.values},
                         {"run_config_hash", config.hash()}};
  if (encoded.slack_index) {
    sidecar["slack_index"] = *encoded.slack_index;
  } else {
    sidecar["slack_index"] = nullptr;
  }
  open_out(args.out + "/encoded.json") << sidecar.dump(2) << "\n";
  config.write_meta(args.out);
  return 0;
}

// -------------------------------------------------------------------- qemc

struct QemcArgs {
  std::string problem;
  std::string method = "ra";
  std::vector<double> s{0.5};
  std::vector<double> h_mid{0.0};
  std::vector<double> g0{2.0};
  double t_hg_zero = 10.0;
  int iterations = 20;
  int reads = 1000;
  double anneal_time = 100.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  std::uint64_t seed = 0;
  std::string device = "dw2000q";
  std::string out;
  bool emit_plotdata = false;
  SimFlags sim;
};

std::vector<QemcConfig> qemc_grid(const QemcArgs& args) {
  QemcConfig base;
  base.method = seeding_method_from_string(args.method);
  base.iterations = args.iterations;
  base.reads_per_iter = args.reads;
  base.anneal_time_us = args.anneal_time;
  base.t_hg_zero_us = args.t_hg_zero;
  base.alpha1 = args.alpha1;
  base.alpha2 = args.alpha2;
  base.g0 = args.g0.front();

  std::vector<QemcConfig> configs;
  switch (base.method) {
    case SeedingMethod::RA:
      for (double s : args.s) {
        QemcConfig c = base;
        c.s_pause = s;
        configs.push_back(c);
      }
      break;
    case SeedingMethod::HG:
      for (double g : args.g0) {
        QemcConfig c = base;
        c.g0 = g;
        configs.push_back(c);
      }
      break;
    case SeedingMethod::RA_HG:
    case SeedingMethod::FA_PAUSE_HG:
      for (double s : args.s) {
        for (double h : args.h_mid) {
          QemcConfig c = base;
          c.s_pause = s;
          c.h_mid = h;
          configs.push_back(c);
        }
      }
      break;
  }
  return configs;
}

int run_qemc_cmd(const QemcArgs& args) {
  const std::uint64_t seed = cli::apply_seed_env(args.seed);
  const IsingModel model = read_problem_file(args.problem);
  const DeviceProfile device = DeviceProfile::by_name(args.device);

  nlohmann::json values{
      {"problem", args.problem},   {"method", args.method},
      {"s", args.s},               {"h_mid", args.h_mid},
      {"g0", args.g0},             {"t_hg_zero", args.t_hg_zero},
      {"iterations", args.iterations}, {"reads", args.reads},
      {"anneal_time", args.anneal_time}, {"alpha1", args.alpha1},
      {"alpha2", args.alpha2},     {"seed", seed},
      {"device", args.device},     {"out", args.out},
      {"emit_plotdata", args.emit_plotdata}, {"sim", args.sim.json()}};
  RunConfig config("qemc", values);

  const std::vector<QemcConfig> configs = qemc_grid(args);
  const SimParams sim = args.sim.params(seed, args.reads);

  std::vector<QemcTrace> traces;
  try {
    traces = sweep(model, configs, device, sim, EnvelopeCurves::standard(), seed);
  } catch (const InvalidSchedule& e) {
    throw ValidationFailure(e.what());
  }

  ensure_dir(args.out);
  for (const auto& trace : traces) {
    const std::string label = trace.config.derived_label();
    {
      auto out = open_out(args.out + "/trace_" + label + ".csv");
      write_trace_csv(trace, out, config.hash());
    }
    if (args.emit_plotdata) {
      auto out = open_out(args.out + "/series_" + label + ".csv");
      out << "# run_config_hash=" << config.hash() << "\n";
      out << "iteration,min_energy\n";
      int iter = 1;
      for (const auto& rec : trace.iterations) {
        out << iter << "," << format_double(rec.min_energy) << "\n";
        ++iter;
      }
    }
  }
  config.write_meta(args.out);
  return 0;
}

// -------------------------------------------------------------------- tune

struct TuneArgs {
  std::string problem_class = "maxcut";
  double density = 0.5;
  std::string method = "hg";
  std::string stage = "joint";
  int init_points = 100;
  int n_iter = 200;
  double noise_alpha = 0.01;
  int reads = 1000;
  double anneal_time = 1.0;
  int graphs = 10;
  int graph_n = 65;
  std::uint64_t seed = 0;
  std::string device = "dw2000q";
  std::string out;
  std::string previous;
  bool dry_run = false;
  SimFlags sim;
};

TuningMethod tuning_method_from_string(const std::string& name) {
  if (name == "ra") return TuningMethod::RA;
  if (name == "hg") return TuningMethod::HG;
  if (name == "ra_hg") return TuningMethod::RA_HG;
  throw CLI::ValidationError("tune", "method must be ra|hg|ra_hg");
}

TuneStage tune_stage_from_string(const std::string& name) {
  if (name == "joint") return TuneStage::ScalingAndSchedule;
  if (name == "schedule") return TuneStage::ScheduleOnly;
  if (name == "refit") return TuneStage::ScalingRefit;
  throw CLI::ValidationError("tune", "stage must be joint|schedule|refit");
}

TunedConfig read_tuned_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open tuned config: " + path);
  }
  nlohmann::json j;
  in >> j;
  TunedConfig config;
  config.problem_class = j.at("problem_class").get<std::string>();
  config.density = j.at("density").get<double>();
  config.method = j.at("method").get<std::string>();
  config.alpha1 = j.at("alpha1").get<double>();
  config.alpha2 = j.at("alpha2").get<double>();
  config.anneal_time_us = j.at("anneal_time_us").get<double>();
  for (const auto& p : j.at("schedule").at("anneal")) {
    config.anneal_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  for (const auto& p : j.at("schedule").at("hgain")) {
    config.hgain_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return config;
}

int run_tune(const TuneArgs& args) {
  const std::uint64_t seed = cli::apply_seed_env(args.seed);
  const DeviceProfile device = DeviceProfile::by_name(args.device);
  const ProblemClass problem_class = args.problem_class == "maxcut"
                                         ? ProblemClass::MaxCut
                                         : ProblemClass::MaxClique;
  if (args.problem_class != "maxcut" && args.problem_class != "maxclique") {
    throw CLI::ValidationError("tune", "problem-class must be maxcut|maxclique");
  }

  TuneOptions options;
  options.method = tuning_method_from_string(args.method);
  options.init_points = args.init_points;
  options.n_iter = args.n_iter;
  options.noise_alpha = args.noise_alpha;
  options.seed = seed;
  options.num_graphs = args.graphs;
  options.graph_n = args.graph_n;
  options.reads = args.reads;
  options.anneal_time_us = args.anneal_time;
  options.sim = args.sim.params(seed, args.reads);
  if (!args.previous.empty()) {
    options.previous = read_tuned_config_json(args.previous);
  }
  const TuneStage stage = tune_stage_from_string(args.stage);

  nlohmann::json values{
      {"problem_class", args.problem_class}, {"density", args.density},
      {"method", args.method},               {"stage", args.stage},
      {"init_points", args.init_points},     {"n_iter", args.n_iter},
      {"noise_alpha", args.noise_alpha},     {"reads", args.reads},
      {"anneal_time", args.anneal_time},     {"graphs", args.graphs},
      {"graph_n", args.graph_n},             {"seed", seed},
      {"device", args.device},               {"out", args.out},
      {"previous", args.previous},           {"sim", args.sim.json()}};
  RunConfig config("tune", values);

  if (args.dry_run) {
    const bool scaling = stage != TuneStage::ScheduleOnly &&
                         options.method != TuningMethod::RA;
    SearchSpace space =
        stage == TuneStage::ScalingRefit
            ? SearchSpace{{{"alpha1", 0.01, 1.0}}}
            : make_search_space(problem_class, options.method, device, scaling);
    if (stage == TuneStage::ScalingRefit &&
        problem_class == ProblemClass::MaxClique) {
      space.dims.push_back({"alpha2", 0.01, 1.0});
    }
    std::cout << "search space for " << args.problem_class << "/" << args.method
              << " stage " << args.stage << ":\n";
    for (const auto& d : space.dims) {
      std::cout << "  " << d.name << " in [" << format_double(d.lo) << ", "
                << format_double(d.hi) << "]\n";
    }
    std::cout << "budget: init_points=" << options.init_points
              << " n_iter=" << options.n_iter
              << " alpha=" << format_double(options.noise_alpha) << "\n";
    return 0;
  }

  const TuneOutcome outcome =
      tune_pipeline(problem_class, args.density, device, stage, options);

  ensure_dir(args.out);
  write_tuned_config_json(outcome.config, args.out + "/tuned_config.json",
                          config.hash());
  {
    auto out = open_out(args.out + "/history.csv");
    out << "# run_config_hash=" << config.hash() << "\n";
    out << "index,value,failed";
    const int dims = static_cast<int>(outcome.result.history.empty()
                                          ? 0
                                          : outcome.result.history.front().point.size());
    for (int d = 0; d < dims; ++d) out << ",x" << d;
    out << "\n";
    int index = 0;
    for (const auto& obs : outcome.result.history) {
      out << index << "," << format_double(obs.value) << ","
          << (obs.failed ? 1 : 0);
      for (double v : obs.point) out << "," << format_double(v);
      out << "\n";
      ++index;
    }
  }
  if (outcome.result.surrogate.dims() == 2) {
    // rebuild the search space the result was fitted over
    SearchSpace space;
    if (stage == TuneStage::ScalingRefit) {
      space.dims = {{"alpha1", 0.01, 1.0}, {"alpha2", 0.01, 1.0}};
    } else {
      const bool scaling = stage == TuneStage::ScalingAndSchedule;
      space = make_search_space(problem_class, options.method, device, scaling);
    }
    if (space.size() == 2) {
      auto out = open_out(args.out + "/heatmap.csv");
      write_heatmap_csv(outcome.result.surrogate, space, 50, out, config.hash());
    }
  }
  config.write_meta(args.out);
  return 0;
}

// ---------------------------------------------------------------- plotdata

struct PlotdataArgs {
  std::string in;
  std::string out;
};

int run_plotdata(const PlotdataArgs& args) {
  nlohmann::json values{{"in", args.in}, {"out", args.out}};
  RunConfig config("plotdata", values);

  ensure_dir(args.out);
  std::vector<fs::path> traces;
  for (const auto& entry : fs::directory_iterator(args.in)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("trace_", 0) == 0 && entry.path().extension() == ".csv") {
      traces.push_back(entry.path());
    }
  }
  std::sort(traces.begin(), traces.end());
  for (const auto& path : traces) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot read " + path.string());
    }
    std::string stem = path.stem().string().substr(6);  // strip trace_
    auto out = open_out(args.out + "/series_" + stem + ".csv");
    out << "# run_config_hash=" << config.hash() << "\n";
    out << "iteration,min_energy\n";
    std::string line;
    bool past_header = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (!past_header) {
        past_header = true;  // column header
        continue;
      }
      const auto first = line.find(',');
      const auto second = line.find(',', first + 1);
      if (first == std::string::npos || second == std::string::npos) {
        throw Error(path.string() + ": malformed trace row");
      }
      out << line.substr(0, second) << "\n";
    }
  }
  config.write_meta(args.out);
  return 0;
}

// ------------------------------------------------------- validate-schedule

struct ValidateArgs {
  std::string schedule;
  std::string hgain;
  std::string device = "dw2000q";
};

int run_validate(const ValidateArgs& args) {
  const DeviceProfile device = DeviceProfile::by_name(args.device);
  std::vector<Violation> violations;
  if (!args.schedule.empty()) {
    const AnnealSchedule sched = read_anneal_schedule_file(args.schedule);
    const auto v = validate(sched, device);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (!args.hgain.empty()) {
    const HGainSchedule sched = read_hgain_schedule_file(args.hgain);
    const auto v = validate(sched, device);
    violations.insert(violations.end(), v.begin(), v.end());
  }
  if (args.schedule.empty() && args.hgain.empty()) {
    throw CLI::ValidationError("validate-schedule",
                               "need --schedule and/or --hgain");
  }
  if (!violations.empty()) {
    std::string msg = "schedule validation failed on " + device.name + ":";
    for (const auto& v : violations) {
      msg += "\n  " + v.message;
    }
    throw ValidationFailure(msg);
  }
  std::cout << "ok: schedule valid on " << device.name << "\n";
  return 0;
}

void attach_config(CLI::App* cmd) {
  cmd->set_config("--config", "", "JSON config file with flat flag overrides");
  cmd->config_formatter(std::make_shared<JsonConfig>());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical toolkit for initial-state-encoded anneal experiments"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "generate graphs and spin-glass instances");
  attach_config(generate);
  generate->add_option("kind", gen.kind, "er-graph|chimera-glass|pegasus-glass")
      ->required();
  generate->add_option("--out", gen.out, "output directory")->required();
  generate->add_option("--seed", gen.seed, "rng seed");
  generate->add_option("--n", gen.n, "er-graph vertex count");
  generate->add_option("--p", gen.p, "er-graph edge probability");
  generate->add_option("--count", gen.count, "number of er-graphs");
  generate->add_option("--problem", gen.problem,
                       "also emit an Ising instance: none|maxcut|maxclique");
  generate->add_option("--m", gen.m, "lattice size (chimera/pegasus)");
  generate->add_option("--precision", gen.precision,
                       "coupler precision levels (10|100|200)");
  generate->add_option("--node-defects", gen.node_defects,
                       "random node removals");
  generate->add_option("--edge-defects", gen.edge_defects,
                       "random edge removals");
  generate->add_flag("--full-lattice", gen.full_lattice,
                     "pegasus: keep qubits outside the fabric");
  generate->callback([&]() { run_generate(gen); });

  AnnealArgs ann;
  CLI::App* anneal_cmd =
      app.add_subcommand("anneal", "run a batch of simulated anneals");
  attach_config(anneal_cmd);
  anneal_cmd->add_option("--problem", ann.problem, "problem file")->required();
  anneal_cmd->add_option("--schedule", ann.schedule, "anneal schedule file")
      ->required();
  anneal_cmd->add_option("--hgain", ann.hgain, "h-gain schedule file");
  anneal_cmd->add_option("--init", ann.init, "initial state file");
  anneal_cmd->add_option("--reads", ann.reads, "number of anneals");
  anneal_cmd->add_option("--seed", ann.seed, "rng seed");
  anneal_cmd->add_option("--out", ann.out, "samples CSV path")->required();
  anneal_cmd->add_flag("--no-reinitialize", ann.no_reinitialize,
                       "chain reads instead of restarting each one");
  ann.sim.attach(anneal_cmd);
  anneal_cmd->callback([&]() { run_anneal(ann); });

  EncodeArgs enc;
  CLI::App* encode_cmd = app.add_subcommand(
      "encode", "bias a problem toward an initial state");
  attach_config(encode_cmd);
  encode_cmd->add_option("--problem", enc.problem, "problem file")->required();
  encode_cmd->add_option("--init", enc.init, "initial state file")->required();
  encode_cmd->add_option("--alpha1", enc.alpha1, "bias scale")->required();
  encode_cmd->add_option("--alpha2", enc.alpha2, "slack scale");
  encode_cmd->add_option("--out", enc.out, "output directory")->required();
  encode_cmd->callback([&]() { run_encode(enc); });

  QemcArgs qemc;
  CLI::App* qemc_cmd = app.add_subcommand(
      "qemc", "iterated refinement with seeded state encoding");
  attach_config(qemc_cmd);
  qemc_cmd->add_option("--problem", qemc.problem, "problem file")->required();
  qemc_cmd->add_option("--method", qemc.method, "ra|hg|ra_hg|fa_pause_hg");
  qemc_cmd->add_option("--s", qemc.s, "pause anneal fraction(s)");
  qemc_cmd->add_option("--h-mid", qemc.h_mid, "gain(s) at the pause start");
  qemc_cmd->add_option("--g0", qemc.g0, "initial gain(s)");
  qemc_cmd->add_option("--t-hg-zero", qemc.t_hg_zero,
                       "hg method: time the gain reaches zero (us)");
  qemc_cmd->add_option("--iterations", qemc.iterations, "refinement steps");
  qemc_cmd->add_option("--reads", qemc.reads, "anneals per iteration");
  qemc_cmd->add_option("--anneal-time", qemc.anneal_time,
                       "total anneal time (us)");
  qemc_cmd->add_option("--alpha1", qemc.alpha1, "bias scale");
  qemc_cmd->add_option("--alpha2", qemc.alpha2, "slack scale");
  qemc_cmd->add_option("--seed", qemc.seed, "rng seed");
  qemc_cmd->add_option("--device", qemc.device,
                       "dw2000q|adv4|adv6|custom:<path>");
  qemc_cmd->add_option("--out", qemc.out, "output directory")->required();
  qemc_cmd->add_flag("--emit-plotdata", qemc.emit_plotdata,
                     "also write per-config series files");
  qemc.sim.attach(qemc_cmd);
  qemc_cmd->callback([&]() { run_qemc_cmd(qemc); });

  TuneArgs tune;
  CLI::App* tune_cmd = app.add_subcommand(
      "tune", "Bayesian optimization of scaling and schedule parameters");
  attach_config(tune_cmd);
  tune_cmd->add_option("--problem-class", tune.problem_class,
                       "maxcut|maxclique");
  tune_cmd->add_option("--density", tune.density, "graph density (0.1..0.9)");
  tune_cmd->add_option("--method", tune.method, "ra|hg|ra_hg");
  tune_cmd->add_option("--stage", tune.stage, "joint|schedule|refit");
  tune_cmd->add_option("--init-points", tune.init_points,
                       "random exploration points");
  tune_cmd->add_option("--n-iter", tune.n_iter, "optimization steps");
  tune_cmd->add_option("--noise-alpha", tune.noise_alpha,
                       "observation noise level");
  tune_cmd->add_option("--reads", tune.reads, "anneals per fitness call");
  tune_cmd->add_option("--anneal-time", tune.anneal_time,
                       "anneal time for fitness batches (us)");
  tune_cmd->add_option("--graphs", tune.graphs, "instances per density");
  tune_cmd->add_option("--graph-n", tune.graph_n, "vertices per instance");
  tune_cmd->add_option("--seed", tune.seed, "rng seed");
  tune_cmd->add_option("--device", tune.device,
                       "dw2000q|adv4|adv6|custom:<path>");
  tune_cmd->add_option("--out", tune.out, "output directory");
  tune_cmd->add_option("--previous", tune.previous,
                       "tuned_config.json to warm start from");
  tune_cmd->add_flag("--dry-run", tune.dry_run,
                     "print the decoded search space and exit");
  tune.sim.attach(tune_cmd);
  tune_cmd->callback([&]() {
    if (!tune.dry_run && tune.out.empty()) {
      throw CLI::ValidationError("tune", "--out is required unless --dry-run");
    }
    run_tune(tune);
  });

  PlotdataArgs plot;
  CLI::App* plot_cmd = app.add_subcommand(
      "plotdata", "reshape qemc traces into per-config series files");
  attach_config(plot_cmd);
  plot_cmd->add_option("--in", plot.in, "directory of trace CSVs")->required();
  plot_cmd->add_option("--out", plot.out, "output directory")->required();
  plot_cmd->callback([&]() { run_plotdata(plot); });

  ValidateArgs val;
  CLI::App* val_cmd = app.add_subcommand(
      "validate-schedule", "check schedules against a device profile");
  attach_config(val_cmd);
  val_cmd->add_option("--schedule", val.schedule, "anneal schedule file");
  val_cmd->add_option("--hgain", val.hgain, "h-gain schedule file");
  val_cmd->add_option("--device", val.device, "dw2000q|adv4|adv6|custom:<path>");
  val_cmd->callback([&]() { run_validate(val); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ValidationFailure& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
