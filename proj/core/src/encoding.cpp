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

#include "annealforge/encoding.hpp"

#include <fstream>
#include <sstream>

namespace annealforge {

void InitialState::validate() const {
  for (int v : values) {
    if (v != -1 && v != 1) {
      throw InvalidAssignment("InitialState: entries must be -1 or +1");
    }
  }
}

HomogenizeResult homogenize(const IsingModel& model) {
  if (model.domain() != Domain::Spin) {
    throw Error("homogenize: spin-domain model required");
  }
  if (!model.has_linear_terms()) {
    return {model, std::nullopt};
  }
  const int n = model.num_vars();
  IsingModel out(n + 1, Domain::Spin);
  for (const auto& [key, v] : model.quadratic()) {
    out.add_coupler(key.first, key.second, v);
  }
  for (int i = 0; i < n; ++i) {
    const double h = model.linear()[static_cast<size_t>(i)];
    if (h != 0.0) out.add_coupler(i, n, h);
  }
  out.set_offset(model.offset());
  return {std::move(out), n};
}

std::vector<double> bias_term(const InitialState& x0) {
  x0.validate();
  std::vector<double> h(x0.values.size());
  for (size_t i = 0; i < x0.values.size(); ++i) {
    h[i] = -static_cast<double>(x0.values[i]);
  }
  return h;
}

EncodedProblem encode(const IsingModel& model, const InitialState& x0,
                      double alpha1, double alpha2,
                      const std::string& source_id) {
  if (alpha1 < 0.0 || alpha2 < 0.0) {
    throw InvalidScale("encode: scaling constants must be nonnegative");
  }
  if (x0.size() != model.num_vars()) {
    throw InvalidAssignment("encode: initial state length " +
                            std::to_string(x0.size()) +
                            " does not match the model");
  }
  auto hom = homogenize(model);
  EncodedProblem out{std::move(hom.model), hom.slack_index, alpha1,
                     hom.slack_index ? alpha2 : 0.0, source_id};
  const auto bias = bias_term(x0);
  for (int i = 0; i < model.num_vars(); ++i) {
    const double b = alpha1 * bias[static_cast<size_t>(i)];
    if (b != 0.0) out.model.add_field(i, b);
  }
  if (out.slack_index) {
    if (alpha2 != 0.0) out.model.add_field(*out.slack_index, -alpha2);
  }
  return out;
}

SlackFilterResult filter_slack(const SampleSet& samples, int slack_index,
                               const IsingModel& original_model) {
  std::vector<Assignment> retained;
  for (const auto& rec : samples.records()) {
    if (slack_index < 0 || slack_index >= static_cast<int>(rec.state.size())) {
      throw Error("filter_slack: slack index out of range");
    }
    if (rec.state[static_cast<size_t>(slack_index)] != 1) continue;
    Assignment reduced = rec.state;
    reduced.erase(reduced.begin() + slack_index);
    for (int k = 0; k < rec.num_occurrences; ++k) {
      retained.push_back(reduced);
    }
  }
  SlackFilterResult result;
  result.all_filtered = retained.empty();
  result.samples = SampleSet::from_reads(original_model, retained,
                                         samples.rng_seed());
  return result;
}

InitialState read_initial_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open initial state file: " + path);
  }
  InitialState x0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) {
      if (tok.front() == '#') break;
      try {
        x0.values.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw IoError("initial state file: bad value '" + tok + "'");
      }
    }
  }
  x0.validate();
  return x0;
}

void write_initial_state_file(const InitialState& x0, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write initial state file: " + path);
  }
  for (size_t i = 0; i < x0.values.size(); ++i) {
    out << (i ? " " : "") << x0.values[i];
  }
  out << "\n";
}

}  // namespace annealforge
