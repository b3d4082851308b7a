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

#include <optional>
#include <string>
#include <vector>

#include "annealforge/ising.hpp"

namespace annealforge {

/// The classical state an anneal is biased toward; spin domain only.
struct InitialState {
  std::vector<int> values;  // entries in {-1, +1}

  int size() const { return static_cast<int>(values.size()); }
  void validate() const;
};

struct HomogenizeResult {
  IsingModel model;                 // purely quadratic
  std::optional<int> slack_index;   // present iff the input had linear terms
};

/// Replaces every linear term h_i x_i by the coupler h_i x_i z with one
/// new slack spin z appended at index n.  The original energies are
/// recovered at z = +1; a model without linear terms passes through
/// unchanged.
HomogenizeResult homogenize(const IsingModel& model);

/// Linear coefficients h_i = -x0_i, whose unique minimizer is x0 with
/// value -n.
std::vector<double> bias_term(const InitialState& x0);

/// The biased model actually handed to the annealer:
///   alpha1 * sum_i(-x0_i x_i) - alpha2 * z + Q'(x, z).
/// When the source has no linear terms the slack spin and the alpha2
/// term are omitted.
struct EncodedProblem {
  IsingModel model;                 // spin domain
  std::optional<int> slack_index;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::string source_id;
};

EncodedProblem encode(const IsingModel& model, const InitialState& x0,
                      double alpha1, double alpha2,
                      const std::string& source_id = "");

struct SlackFilterResult {
  SampleSet samples;        // slack column removed, energies on the original model
  bool all_filtered = false;  // true when every read had z = -1
};

/// Keeps the records with z = +1, drops the slack column, and re-derives
/// energies on the original (pre-encoding) model.
SlackFilterResult filter_slack(const SampleSet& samples, int slack_index,
                               const IsingModel& original_model);

// x0 files: whitespace separated -1/+1 values, '#' comments.
InitialState read_initial_state_file(const std::string& path);
void write_initial_state_file(const InitialState& x0, const std::string& path);

}  // namespace annealforge
