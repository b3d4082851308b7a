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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "annealforge/errors.hpp"

namespace annealforge {

enum class Domain { Spin, Binary };

std::string to_string(Domain d);

/// A variable assignment; entries are -1/+1 for Spin models and 0/1 for
/// Binary models, one per variable.
using Assignment = std::vector<int>;

/// Quadratic model  E(x) = sum_i h_i x_i + sum_{i<j} J_ij x_i x_j + offset.
///
/// Coupler keys are canonical unordered pairs (i < j, stored once);
/// inserting (j, i) or a duplicate pair accumulates into the same entry.
/// Models are value types and are not mutated by any library operation,
/// so they can be shared freely across threads.
class IsingModel {
 public:
  explicit IsingModel(int num_vars, Domain domain = Domain::Spin);

  int num_vars() const { return num_vars_; }
  Domain domain() const { return domain_; }
  double offset() const { return offset_; }
  void set_offset(double v) { offset_ = v; }

  /// Adds v to the linear coefficient of variable i.
  void add_field(int i, double v);
  /// Adds v to the coupler on the unordered pair {i, j}; i != j required.
  void add_coupler(int i, int j, double v);

  const std::vector<double>& linear() const { return linear_; }
  const std::map<std::pair<int, int>, double>& quadratic() const {
    return quadratic_;
  }

  bool has_linear_terms() const;
  double max_abs_linear() const;
  double max_abs_coupler() const;

  /// Per-variable neighbor list (j, J_ij), sorted by j.
  std::vector<std::vector<std::pair<int, double>>> adjacency() const;

  /// Sum_j |J_ij| maximised over rows; together with max_abs_linear this
  /// bounds how strong a bias term must be to dominate the couplers.
  double max_row_coupler_norm() const;

 private:
  void check_var(int i) const;

  int num_vars_;
  Domain domain_;
  double offset_ = 0.0;
  std::vector<double> linear_;
  std::map<std::pair<int, int>, double> quadratic_;
};

/// Throws InvalidAssignment unless a has the model's length and domain.
void check_assignment(const IsingModel& model, const Assignment& a);

/// Evaluates E(a) including the offset.
double energy(const IsingModel& model, const Assignment& a);

/// Exact change of variables x = 2b - 1; energies are preserved for every
/// assignment via the offset.  Converting to the model's own domain copies.
IsingModel convert(const IsingModel& model, Domain target);

/// Maps a Spin assignment to the equivalent Binary one or back.
Assignment convert_assignment(const Assignment& a, Domain from, Domain to);

struct AutoscaleResult {
  IsingModel model;
  double scale;  // single positive divisor applied to h, J and offset
};

/// Divides all coefficients by scale = max(1, max|J|, max|h| / h_range)
/// so couplers land in [-1, 1] and fields in [-h_range, h_range].  The
/// energy landscape keeps its shape; the argmin set is unchanged.
AutoscaleResult autoscale(const IsingModel& model, double h_range);

struct BruteForceResult {
  double min_energy;
  std::vector<Assignment> ground_states;  // in enumeration order
};

/// Exhaustive enumeration of all 2^n assignments.  Throws TooLarge above
/// the cap.
BruteForceResult brute_force(const IsingModel& model, int max_vars = 24);

struct SampleRecord {
  Assignment state;
  double energy = 0.0;
  int num_occurrences = 0;
  int first_read = 0;  // read index of first occurrence; stable tiebreak
};

/// A batch of read-out assignments aggregated by state and sorted by
/// ascending energy (first_read breaks energy ties).  Energies always
/// equal energy(model, state) for the model the set was built from.
class SampleSet {
 public:
  SampleSet() = default;

  static SampleSet from_reads(const IsingModel& model,
                              const std::vector<Assignment>& reads,
                              std::uint64_t rng_seed);

  const std::vector<SampleRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  int total_reads() const;

  /// Lowest-energy record; ties already resolved by first occurrence.
  const SampleRecord& best() const;

  std::uint64_t rng_seed() const { return rng_seed_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  void set_metadata(const std::string& key, const std::string& value);

 private:
  std::vector<SampleRecord> records_;
  std::uint64_t rng_seed_ = 0;
  std::map<std::string, std::string> metadata_;
};

// --- problem file format ---------------------------------------------------
//
//   # comment
//   vars N domain {spin|binary}
//   offset value          (optional, omitted when zero)
//   h i value
//   J i j value

IsingModel read_problem(std::istream& in);
IsingModel read_problem_file(const std::string& path);
void write_problem(const IsingModel& model, std::ostream& out);
void write_problem_file(const IsingModel& model, const std::string& path);

/// Samples CSV: header spin_0..spin_{n-1},energy,occurrences, one row
/// per record; a `# run_config_hash=` comment line when a hash is given.
void write_samples_csv(const SampleSet& samples, std::ostream& out,
                       const std::string& config_hash = "");

/// Formats a double with enough digits to round-trip exactly ("%.17g").
std::string format_double(double v);

}  // namespace annealforge
