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

#include "annealforge/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace annealforge {

std::string to_string(Domain d) {
  return d == Domain::Spin ? "spin" : "binary";
}

IsingModel::IsingModel(int num_vars, Domain domain)
    : num_vars_(num_vars), domain_(domain), linear_(static_cast<size_t>(std::max(num_vars, 0)), 0.0) {
  if (num_vars < 0) {
    throw Error("IsingModel: negative variable count");
  }
}

void IsingModel::check_var(int i) const {
  if (i < 0 || i >= num_vars_) {
    throw Error("IsingModel: variable index " + std::to_string(i) +
                " outside [0, " + std::to_string(num_vars_) + ")");
  }
}

void IsingModel::add_field(int i, double v) {
  check_var(i);
  linear_[static_cast<size_t>(i)] += v;
}

void IsingModel::add_coupler(int i, int j, double v) {
  check_var(i);
  check_var(j);
  if (i == j) {
    throw Error("IsingModel: coupler requires two distinct variables");
  }
  if (i > j) std::swap(i, j);
  quadratic_[{i, j}] += v;
}

bool IsingModel::has_linear_terms() const {
  return std::any_of(linear_.begin(), linear_.end(),
                     [](double v) { return v != 0.0; });
}

double IsingModel::max_abs_linear() const {
  double m = 0.0;
  for (double v : linear_) m = std::max(m, std::abs(v));
  return m;
}

double IsingModel::max_abs_coupler() const {
  double m = 0.0;
  for (const auto& [key, v] : quadratic_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<std::vector<std::pair<int, double>>> IsingModel::adjacency() const {
  std::vector<std::vector<std::pair<int, double>>> adj(
      static_cast<size_t>(num_vars_));
  for (const auto& [key, v] : quadratic_) {
    adj[static_cast<size_t>(key.first)].emplace_back(key.second, v);
    adj[static_cast<size_t>(key.second)].emplace_back(key.first, v);
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
  }
  return adj;
}

double IsingModel::max_row_coupler_norm() const {
  std::vector<double> row(static_cast<size_t>(num_vars_), 0.0);
  for (const auto& [key, v] : quadratic_) {
    row[static_cast<size_t>(key.first)] += std::abs(v);
    row[static_cast<size_t>(key.second)] += std::abs(v);
  }
  double m = 0.0;
  for (double v : row) m = std::max(m, v);
  return m;
}

void check_assignment(const IsingModel& model, const Assignment& a) {
  if (static_cast<int>(a.size()) != model.num_vars()) {
    throw InvalidAssignment("assignment length " + std::to_string(a.size()) +
                            " does not match model with " +
                            std::to_string(model.num_vars()) + " variables");
  }
  for (int v : a) {
    const bool ok = model.domain() == Domain::Spin ? (v == -1 || v == 1)
                                                   : (v == 0 || v == 1);
    if (!ok) {
      throw InvalidAssignment("assignment value " + std::to_string(v) +
                              " outside the " + to_string(model.domain()) +
                              " domain");
    }
  }
}

double energy(const IsingModel& model, const Assignment& a) {
  check_assignment(model, a);
  double e = model.offset();
  const auto& h = model.linear();
  for (int i = 0; i < model.num_vars(); ++i) {
    e += h[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
  }
  for (const auto& [key, v] : model.quadratic()) {
    e += v * a[static_cast<size_t>(key.first)] * a[static_cast<size_t>(key.second)];
  }
  return e;
}

IsingModel convert(const IsingModel& model, Domain target) {
  if (model.domain() == target) {
    return model;
  }
  IsingModel out(model.num_vars(), target);
  double offset = model.offset();
  const auto& h = model.linear();
  if (target == Domain::Spin) {
    // b = (x + 1) / 2
    for (int i = 0; i < model.num_vars(); ++i) {
      const double a = h[static_cast<size_t>(i)];
      if (a != 0.0) out.add_field(i, a / 2.0);
      offset += a / 2.0;
    }
    for (const auto& [key, b] : model.quadratic()) {
      if (b == 0.0) continue;
      out.add_coupler(key.first, key.second, b / 4.0);
      out.add_field(key.first, b / 4.0);
      out.add_field(key.second, b / 4.0);
      offset += b / 4.0;
    }
  } else {
    // x = 2b - 1
    for (int i = 0; i < model.num_vars(); ++i) {
      const double hi = h[static_cast<size_t>(i)];
      if (hi != 0.0) out.add_field(i, 2.0 * hi);
      offset -= hi;
    }
    for (const auto& [key, j] : model.quadratic()) {
      if (j == 0.0) continue;
      out.add_coupler(key.first, key.second, 4.0 * j);
      out.add_field(key.first, -2.0 * j);
      out.add_field(key.second, -2.0 * j);
      offset += j;
    }
  }
  out.set_offset(offset);
  return out;
}

Assignment convert_assignment(const Assignment& a, Domain from, Domain to) {
  if (from == to) return a;
  Assignment out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    out[i] = to == Domain::Spin ? 2 * a[i] - 1 : (a[i] + 1) / 2;
  }
  return out;
}

AutoscaleResult autoscale(const IsingModel& model, double h_range) {
  if (model.num_vars() == 0) {
    throw Error("autoscale: empty model");
  }
  if (h_range <= 0.0) {
    throw InvalidScale("autoscale: h_range must be positive");
  }
  double scale = std::max({1.0, model.max_abs_coupler(),
                           model.max_abs_linear() / h_range});
  IsingModel out(model.num_vars(), model.domain());
  for (int i = 0; i < model.num_vars(); ++i) {
    const double v = model.linear()[static_cast<size_t>(i)];
    if (v != 0.0) out.add_field(i, v / scale);
  }
  for (const auto& [key, v] : model.quadratic()) {
    out.add_coupler(key.first, key.second, v / scale);
  }
  out.set_offset(model.offset() / scale);
  return {std::move(out), scale};
}

BruteForceResult brute_force(const IsingModel& model, int max_vars) {
  const int n = model.num_vars();
  if (n > max_vars) {
    throw TooLarge("brute_force: " + std::to_string(n) +
                   " variables exceeds cap " + std::to_string(max_vars));
  }
  const int lo = model.domain() == Domain::Spin ? -1 : 0;
  BruteForceResult result;
  result.min_energy = 0.0;
  Assignment a(static_cast<size_t>(n), lo);
  const std::uint64_t count = n >= 64 ? 0 : (std::uint64_t{1} << n);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (int i = 0; i < n; ++i) {
      a[static_cast<size_t>(i)] = ((mask >> i) & 1u) ? 1 : lo;
    }
    const double e = energy(model, a);
    if (mask == 0 || e < result.min_energy) {
      result.min_energy = e;
      result.ground_states.clear();
      result.ground_states.push_back(a);
    } else if (e == result.min_energy) {
      result.ground_states.push_back(a);
    }
  }
  return result;
}

SampleSet SampleSet::from_reads(const IsingModel& model,
                                const std::vector<Assignment>& reads,
                                std::uint64_t rng_seed) {
  SampleSet set;
  set.rng_seed_ = rng_seed;
  std::map<Assignment, std::pair<int, int>> counts;  // state -> (count, first_read)
  int read_index = 0;
  for (const auto& a : reads) {
    auto [it, inserted] = counts.try_emplace(a, 0, read_index);
    it->second.first += 1;
    ++read_index;
  }
  set.records_.reserve(counts.size());
  for (const auto& [state, info] : counts) {
    SampleRecord rec;
    rec.state = state;
    rec.energy = energy(model, state);
    rec.num_occurrences = info.first;
    rec.first_read = info.second;
    set.records_.push_back(std::move(rec));
  }
  std::sort(set.records_.begin(), set.records_.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return a.first_read < b.first_read;
            });
  return set;
}

int SampleSet::total_reads() const {
  int total = 0;
  for (const auto& rec : records_) total += rec.num_occurrences;
  return total;
}

const SampleRecord& SampleSet::best() const {
  if (records_.empty()) {
    throw Error("SampleSet: empty set has no best record");
  }
  return records_.front();
}

void SampleSet::set_metadata(const std::string& key, const std::string& value) {
  metadata_[key] = value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) {
    if (tok.front() == '#') break;
    tokens.push_back(tok);
  }
  return tokens;
}

double parse_real(const std::string& tok, int line_no) {
  try {
    size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError("problem file line " + std::to_string(line_no) +
                  ": bad real value '" + tok + "'");
  }
}

int parse_int(const std::string& tok, int line_no) {
  try {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError("problem file line " + std::to_string(line_no) +
                  ": bad integer '" + tok + "'");
  }
}

}  // namespace

IsingModel read_problem(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  IsingModel model(0);
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "vars" || tokens[2] != "domain") {
        throw IoError("problem file line " + std::to_string(line_no) +
                      ": expected 'vars N domain {spin|binary}'");
      }
      const int n = parse_int(tokens[1], line_no);
      Domain d;
      if (tokens[3] == "spin") {
        d = Domain::Spin;
      } else if (tokens[3] == "binary") {
        d = Domain::Binary;
      } else {
        throw IoError("problem file line " + std::to_string(line_no) +
                      ": unknown domain '" + tokens[3] + "'");
      }
      model = IsingModel(n, d);
      have_header = true;
      continue;
    }
    if (tokens[0] == "h" && tokens.size() == 3) {
      model.add_field(parse_int(tokens[1], line_no), parse_real(tokens[2], line_no));
    } else if (tokens[0] == "J" && tokens.size() == 4) {
      model.add_coupler(parse_int(tokens[1], line_no), parse_int(tokens[2], line_no),
                        parse_real(tokens[3], line_no));
    } else if (tokens[0] == "offset" && tokens.size() == 2) {
      model.set_offset(model.offset() + parse_real(tokens[1], line_no));
    } else {
      throw IoError("problem file line " + std::to_string(line_no) +
                    ": unrecognized record '" + tokens[0] + "'");
    }
  }
  if (!have_header) {
    throw IoError("problem file: missing 'vars' header");
  }
  return model;
}

IsingModel read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open problem file: " + path);
  }
  return read_problem(in);
}

void write_problem(const IsingModel& model, std::ostream& out) {
  out << "vars " << model.num_vars() << " domain " << to_string(model.domain())
      << "\n";
  if (model.offset() != 0.0) {
    out << "offset " << format_double(model.offset()) << "\n";
  }
  for (int i = 0; i < model.num_vars(); ++i) {
    const double v = model.linear()[static_cast<size_t>(i)];
    if (v != 0.0) {
      out << "h " << i << " " << format_double(v) << "\n";
    }
  }
  for (const auto& [key, v] : model.quadratic()) {
    out << "J " << key.first << " " << key.second << " " << format_double(v)
        << "\n";
  }
}

void write_problem_file(const IsingModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write problem file: " + path);
  }
  write_problem(model, out);
}

void write_samples_csv(const SampleSet& samples, std::ostream& out,
                       const std::string& config_hash) {
  if (!config_hash.empty()) {
    out << "# run_config_hash=" << config_hash << "\n";
  }
  size_t n = 0;
  if (!samples.records().empty()) {
    n = samples.records().front().state.size();
  }
  for (size_t i = 0; i < n; ++i) {
    out << "spin_" << i << ",";
  }
  out << "energy,occurrences\n";
  for (const auto& rec : samples.records()) {
    for (int v : rec.state) {
      out << v << ",";
    }
    out << format_double(rec.energy) << "," << rec.num_occurrences << "\n";
  }
}

}  // namespace annealforge
