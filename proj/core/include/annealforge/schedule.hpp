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
#include <string>
#include <utility>
#include <vector>

#include "annealforge/ising.hpp"

namespace annealforge {

enum class AnnealKind { Forward, Reverse, ForwardPause };

struct SchedulePoint {
  double t_us = 0.0;
  double value = 0.0;  // anneal fraction s or h-gain g
};

/// Piecewise-linear anneal fraction s(t).  Control points start at t=0,
/// have strictly increasing times, end at s=1; Forward schedules start
/// at s=0 and Reverse ones at s=1.  Construction checks ordering only;
/// device limits are a separate, explicit validation so simulator
/// experiments may exceed them deliberately.
class AnnealSchedule {
 public:
  AnnealSchedule(std::vector<SchedulePoint> points, AnnealKind kind);

  const std::vector<SchedulePoint>& points() const { return points_; }
  AnnealKind kind() const { return kind_; }
  double total_time_us() const { return points_.back().t_us; }

  /// s(t); clamped to the end values outside [0, T].
  double s(double t_us) const;

 private:
  std::vector<SchedulePoint> points_;
  AnnealKind kind_;
};

/// Piecewise-linear h-gain g(t) over the same time axis.
class HGainSchedule {
 public:
  explicit HGainSchedule(std::vector<SchedulePoint> points);

  const std::vector<SchedulePoint>& points() const { return points_; }
  double total_time_us() const { return points_.back().t_us; }

  double g(double t_us) const;

 private:
  std::vector<SchedulePoint> points_;
};

/// Linear forward anneal (0,0) -> (T,1).
AnnealSchedule forward_anneal(double total_time_us);

/// Reverse anneal with a pause:
///   (0,1) -> (t_a, s_inv) -> (t_b, s_inv) -> (T, 1).
/// t_a == t_b degenerates to a V shape.
AnnealSchedule ra_pause(double total_time_us, double s_inv, double t_a,
                        double t_b);

/// Reverse-anneal-with-pause from the two-parameter search encoding,
/// both in [0.1, 0.9]: s_inv = p1; the pause length is p2 times the
/// time remaining once the pause starts, with equal down and up ramps.
/// Solving those two relations jointly gives pause = p2 T / (2 - p2).
/// Requires T >= 100 us, which keeps every in-range schedule within
/// device slope limits.
AnnealSchedule ra_from_search(double total_time_us, double p1, double p2);

/// Forward anneal with a pause:
///   (0,0) -> (t_a, s_pause) -> (t_b, s_pause) -> (T, 1).
AnnealSchedule fa_pause(double total_time_us, double s_pause, double t_a,
                        double t_b);

/// Three-point h-gain shape (0, g0) -> (t_mid_frac * T, g_mid) -> (T, 0)
/// with t_mid_frac in [0.01, 0.99].
HGainSchedule hg_three_point(double total_time_us, double t_mid_frac,
                             double g_mid, double g0);

/// Per-device limits a schedule must satisfy before it can run.
struct DeviceProfile {
  std::string name;
  double g_max = 5.0;
  double g_slope_max = 500.0;  // per us
  double s_slope_max = 1.0;    // per us
  int max_points = 20;
  double t_min_us = 1.0;
  double t_max_us = 2000.0;
  double h_range = 2.0;

  static DeviceProfile dw2000q();
  static DeviceProfile advantage4_1();
  static DeviceProfile advantage6_1();
  /// Builtin name ("dw2000q", "adv4", "adv6") or "custom:<json path>".
  static DeviceProfile by_name(const std::string& spec);
  static DeviceProfile from_json_file(const std::string& path);
  void write_json_file(const std::string& path) const;
};

enum class ViolationKind {
  TooManyPoints,
  ValueOutOfRange,
  SlopeExceeded,
  AnnealTimeOutOfRange,
};

struct Violation {
  ViolationKind kind;
  std::string message;
};

/// Empty iff the schedule satisfies the profile's point count, value
/// range, slope and annealing-time limits.  Violations are data, not
/// errors.
std::vector<Violation> validate(const AnnealSchedule& sched,
                                const DeviceProfile& profile);
std::vector<Violation> validate(const HGainSchedule& sched,
                                const DeviceProfile& profile);

/// autoscale against a device's field range (see ising.hpp).
inline AutoscaleResult autoscale(const IsingModel& model,
                                 const DeviceProfile& profile) {
  return autoscale(model, profile.h_range);
}

/// Envelope functions A(s), B(s) of the annealing Hamiltonian.  The
/// exact device curves are proprietary, so the default is the analytic
/// stand-in A(s) = E0 (1-s)^2, B(s) = E0 s^2 with E0 = 5; measured
/// curves can be loaded from a table file with `a s value` / `b s value`
/// lines and are interpolated piecewise linearly.
class EnvelopeCurves {
 public:
  static EnvelopeCurves standard();
  static EnvelopeCurves from_tables(std::vector<SchedulePoint> a_table,
                                    std::vector<SchedulePoint> b_table);
  static EnvelopeCurves load_file(const std::string& path);

  double a(double s) const;
  double b(double s) const;

 private:
  EnvelopeCurves() = default;
  std::vector<SchedulePoint> a_table_;  // empty => analytic default
  std::vector<SchedulePoint> b_table_;
};

/// The gain actually applied to the linear terms at time t is
/// B(s(t)) * g(t) / 2; sampled on a uniform grid of `samples` points
/// spanning [0, T].  Both schedules must span the same total time.
std::vector<std::pair<double, double>> effective_gain(
    const AnnealSchedule& ra, const HGainSchedule& hg,
    const std::function<double(double)>& b_of_s, int samples);

// --- schedule file format ----------------------------------------------
//
//   anneal t s      (one line per control point)
//   hgain t g

void write_schedule(const AnnealSchedule& sched, std::ostream& out);
void write_schedule(const HGainSchedule& sched, std::ostream& out);
void write_schedule_file(const AnnealSchedule& sched, const std::string& path);
void write_schedule_file(const HGainSchedule& sched, const std::string& path);

/// Reads the anneal lines of a schedule file; the kind is inferred from
/// the starting fraction (s = 1 reverse, otherwise forward).
AnnealSchedule read_anneal_schedule_file(const std::string& path);
HGainSchedule read_hgain_schedule_file(const std::string& path);

}  // namespace annealforge
