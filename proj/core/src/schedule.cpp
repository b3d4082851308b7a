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

#include "annealforge/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace annealforge {

namespace {

constexpr double kSlopeTolerance = 1.0 + 1e-9;

void check_points(const std::vector<SchedulePoint>& points,
                  const char* what) {
  if (points.size() < 2) {
    throw InvalidSchedule(std::string(what) + ": need at least two points");
  }
  if (points.front().t_us != 0.0) {
    throw InvalidSchedule(std::string(what) + ": first point must be at t=0");
  }
  for (size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].t_us > points[i - 1].t_us)) {
      throw InvalidSchedule(std::string(what) +
                            ": times must be strictly increasing");
    }
  }
}

double interpolate(const std::vector<SchedulePoint>& points, double t) {
  if (t <= points.front().t_us) return points.front().value;
  if (t >= points.back().t_us) return points.back().value;
  auto upper = std::upper_bound(
      points.begin(), points.end(), t,
      [](double lhs, const SchedulePoint& p) { return lhs < p.t_us; });
  const SchedulePoint& b = *upper;
  const SchedulePoint& a = *(upper - 1);
  const double frac = (t - a.t_us) / (b.t_us - a.t_us);
  return a.value + frac * (b.value - a.value);
}

}  // namespace

AnnealSchedule::AnnealSchedule(std::vector<SchedulePoint> points,
                               AnnealKind kind)
    : points_(std::move(points)), kind_(kind) {
  check_points(points_, "AnnealSchedule");
  for (const auto& p : points_) {
    if (p.value < 0.0 || p.value > 1.0) {
      throw InvalidSchedule("AnnealSchedule: anneal fraction outside [0, 1]");
    }
  }
  const double s0 = points_.front().value;
  if (kind_ == AnnealKind::Reverse && s0 != 1.0) {
    throw InvalidSchedule("AnnealSchedule: reverse anneal must start at s=1");
  }
  if (kind_ != AnnealKind::Reverse && s0 != 0.0) {
    throw InvalidSchedule("AnnealSchedule: forward anneal must start at s=0");
  }
  if (points_.back().value != 1.0) {
    throw InvalidSchedule("AnnealSchedule: schedule must end at s=1");
  }
}

double AnnealSchedule::s(double t_us) const { return interpolate(points_, t_us); }

HGainSchedule::HGainSchedule(std::vector<SchedulePoint> points)
    : points_(std::move(points)) {
  check_points(points_, "HGainSchedule");
}

double HGainSchedule::g(double t_us) const { return interpolate(points_, t_us); }

AnnealSchedule forward_anneal(double total_time_us) {
  if (total_time_us <= 0.0) {
    throw InvalidSchedule("forward_anneal: total time must be positive");
  }
  return AnnealSchedule({{0.0, 0.0}, {total_time_us, 1.0}}, AnnealKind::Forward);
}

namespace {

AnnealSchedule pause_schedule(double total_time_us, double s_flat, double t_a,
                              double t_b, double s_start, AnnealKind kind) {
  if (!(0.0 < t_a && t_a <= t_b && t_b < total_time_us)) {
    throw InvalidSchedule("pause schedule: need 0 < t_a <= t_b < T");
  }
  std::vector<SchedulePoint> points;
  points.push_back({0.0, s_start});
  points.push_back({t_a, s_flat});
  if (t_b > t_a) {
    points.push_back({t_b, s_flat});
  }
  points.push_back({total_time_us, 1.0});
  return AnnealSchedule(std::move(points), kind);
}

}  // namespace

AnnealSchedule ra_pause(double total_time_us, double s_inv, double t_a,
                        double t_b) {
  if (s_inv < 0.0 || s_inv >= 1.0) {
    throw InvalidSchedule("ra_pause: s_inv must lie in [0, 1)");
  }
  return pause_schedule(total_time_us, s_inv, t_a, t_b, 1.0, AnnealKind::Reverse);
}

AnnealSchedule fa_pause(double total_time_us, double s_pause, double t_a,
                        double t_b) {
  if (s_pause <= 0.0 || s_pause >= 1.0) {
    throw InvalidSchedule("fa_pause: s_pause must lie in (0, 1)");
  }
  return pause_schedule(total_time_us, s_pause, t_a, t_b, 0.0,
                        AnnealKind::ForwardPause);
}

AnnealSchedule ra_from_search(double total_time_us, double p1, double p2) {
  if (total_time_us < 100.0) {
    throw InvalidAnnealTime("ra_from_search: annealing time below 100 us");
  }
  if (p1 < 0.1 || p1 > 0.9 || p2 < 0.1 || p2 > 0.9) {
    throw InvalidSchedule("ra_from_search: parameters must lie in [0.1, 0.9]");
  }
  // pause = p2 * (T - t_a) with equal ramps t_a = (T - pause) / 2
  const double pause = p2 * total_time_us / (2.0 - p2);
  const double t_a = (total_time_us - pause) / 2.0;
  return ra_pause(total_time_us, p1, t_a, t_a + pause);
}

HGainSchedule hg_three_point(double total_time_us, double t_mid_frac,
                             double g_mid, double g0) {
  if (total_time_us <= 0.0) {
    throw InvalidSchedule("hg_three_point: total time must be positive");
  }
  if (t_mid_frac < 0.01 || t_mid_frac > 0.99) {
    throw InvalidSchedule("hg_three_point: midpoint must lie in [0.01, 0.99]");
  }
  if (g_mid < 0.0 || g0 < 0.0) {
    throw InvalidSchedule("hg_three_point: gains must be nonnegative");
  }
  return HGainSchedule(
      {{0.0, g0}, {t_mid_frac * total_time_us, g_mid}, {total_time_us, 0.0}});
}

DeviceProfile DeviceProfile::dw2000q() {
  return {"DW_2000Q", 5.0, 500.0, 1.0, 20, 1.0, 2000.0, 2.0};
}

DeviceProfile DeviceProfile::advantage4_1() {
  return {"Advantage_system4.1", 3.0, 500.0, 1.0, 20, 0.5, 2000.0, 4.0};
}

DeviceProfile DeviceProfile::advantage6_1() {
  return {"Advantage_system6.1", 4.0, 500.0, 1.0, 20, 0.5, 2000.0, 4.0};
}

DeviceProfile DeviceProfile::by_name(const std::string& spec) {
  if (spec == "dw2000q") return dw2000q();
  if (spec == "adv4") return advantage4_1();
  if (spec == "adv6") return advantage6_1();
  if (spec.rfind("custom:", 0) == 0) {
    return from_json_file(spec.substr(7));
  }
  throw Error("unknown device profile '" + spec +
              "' (expected dw2000q|adv4|adv6|custom:<path>)");
}

DeviceProfile DeviceProfile::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open device profile: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("device profile " + path + ": " + e.what());
  }
  DeviceProfile p;
  try {
    p.name = j.at("name").get<std::string>();
    p.g_max = j.at("g_max").get<double>();
    p.g_slope_max = j.at("g_slope_max").get<double>();
    p.s_slope_max = j.at("s_slope_max").get<double>();
    p.max_points = j.at("max_points").get<int>();
    p.t_min_us = j.at("t_range_us").at(0).get<double>();
    p.t_max_us = j.at("t_range_us").at(1).get<double>();
    p.h_range = j.at("h_range").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("device profile " + path + ": " + e.what());
  }
  if (p.g_max <= 0 || p.g_slope_max <= 0 || p.s_slope_max <= 0 ||
      p.max_points <= 0 || p.t_min_us <= 0 || p.t_max_us < p.t_min_us ||
      p.h_range <= 0) {
    throw IoError("device profile " + path + ": limits must be positive");
  }
  return p;
}

void DeviceProfile::write_json_file(const std::string& path) const {
  nlohmann::json j{{"name", name},
                   {"g_max", g_max},
                   {"g_slope_max", g_slope_max},
                   {"s_slope_max", s_slope_max},
                   {"max_points", max_points},
                   {"t_range_us", {t_min_us, t_max_us}},
                   {"h_range", h_range}};
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write device profile: " + path);
  }
  out << j.dump(2) << "\n";
}

namespace {

void check_common(const std::vector<SchedulePoint>& points,
                  const DeviceProfile& profile, double value_lo,
                  double value_hi, double slope_max, const char* what,
                  std::vector<Violation>& out) {
  if (static_cast<int>(points.size()) > profile.max_points) {
    out.push_back({ViolationKind::TooManyPoints,
                   std::string(what) + ": " + std::to_string(points.size()) +
                       " points exceed the limit of " +
                       std::to_string(profile.max_points)});
  }
  for (const auto& p : points) {
    if (p.value < value_lo || p.value > value_hi) {
      out.push_back({ViolationKind::ValueOutOfRange,
                     std::string(what) + ": value " + format_double(p.value) +
                         " outside [" + format_double(value_lo) + ", " +
                         format_double(value_hi) + "]"});
    }
  }
  for (size_t i = 1; i < points.size(); ++i) {
    const double slope = std::abs(points[i].value - points[i - 1].value) /
                         (points[i].t_us - points[i - 1].t_us);
    if (slope > slope_max * kSlopeTolerance) {
      out.push_back({ViolationKind::SlopeExceeded,
                     std::string(what) + ": segment slope " +
                         format_double(slope) + "/us exceeds " +
                         format_double(slope_max) + "/us"});
    }
  }
  const double total = points.back().t_us;
  if (total < profile.t_min_us || total > profile.t_max_us) {
    out.push_back({ViolationKind::AnnealTimeOutOfRange,
                   std::string(what) + ": total time " + format_double(total) +
                       " us outside [" + format_double(profile.t_min_us) +
                       ", " + format_double(profile.t_max_us) + "] us"});
  }
}

}  // namespace

std::vector<Violation> validate(const AnnealSchedule& sched,
                                const DeviceProfile& profile) {
  std::vector<Violation> out;
  check_common(sched.points(), profile, 0.0, 1.0, profile.s_slope_max,
               "anneal schedule", out);
  return out;
}

std::vector<Violation> validate(const HGainSchedule& sched,
                                const DeviceProfile& profile) {
  std::vector<Violation> out;
  check_common(sched.points(), profile, -profile.g_max, profile.g_max,
               profile.g_slope_max, "h-gain schedule", out);
  return out;
}

EnvelopeCurves EnvelopeCurves::standard() { return EnvelopeCurves(); }

EnvelopeCurves EnvelopeCurves::from_tables(std::vector<SchedulePoint> a_table,
                                           std::vector<SchedulePoint> b_table) {
  auto check_table = [](const std::vector<SchedulePoint>& table) {
    if (table.size() < 2) {
      throw Error("EnvelopeCurves: tables need at least two rows");
    }
    for (size_t i = 1; i < table.size(); ++i) {
      if (!(table[i].t_us > table[i - 1].t_us)) {
        throw Error("EnvelopeCurves: table s values must be increasing");
      }
    }
  };
  check_table(a_table);
  check_table(b_table);
  EnvelopeCurves c;
  c.a_table_ = std::move(a_table);
  c.b_table_ = std::move(b_table);
  return c;
}

EnvelopeCurves EnvelopeCurves::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open envelope table: " + path);
  }
  std::vector<SchedulePoint> a_table, b_table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string kind;
    if (!(iss >> kind) || kind[0] == '#') continue;
    double s, value;
    if (!(iss >> s >> value)) {
      throw IoError("envelope table line " + std::to_string(line_no) +
                    ": expected '{a|b} s value'");
    }
    if (kind == "a") {
      a_table.push_back({s, value});
    } else if (kind == "b") {
      b_table.push_back({s, value});
    } else {
      throw IoError("envelope table line " + std::to_string(line_no) +
                    ": unrecognized record '" + kind + "'");
    }
  }
  return from_tables(std::move(a_table), std::move(b_table));
}

namespace {
constexpr double kEnvelopeScale = 5.0;  // dimensionless E0
}

double EnvelopeCurves::a(double s) const {
  if (a_table_.empty()) {
    return kEnvelopeScale * (1.0 - s) * (1.0 - s);
  }
  return interpolate(a_table_, s);
}

double EnvelopeCurves::b(double s) const {
  if (b_table_.empty()) {
    return kEnvelopeScale * s * s;
  }
  return interpolate(b_table_, s);
}

std::vector<std::pair<double, double>> effective_gain(
    const AnnealSchedule& ra, const HGainSchedule& hg,
    const std::function<double(double)>& b_of_s, int samples) {
  if (ra.total_time_us() != hg.total_time_us()) {
    throw InvalidSchedule("effective_gain: schedules span different times");
  }
  if (samples < 2) {
    throw InvalidSchedule("effective_gain: need at least two samples");
  }
  const double total = ra.total_time_us();
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = total * static_cast<double>(i) /
                     static_cast<double>(samples - 1);
    out.emplace_back(t, b_of_s(ra.s(t)) * hg.g(t) / 2.0);
  }
  return out;
}

namespace {

void write_points(const std::vector<SchedulePoint>& points, const char* tag,
                  std::ostream& out) {
  for (const auto& p : points) {
    out << tag << " " << format_double(p.t_us) << " " << format_double(p.value)
        << "\n";
  }
}

std::vector<SchedulePoint> read_points(const std::string& path,
                                       const std::string& tag) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open schedule file: " + path);
  }
  std::vector<SchedulePoint> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string kind;
    if (!(iss >> kind) || kind[0] == '#') continue;
    if (kind != tag) continue;
    SchedulePoint p;
    if (!(iss >> p.t_us >> p.value)) {
      throw IoError("schedule file " + path + " line " +
                    std::to_string(line_no) + ": expected '" + tag +
                    " t value'");
    }
    points.push_back(p);
  }
  if (points.empty()) {
    throw IoError("schedule file " + path + ": no '" + tag + "' lines");
  }
  return points;
}

}  // namespace

void write_schedule(const AnnealSchedule& sched, std::ostream& out) {
  write_points(sched.points(), "anneal", out);
}

void write_schedule(const HGainSchedule& sched, std::ostream& out) {
  write_points(sched.points(), "hgain", out);
}

void write_schedule_file(const AnnealSchedule& sched, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write schedule file: " + path);
  write_schedule(sched, out);
}

void write_schedule_file(const HGainSchedule& sched, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write schedule file: " + path);
  write_schedule(sched, out);
}

AnnealSchedule read_anneal_schedule_file(const std::string& path) {
  auto points = read_points(path, "anneal");
  const AnnealKind kind =
      points.front().value == 1.0 ? AnnealKind::Reverse : AnnealKind::Forward;
  return AnnealSchedule(std::move(points), kind);
}

HGainSchedule read_hgain_schedule_file(const std::string& path) {
  return HGainSchedule(read_points(path, "hgain"));
}

}  // namespace annealforge
