#pragma once

// Trigger detection and per-hit quality screening. The force reference is
// scanned for upward threshold crossings; each crossing yields a segment
// with pre-trigger context which is then checked for double impacts,
// overload and underload before it may enter the averaging set.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalkit/rig_model.hpp"
#include "modalkit/simulate.hpp"
#include "modalkit/time_series.hpp"

namespace modalkit {

struct HitFlags {
  bool double_hit = false;
  bool overload = false;
  bool underload = false;

  bool ok() const { return !double_hit && !overload && !underload; }
  bool operator==(const HitFlags&) const = default;

  std::string str() const {
    if (ok()) return "ok";
    std::string s;
    auto add = [&s](const char* f) {
      if (!s.empty()) s += "+";
      s += f;
    };
    if (double_hit) add("double_hit");
    if (overload) add("overload");
    if (underload) add("underload");
    return s;
  }
};

/// Screening thresholds. Defaults follow the nominal hammer: trigger at
/// 2 % of the nominal swing, underload below 10 % of it.
struct QualityRules {
  double double_hit_ratio = 0.2;       // second peak vs first, after the main pulse
  double min_force_N = 0.1 * kNominalPeakForceN;
  double pulse_threshold_ratio = 0.05;  // of the segment's peak force
  double pulse_extend_factor = 2.0;     // widen the main pulse span by this factor
  int force_flat_samples = 3;           // consecutive equal maxima = saturated reference
};

inline constexpr double kDefaultTriggerRatio = 0.02;     // of nominal peak force
inline constexpr double kDefaultPretriggerFraction = 0.05;  // of the capture window

/// One captured hit: force and response segments sharing a common span,
/// with the trigger located pretrigger_samples into the segment.
struct ImpactRecord {
  TimeSeries force;
  std::vector<RunChannel> responses;
  std::optional<PointAxis> excitation;
  double trigger_time_s = 0.0;
  std::size_t pretrigger_samples = 0;
  double peak_force_N = 0.0;
  HitFlags flags;
};

struct TriggerSpan {
  std::size_t start = 0;    // first sample of the segment (includes pretrigger)
  std::size_t length = 0;
  std::size_t trigger = 0;  // sample index of the threshold crossing
};

/// Upward threshold crossings of the force channel, one span each, with
/// holdoff suppression. Spans that do not fully fit in the record are
/// dropped. No crossings yields an empty list.
inline std::vector<TriggerSpan> detect_triggers(const TimeSeries& force, double threshold_N,
                                                double pretrigger_s, double window_s,
                                                double holdoff_s) {
  if (!(threshold_N > 0.0)) throw std::invalid_argument("threshold must be > 0");
  const double fs = force.sample_rate_hz;
  const auto n_pre = static_cast<std::size_t>(std::llround(pretrigger_s * fs));
  const auto n_win = static_cast<std::size_t>(std::llround(window_s * fs));
  const auto n_hold = static_cast<std::size_t>(std::llround(holdoff_s * fs));
  if (n_pre + n_win > force.samples.size())
    throw std::invalid_argument("pretrigger + window exceeds record");

  std::vector<TriggerSpan> spans;
  std::size_t next_allowed = 0;
  for (std::size_t i = 0; i < force.samples.size(); ++i) {
    const bool crossing =
        force.samples[i] >= threshold_N && (i == 0 || force.samples[i - 1] < threshold_N);
    if (!crossing || i < next_allowed) continue;
    if (i < n_pre || i + n_win > force.samples.size()) {
      next_allowed = i + n_hold;
      continue;
    }
    spans.push_back({i - n_pre, n_pre + n_win, i});
    next_allowed = i + n_hold;
  }
  return spans;
}

namespace detail {

/// [start, end) of the first contiguous run above `threshold`.
inline std::pair<std::size_t, std::size_t> main_pulse_span(const std::vector<double>& f,
                                                           double threshold) {
  std::size_t start = f.size();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] > threshold) { start = i; break; }
  }
  if (start == f.size()) return {0, 0};
  std::size_t end = start;
  while (end < f.size() && f[end] > threshold) ++end;
  return {start, end};
}

}  // namespace detail

/// Flag a captured hit. Double hit: a later force local maximum exceeding
/// double_hit_ratio of the main peak, searched after the main pulse span
/// extended by pulse_extend_factor times its width. Overload: any response
/// at or beyond the sensor range, or a flat-topped force reference.
/// Underload: peak force below min_force_N.
inline HitFlags classify_hit(const ImpactRecord& record, const SensorSpec& sensors,
                             const QualityRules& rules = {}) {
  HitFlags flags;
  const auto& f = record.force.samples;
  const double peak = record.peak_force_N;

  if (peak < rules.min_force_N) flags.underload = true;

  for (const auto& ch : record.responses) {
    if (ch.clipped_samples > 0) { flags.overload = true; break; }
    for (double v : ch.series.samples)
      if (std::abs(v) >= sensors.range_pk) { flags.overload = true; break; }
    if (flags.overload) break;
  }

  // saturated force reference: a run of identical samples at the maximum
  if (!f.empty() && rules.force_flat_samples > 1) {
    int run = 1;
    for (std::size_t i = 1; i < f.size(); ++i) {
      if (f[i] == peak && f[i - 1] == peak) {
        if (++run >= rules.force_flat_samples) { flags.overload = true; break; }
      } else {
        run = 1;
      }
    }
  }

  const auto [p_start, p_end] = detail::main_pulse_span(f, rules.pulse_threshold_ratio * peak);
  if (p_end > p_start) {
    const std::size_t width = p_end - p_start;
    const auto search_from = p_end + static_cast<std::size_t>(
        std::ceil(rules.pulse_extend_factor * static_cast<double>(width)));
    for (std::size_t i = std::max<std::size_t>(search_from, 1); i + 1 < f.size(); ++i) {
      const bool local_max = f[i] > f[i - 1] && f[i] >= f[i + 1];
      if (local_max && f[i] > rules.double_hit_ratio * peak) {
        flags.double_hit = true;
        break;
      }
    }
  }
  return flags;
}

struct RecordPartition {
  std::vector<ImpactRecord> accepted;
  std::vector<ImpactRecord> rejected;
};

/// Cut the run into per-trigger records, classify each, and split the set
/// into averaging-ready and rejected hits, preserving order. Rejected hits
/// keep their flags for the quality report.
inline RecordPartition assemble_records(const RawRun& run, const std::vector<TriggerSpan>& spans,
                                        const QualityRules& rules = {}) {
  RecordPartition out;
  for (const auto& span : spans) {
    ImpactRecord rec;
    rec.excitation = run.excitation;
    rec.force = run.force.slice(span.start, span.length);
    rec.pretrigger_samples = span.trigger - span.start;
    rec.trigger_time_s = run.force.time_at(span.trigger);
    rec.peak_force_N = *std::max_element(rec.force.samples.begin(), rec.force.samples.end());
    for (const auto& ch : run.responses) {
      RunChannel seg;
      seg.where = ch.where;
      seg.series = ch.series.slice(span.start, span.length);
      for (double v : seg.series.samples)
        if (std::abs(v) >= run.sensor.range_pk) ++seg.clipped_samples;
      rec.responses.push_back(std::move(seg));
    }
    rec.flags = classify_hit(rec, run.sensor, rules);
    (rec.flags.ok() ? out.accepted : out.rejected).push_back(std::move(rec));
  }
  return out;
}

}  // namespace modalkit
