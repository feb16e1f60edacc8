#pragma once

// Time-domain windows for impact capture: rectangular, hann, force and
// exponential. All window values stay in [0, 1].

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "modalkit/time_series.hpp"

namespace modalkit {

enum class WindowKind { rectangular, hann, force, exponential };

struct WindowParams {
  double tau_s = 0.0;            // exponential decay constant
  double force_start_s = 0.0;    // force window span, relative to record start
  double force_end_s = 0.0;
  double force_taper_s = 0.0;    // cosine taper width on each side of the span
};

inline std::string to_string(WindowKind k) {
  switch (k) {
    case WindowKind::rectangular: return "rectangular";
    case WindowKind::hann: return "hann";
    case WindowKind::force: return "force";
    case WindowKind::exponential: return "exponential";
  }
  return "?";
}

/// Window weight for sample n of a record of length n_total.
inline double window_value(WindowKind kind, const WindowParams& p, std::size_t n,
                           std::size_t n_total, double fs) {
  switch (kind) {
    case WindowKind::rectangular:
      return 1.0;
    case WindowKind::hann: {
      if (n_total < 2) return 1.0;
      const double x = static_cast<double>(n) / static_cast<double>(n_total - 1);
      return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * x));
    }
    case WindowKind::exponential:
      return std::exp(-static_cast<double>(n) / (fs * p.tau_s));
    case WindowKind::force: {
      const double t = static_cast<double>(n) / fs;
      if (t >= p.force_start_s && t <= p.force_end_s) return 1.0;
      if (p.force_taper_s > 0.0) {
        if (t < p.force_start_s && t >= p.force_start_s - p.force_taper_s) {
          const double x = (p.force_start_s - t) / p.force_taper_s;
          return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
        }
        if (t > p.force_end_s && t <= p.force_end_s + p.force_taper_s) {
          const double x = (t - p.force_end_s) / p.force_taper_s;
          return 0.5 * (1.0 + std::cos(std::numbers::pi * x));
        }
      }
      return 0.0;
    }
  }
  return 1.0;
}

/// Windowed copy of a series. Rectangular is the identity.
inline TimeSeries apply_window(const TimeSeries& ts, WindowKind kind,
                               const WindowParams& params = {}) {
  if (kind == WindowKind::exponential && !(params.tau_s > 0.0))
    throw std::invalid_argument("exponential window requires tau > 0");
  if (kind == WindowKind::force) {
    if (params.force_end_s < params.force_start_s)
      throw std::invalid_argument("force window span reversed");
    if (params.force_start_s < 0.0 || params.force_end_s > ts.duration_s())
      throw std::invalid_argument("force window span outside record");
  }

  TimeSeries out = ts;
  const std::size_t n_total = ts.samples.size();
  for (std::size_t n = 0; n < n_total; ++n)
    out.samples[n] *= window_value(kind, params, n, n_total, ts.sample_rate_hz);
  return out;
}

}  // namespace modalkit
