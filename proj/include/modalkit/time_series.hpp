#pragma once

// Uniformly sampled single-channel signal with a fixed physical quantity.
// Values are immutable by convention: operations return new series.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modalkit/units.hpp"

namespace modalkit {

struct TimeSeries {
  std::vector<double> samples;
  double sample_rate_hz = 0.0;
  Quantity quantity = Quantity::accel_mps2;
  std::string channel_id;
  double start_time_s = 0.0;

  TimeSeries() = default;
  TimeSeries(std::vector<double> s, double fs, Quantity q,
             std::string id = "", double t0 = 0.0)
      : samples(std::move(s)),
        sample_rate_hz(fs),
        quantity(q),
        channel_id(std::move(id)),
        start_time_s(t0) {
    validate();
  }

  std::size_t size() const { return samples.size(); }
  double dt() const { return 1.0 / sample_rate_hz; }
  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
  double time_at(std::size_t n) const { return start_time_s + static_cast<double>(n) / sample_rate_hz; }

  void validate() const {
    if (!(sample_rate_hz > 0.0))
      throw std::invalid_argument("sample_rate_hz must be > 0");
    for (double v : samples)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
  }

  /// Copy of samples [start, start+count) as a new series; start_time_s
  /// advances accordingly.
  TimeSeries slice(std::size_t start, std::size_t count) const {
    if (start + count > samples.size())
      throw std::out_of_range("slice beyond end of series");
    TimeSeries out;
    out.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(start),
                       samples.begin() + static_cast<std::ptrdiff_t>(start + count));
    out.sample_rate_hz = sample_rate_hz;
    out.quantity = quantity;
    out.channel_id = channel_id;
    out.start_time_s = time_at(start);
    return out;
  }
};

}  // namespace modalkit
