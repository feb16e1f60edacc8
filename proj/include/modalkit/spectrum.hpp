#pragma once

// One-sided complex spectrum. Bin 0 is DC, bin count is floor(N/2)+1 for a
// source record of N samples, df = fs / N.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "modalkit/units.hpp"

namespace modalkit {

struct Spectrum {
  std::vector<std::complex<double>> bins;
  double df_hz = 0.0;
  SpecQuantity quantity = SpecQuantity::accel;
  int n_averages = 1;
  std::size_t n_source = 0;  // sample count of the originating record

  Spectrum() = default;
  Spectrum(std::vector<std::complex<double>> b, double df, SpecQuantity q,
           std::size_t n_src, int n_avg = 1)
      : bins(std::move(b)), df_hz(df), quantity(q), n_averages(n_avg), n_source(n_src) {
    validate();
  }

  std::size_t size() const { return bins.size(); }
  double freq_at(std::size_t k) const { return static_cast<double>(k) * df_hz; }
  double nyquist_hz() const { return freq_at(bins.empty() ? 0 : bins.size() - 1); }

  /// Index of the bin closest to f, clamped to the valid range.
  std::size_t nearest_bin(double f_hz) const {
    if (bins.empty()) throw std::invalid_argument("empty spectrum");
    double k = std::round(f_hz / df_hz);
    if (k < 0.0) k = 0.0;
    double kmax = static_cast<double>(bins.size() - 1);
    if (k > kmax) k = kmax;
    return static_cast<std::size_t>(k);
  }

  void validate() const {
    if (!(df_hz > 0.0)) throw std::invalid_argument("df_hz must be > 0");
    if (n_averages < 1) throw std::invalid_argument("n_averages must be >= 1");
    if (n_source > 0 && bins.size() != n_source / 2 + 1)
      throw std::invalid_argument("bin count must be floor(N/2)+1");
    for (const auto& b : bins)
      if (!std::isfinite(std::abs(b))) throw std::invalid_argument("non-finite bin");
  }
};

}  // namespace modalkit
