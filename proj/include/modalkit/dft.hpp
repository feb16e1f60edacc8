#pragma once

// One-sided DFT of real records. Bins carry the e^{+i 2pi kn/N} analysis
// kernel scaled by dt, so a transient's bin 0 magnitude equals its time
// integral and an FRF's phase follows the e^{+i omega t} sign convention
// (drive-point accelerance crosses -90 deg at resonance).

#include <complex>
#include <stdexcept>
#include <vector>

#include "modalkit/fft.hpp"
#include "modalkit/spectrum.hpp"
#include "modalkit/time_series.hpp"

namespace modalkit {

/// Forward one-sided DFT. Requires at least 2 samples.
inline Spectrum dft_forward(const TimeSeries& ts) {
  if (ts.samples.empty()) throw std::invalid_argument("empty series");
  if (ts.samples.size() < 2) throw std::invalid_argument("series too short (need >= 2 samples)");

  const std::size_t n = ts.samples.size();
  std::vector<detail::cplx> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = detail::cplx(ts.samples[i], 0.0);
  buf = detail::fft_any(std::move(buf), +1);

  const double dt = ts.dt();
  Spectrum spec;
  spec.bins.resize(n / 2 + 1);
  for (std::size_t k = 0; k < spec.bins.size(); ++k) spec.bins[k] = buf[k] * dt;
  spec.df_hz = ts.sample_rate_hz / static_cast<double>(n);
  spec.quantity = spectrum_quantity(ts.quantity);
  spec.n_averages = 1;
  spec.n_source = n;
  return spec;
}

/// Inverse of dft_forward; reconstructs the real record from the one-sided
/// bins via conjugate symmetry.
inline TimeSeries dft_inverse(const Spectrum& spec) {
  if (spec.bins.size() < 2) throw std::invalid_argument("empty spectrum");
  if (spec.n_source == 0) throw std::invalid_argument("spectrum lacks source length");

  const std::size_t n = spec.n_source;
  const double fs = spec.df_hz * static_cast<double>(n);
  const double dt = 1.0 / fs;

  std::vector<detail::cplx> full(n);
  for (std::size_t k = 0; k < spec.bins.size(); ++k) full[k] = spec.bins[k] / dt;
  for (std::size_t k = 1; k < (n + 1) / 2; ++k) full[n - k] = std::conj(full[k]);
  full = detail::fft_any(std::move(full), -1);

  TimeSeries ts;
  ts.samples.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) ts.samples[i] = full[i].real() * inv_n;
  ts.sample_rate_hz = fs;
  ts.quantity = time_quantity(spec.quantity);
  return ts;
}

}  // namespace modalkit
