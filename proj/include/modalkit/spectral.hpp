#pragma once

// Frequency-domain calculus and auto/cross spectra.

#include <complex>
#include <stdexcept>
#include <tuple>

#include "modalkit/dft.hpp"
#include "modalkit/spectrum.hpp"

namespace modalkit {

inline constexpr double kDefaultIntegrationHighpassHz = 2.0;

namespace detail {

inline SpecQuantity shift_quantity(SpecQuantity q, int order) {
  // accel -> vel -> disp chain, with and without the per-force tag
  static constexpr SpecQuantity abs_chain[] = {SpecQuantity::accel, SpecQuantity::vel,
                                               SpecQuantity::disp};
  static constexpr SpecQuantity frf_chain[] = {SpecQuantity::accel_per_force,
                                               SpecQuantity::vel_per_force,
                                               SpecQuantity::disp_per_force};
  for (int i = 0; i < 3; ++i) {
    if (q == abs_chain[i]) {
      if (i + order < 0 || i + order > 2)
        throw std::invalid_argument("integration order leaves the accel/vel/disp chain");
      return abs_chain[i + order];
    }
    if (q == frf_chain[i]) {
      if (i + order < 0 || i + order > 2)
        throw std::invalid_argument("integration order leaves the accel/vel/disp chain");
      return frf_chain[i + order];
    }
  }
  throw std::invalid_argument("quantity '" + to_string(q) + "' is not integrable");
}

}  // namespace detail

/// Frequency-domain integration: bin k is divided by (i 2pi f_k)^order.
/// Bins at or below highpass_hz (the DC singularity included) are zeroed.
inline Spectrum integrate_freq(const Spectrum& spec, int order,
                               double highpass_hz = kDefaultIntegrationHighpassHz) {
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  if (highpass_hz < 0.0) throw std::invalid_argument("highpass_hz must be >= 0");

  Spectrum out = spec;
  out.quantity = detail::shift_quantity(spec.quantity, order);
  for (std::size_t k = 0; k < out.bins.size(); ++k) {
    const double f = out.freq_at(k);
    if (f <= highpass_hz) {
      out.bins[k] = 0.0;
      continue;
    }
    const std::complex<double> iw(0.0, 2.0 * std::numbers::pi * f);
    out.bins[k] /= (order == 1) ? iw : iw * iw;
  }
  return out;
}

/// Inverse of integrate_freq: multiply by (i 2pi f_k)^order. DC stays zero.
inline Spectrum differentiate_freq(const Spectrum& spec, int order = 1) {
  if (order != 1 && order != 2) throw std::invalid_argument("order must be 1 or 2");
  Spectrum out = spec;
  out.quantity = detail::shift_quantity(spec.quantity, -order);
  for (std::size_t k = 1; k < out.bins.size(); ++k) {
    const std::complex<double> iw(0.0, 2.0 * std::numbers::pi * out.freq_at(k));
    out.bins[k] *= (order == 1) ? iw : iw * iw;
  }
  if (!out.bins.empty()) out.bins[0] = 0.0;
  return out;
}

/// Auto- and cross-spectra of two equally sampled records:
/// Sxx = |X|^2, Syy = |Y|^2, Sxy = conj(X) * Y per bin.
inline std::tuple<Spectrum, Spectrum, Spectrum> auto_cross_spectra(const TimeSeries& x,
                                                                   const TimeSeries& y) {
  if (x.samples.size() != y.samples.size())
    throw std::invalid_argument("auto_cross_spectra: length mismatch");
  if (x.sample_rate_hz != y.sample_rate_hz)
    throw std::invalid_argument("auto_cross_spectra: sample rate mismatch");

  const Spectrum xs = dft_forward(x);
  const Spectrum ys = dft_forward(y);

  Spectrum sxx = xs, syy = ys, sxy = xs;
  sxx.quantity = SpecQuantity::auto_power;
  syy.quantity = SpecQuantity::auto_power;
  sxy.quantity = SpecQuantity::cross_power;
  for (std::size_t k = 0; k < xs.bins.size(); ++k) {
    sxx.bins[k] = std::norm(xs.bins[k]);
    syy.bins[k] = std::norm(ys.bins[k]);
    sxy.bins[k] = std::conj(xs.bins[k]) * ys.bins[k];
  }
  return {sxx, syy, sxy};
}

}  // namespace modalkit
