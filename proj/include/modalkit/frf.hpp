#pragma once

// Averaged H1 frequency response estimation with coherence, and the
// channel-summed spectra used to locate natural-frequency peaks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modalkit/capture.hpp"
#include "modalkit/spectral.hpp"
#include "modalkit/window.hpp"

namespace modalkit {

/// Windows applied before the segment DFTs. The force window (when
/// enabled) conditions only the force reference; the exponential window is
/// applied identically to force and response so the FRF ratio is
/// preserved, and its added decay is recorded for damping correction.
struct WindowPlan {
  bool force_window = false;
  double force_start_s = 0.0;
  double force_end_s = 0.0;
  double force_taper_s = 0.0;
  std::optional<double> exponential_tau_s;
};

struct FrfSpectrum {
  Spectrum h;                     // accel per force, (m/s^2)/N
  std::vector<double> coherence;  // per bin, in [0, 1]
  PointAxis excitation_point;
  PointAxis response_point;
  int n_averages = 1;
  WindowPlan window_meta;
};

namespace detail {

inline TimeSeries windowed(const TimeSeries& ts, const WindowPlan& plan, bool is_force) {
  TimeSeries out = ts;
  if (is_force && plan.force_window) {
    WindowParams p;
    p.force_start_s = plan.force_start_s;
    p.force_end_s = plan.force_end_s;
    p.force_taper_s = plan.force_taper_s;
    out = apply_window(out, WindowKind::force, p);
  }
  if (plan.exponential_tau_s) {
    WindowParams p;
    p.tau_s = *plan.exponential_tau_s;
    out = apply_window(out, WindowKind::exponential, p);
  }
  return out;
}

}  // namespace detail

/// Averaged H1 estimate for one response channel over a set of accepted
/// hits: H1 = mean(S_fx) / mean(S_ff), coherence = |mean S_fx|^2 /
/// (mean S_ff * mean S_xx). A single average has unit coherence by
/// construction.
inline FrfSpectrum estimate_h1(const std::vector<ImpactRecord>& records,
                               std::size_t response_index, const WindowPlan& plan = {}) {
  if (records.empty()) throw std::invalid_argument("no accepted hits");
  const std::size_t n = records.front().force.samples.size();
  const double fs = records.front().force.sample_rate_hz;
  for (const auto& rec : records) {
    if (rec.force.samples.size() != n || rec.force.sample_rate_hz != fs)
      throw std::invalid_argument("records must share length and sample rate");
    if (response_index >= rec.responses.size())
      throw std::invalid_argument("response channel out of range");
  }

  std::vector<double> sff, sxx;
  std::vector<std::complex<double>> sfx;
  std::size_t n_bins = 0;

  for (const auto& rec : records) {
    const Spectrum F = dft_forward(detail::windowed(rec.force, plan, true));
    const Spectrum X =
        dft_forward(detail::windowed(rec.responses[response_index].series, plan, false));
    if (n_bins == 0) {
      n_bins = F.bins.size();
      sff.assign(n_bins, 0.0);
      sxx.assign(n_bins, 0.0);
      sfx.assign(n_bins, {0.0, 0.0});
    }
    for (std::size_t k = 0; k < n_bins; ++k) {
      sff[k] += std::norm(F.bins[k]);
      sxx[k] += std::norm(X.bins[k]);
      sfx[k] += std::conj(F.bins[k]) * X.bins[k];
    }
  }

  const auto n_avg = static_cast<double>(records.size());
  FrfSpectrum frf;
  frf.h.bins.resize(n_bins);
  frf.coherence.resize(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double ff = sff[k] / n_avg;
    const double xx = sxx[k] / n_avg;
    const std::complex<double> fx = sfx[k] / n_avg;
    if (ff > 0.0) {
      frf.h.bins[k] = fx / ff;
      const double denom = ff * xx;
      frf.coherence[k] = denom > 0.0 ? std::min(1.0, std::norm(fx) / denom) : 0.0;
    } else {
      frf.h.bins[k] = 0.0;
      frf.coherence[k] = 0.0;
    }
  }
  frf.h.df_hz = fs / static_cast<double>(n);
  frf.h.quantity = SpecQuantity::accel_per_force;
  frf.h.n_averages = static_cast<int>(records.size());
  frf.h.n_source = n;
  frf.response_point = records.front().responses[response_index].where;
  if (records.front().excitation) frf.excitation_point = *records.front().excitation;
  frf.n_averages = static_cast<int>(records.size());
  frf.window_meta = plan;
  return frf;
}

/// Per-bin sum of |H| across FRFs, zeroed outside [band_lo, band_hi].
/// Adding a channel never decreases any in-band bin.
inline Spectrum summed_spectrum(const std::vector<FrfSpectrum>& frfs, double band_lo_hz,
                                double band_hi_hz) {
  if (frfs.empty()) throw std::invalid_argument("no FRFs to sum");
  const double df = frfs.front().h.df_hz;
  const std::size_t n_bins = frfs.front().h.bins.size();
  for (const auto& f : frfs)
    if (f.h.df_hz != df || f.h.bins.size() != n_bins)
      throw std::invalid_argument("FRF bin grids differ");

  Spectrum out;
  out.bins.assign(n_bins, {0.0, 0.0});
  out.df_hz = df;
  out.quantity = SpecQuantity::magnitude_sum;
  out.n_source = frfs.front().h.n_source;
  for (const auto& f : frfs)
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double fk = static_cast<double>(k) * df;
      if (fk >= band_lo_hz && fk <= band_hi_hz) out.bins[k] += std::abs(f.h.bins[k]);
    }
  return out;
}

/// Per-bin sum of response autospectrum magnitudes, for records with no
/// excitation reference (operational data). Segments are Welch-averaged
/// per channel with a hann window, then summed across channels.
inline Spectrum summed_autospectrum(const std::vector<std::vector<TimeSeries>>& channel_segments,
                                    double band_lo_hz, double band_hi_hz) {
  std::size_t n_bins = 0;
  double df = 0.0;
  Spectrum out;

  for (const auto& segments : channel_segments) {
    if (segments.empty()) continue;
    std::vector<double> acc;
    for (const auto& seg : segments) {
      const Spectrum s = dft_forward(apply_window(seg, WindowKind::hann));
      if (n_bins == 0) {
        n_bins = s.bins.size();
        df = s.df_hz;
        out.bins.assign(n_bins, {0.0, 0.0});
        out.df_hz = df;
        out.quantity = SpecQuantity::magnitude_sum;
        out.n_source = s.n_source;
      }
      if (s.bins.size() != n_bins || s.df_hz != df)
        throw std::invalid_argument("autospectrum segments must share the bin grid");
      if (acc.empty()) acc.assign(n_bins, 0.0);
      for (std::size_t k = 0; k < n_bins; ++k) acc[k] += std::norm(s.bins[k]);
    }
    const auto n_seg = static_cast<double>(segments.size());
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double fk = static_cast<double>(k) * df;
      if (fk >= band_lo_hz && fk <= band_hi_hz)
        out.bins[k] += std::sqrt(acc[k] / n_seg);
    }
  }

  if (out.bins.empty()) throw std::invalid_argument("no segments to sum");
  return out;
}

}  // namespace modalkit
