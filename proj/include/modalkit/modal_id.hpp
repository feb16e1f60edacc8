#pragma once

// Mode identification from summed spectra: peak picking with prominence
// screening, half-power damping, structural-vs-tone classification,
// mass-tuning prediction and run-to-run comparison.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalkit/frf.hpp"
#include "modalkit/spectrum.hpp"

namespace modalkit {

enum class ModeClass { structural, external_tone, unresolved };

inline std::string to_string(ModeClass c) {
  switch (c) {
    case ModeClass::structural: return "structural";
    case ModeClass::external_tone: return "external_tone";
    case ModeClass::unresolved: return "unresolved";
  }
  return "?";
}

inline ModeClass mode_class_from_string(const std::string& s) {
  if (s == "structural") return ModeClass::structural;
  if (s == "external_tone") return ModeClass::external_tone;
  if (s == "unresolved") return ModeClass::unresolved;
  throw std::invalid_argument("unknown classification '" + s + "'");
}

struct ModeEstimate {
  double f_n_hz = 0.0;
  double zeta = -1.0;  // < 0 when not resolvable
  double amplitude = 0.0;
  double f1_hz = 0.0;  // half-power bracket, 0/0 when absent
  double f2_hz = 0.0;
  ModeClass classification = ModeClass::unresolved;
  std::string run_id;

  bool has_zeta() const { return zeta >= 0.0; }
};

struct SpectralPeak {
  double f_hz = 0.0;
  double amplitude = 0.0;
  std::size_t bin = 0;
};

inline constexpr double kDefaultProminenceRatio = 10.0;
inline constexpr double kDefaultCoherenceThreshold = 0.5;
inline constexpr double kDefaultTonePresenceRatio = 5.0;

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  return v[mid];
}

/// Topographic prominence of the local maximum at `peak`: height above the
/// higher of the two saddle minima toward the nearest taller terrain (or
/// the range edge).
inline double prominence(const std::vector<double>& mag, std::size_t lo, std::size_t hi,
                         std::size_t peak) {
  double left_min = mag[peak], right_min = mag[peak];
  for (std::size_t i = peak; i-- > lo;) {
    left_min = std::min(left_min, mag[i]);
    if (mag[i] > mag[peak]) break;
  }
  for (std::size_t i = peak + 1; i <= hi; ++i) {
    right_min = std::min(right_min, mag[i]);
    if (mag[i] > mag[peak]) break;
  }
  return mag[peak] - std::max(left_min, right_min);
}

}  // namespace detail

/// Local maxima of a real magnitude spectrum within [band_lo, band_hi]
/// whose prominence exceeds min_prominence_ratio times the in-band median
/// magnitude. Peak frequencies are refined by 3-point parabolic
/// interpolation.
inline std::vector<SpectralPeak> pick_peaks(const Spectrum& summed, double band_lo_hz,
                                            double band_hi_hz,
                                            double min_prominence_ratio = kDefaultProminenceRatio) {
  if (!(min_prominence_ratio > 1.0))
    throw std::invalid_argument("prominence ratio must be > 1");
  if (!(band_lo_hz < band_hi_hz)) throw std::invalid_argument("empty band");
  const std::size_t lo = summed.nearest_bin(band_lo_hz);
  const std::size_t hi = summed.nearest_bin(band_hi_hz);
  if (hi <= lo + 1) throw std::invalid_argument("empty band");

  std::vector<double> mag(summed.bins.size());
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(summed.bins[k]);

  std::vector<double> in_band(mag.begin() + static_cast<std::ptrdiff_t>(lo),
                              mag.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  const double med = detail::median(std::move(in_band));
  const double min_prom = min_prominence_ratio * med;

  std::vector<SpectralPeak> peaks;
  for (std::size_t k = lo + 1; k < hi; ++k) {
    if (!(mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])) continue;
    if (!(detail::prominence(mag, lo, hi, k) > min_prom)) continue;

    // parabolic vertex through the three bins around the maximum
    const double y1 = mag[k - 1], y2 = mag[k], y3 = mag[k + 1];
    const double denom = y1 - 2.0 * y2 + y3;
    double delta = denom != 0.0 ? 0.5 * (y1 - y3) / denom : 0.0;
    delta = std::clamp(delta, -0.5, 0.5);
    SpectralPeak p;
    p.bin = k;
    p.f_hz = (static_cast<double>(k) + delta) * summed.df_hz;
    p.amplitude = y2 - 0.25 * (y1 - y3) * delta;
    peaks.push_back(p);
  }
  return peaks;
}

struct HalfPowerResult {
  double zeta = -1.0;
  double f1_hz = 0.0;
  double f2_hz = 0.0;
  bool resolved = false;
};

namespace detail {

/// Walk outward from the peak to the |S| = level crossing; fails when the
/// skirt turns back up by more than rise_tol before crossing.
inline std::optional<double> crossing(const std::vector<double>& mag, double df,
                                      std::size_t peak_bin, int dir, double level,
                                      double rise_tol = 0.10) {
  double last = mag[peak_bin];  // previous bin, for interpolation
  double low = last;            // running minimum, to spot a neighboring mode
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(peak_bin) + dir;
  while (i >= 0 && i < static_cast<std::ptrdiff_t>(mag.size())) {
    const double cur = mag[static_cast<std::size_t>(i)];
    if (cur <= level) {
      const double frac = (last - level) / (last - cur);
      return (static_cast<double>(i - dir) + dir * frac) * df;
    }
    if (cur > low * (1.0 + rise_tol)) return std::nullopt;  // climbing a neighbor mode
    low = std::min(low, cur);
    last = cur;
    i += dir;
  }
  return std::nullopt;
}

}  // namespace detail

/// Half-power (-3 dB) damping at a picked peak: zeta = (f2 - f1)/(2 f_n)
/// from the interpolated crossings of |S| = peak/sqrt(2). If a skirt rises
/// back up before crossing (overlapping modes) the estimate is unresolved.
/// When the records carry an exponential window, its known added decay
/// 1/(2 pi f_n tau) is subtracted from zeta, floored at 0.
inline HalfPowerResult half_power_damping(const Spectrum& spec, double peak_f_hz,
                                          const WindowPlan& window_meta = {}) {
  HalfPowerResult out;
  if (spec.bins.size() < 3) return out;
  std::vector<double> mag(spec.bins.size());
  for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(spec.bins[k]);

  std::size_t k0 = spec.nearest_bin(peak_f_hz);
  // settle on the actual local maximum near the requested frequency
  while (k0 + 1 < mag.size() && mag[k0 + 1] > mag[k0]) ++k0;
  while (k0 > 0 && mag[k0 - 1] > mag[k0]) --k0;
  if (!(mag[k0] > 0.0)) return out;

  // interpolated peak height and frequency
  double f_n = spec.freq_at(k0);
  double peak_amp = mag[k0];
  if (k0 > 0 && k0 + 1 < mag.size()) {
    const double y1 = mag[k0 - 1], y2 = mag[k0], y3 = mag[k0 + 1];
    const double denom = y1 - 2.0 * y2 + y3;
    if (denom != 0.0) {
      const double delta = std::clamp(0.5 * (y1 - y3) / denom, -0.5, 0.5);
      f_n = (static_cast<double>(k0) + delta) * spec.df_hz;
      peak_amp = y2 - 0.25 * (y1 - y3) * delta;
    }
  }

  const double level = peak_amp / std::sqrt(2.0);
  const auto f1 = detail::crossing(mag, spec.df_hz, k0, -1, level);
  const auto f2 = detail::crossing(mag, spec.df_hz, k0, +1, level);
  if (!f1 || !f2) return out;

  out.f1_hz = *f1;
  out.f2_hz = *f2;
  double zeta = (out.f2_hz - out.f1_hz) / (2.0 * f_n);
  if (window_meta.exponential_tau_s && *window_meta.exponential_tau_s > 0.0)
    zeta = std::max(0.0, zeta - 1.0 / (2.0 * std::numbers::pi * f_n *
                                       *window_meta.exponential_tau_s));
  out.zeta = zeta;
  out.resolved = true;
  return out;
}

/// Structural peaks respond coherently to the excitation; external tones
/// show low force/response coherence and persist in the no-excitation
/// autospectrum. Anything else stays unresolved.
inline ModeClass classify_tone(double peak_f_hz, const std::vector<FrfSpectrum>& frfs,
                               const Spectrum* quiet_autospectrum = nullptr,
                               double coherence_threshold = kDefaultCoherenceThreshold,
                               double presence_ratio = kDefaultTonePresenceRatio) {
  if (frfs.empty()) return ModeClass::unresolved;
  double coh_sum = 0.0;
  for (const auto& f : frfs) {
    const std::size_t k = f.h.nearest_bin(peak_f_hz);
    coh_sum += k < f.coherence.size() ? f.coherence[k] : 0.0;
  }
  const double mean_coh = coh_sum / static_cast<double>(frfs.size());
  if (mean_coh >= coherence_threshold) return ModeClass::structural;

  if (quiet_autospectrum && !quiet_autospectrum->bins.empty()) {
    std::vector<double> mag(quiet_autospectrum->bins.size());
    for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(quiet_autospectrum->bins[k]);
    const double med = detail::median(mag);
    const std::size_t k = quiet_autospectrum->nearest_bin(peak_f_hz);
    // look one bin either side: the run and autospectrum grids differ
    double local = mag[k];
    if (k > 0) local = std::max(local, mag[k - 1]);
    if (k + 1 < mag.size()) local = std::max(local, mag[k + 1]);
    if (local > presence_ratio * med) return ModeClass::external_tone;
  }
  return ModeClass::unresolved;
}

/// SDOF mass-tuning prediction: f_new = f_n sqrt(m / (m + dm)). Added mass
/// shifts the mode down, removed mass up.
inline double mass_shift_estimate(double f_n_hz, double effective_mass_kg,
                                  double delta_mass_kg) {
  if (!(effective_mass_kg > 0.0)) throw std::invalid_argument("effective mass must be > 0");
  if (!(effective_mass_kg + delta_mass_kg > 0.0))
    throw std::invalid_argument("resulting mass must be > 0");
  return f_n_hz * std::sqrt(effective_mass_kg / (effective_mass_kg + delta_mass_kg));
}

struct ModeMatch {
  ModeEstimate a;
  ModeEstimate b;
  double delta_f_hz = 0.0;
  double delta_zeta = 0.0;
};

struct CompareReport {
  std::vector<ModeMatch> matched;
  std::vector<ModeEstimate> only_in_a;
  std::vector<ModeEstimate> only_in_b;
};

/// Greedy nearest-frequency matching of two mode tables within a relative
/// tolerance (fraction of the A-side frequency). Ties break toward the
/// lower frequency.
inline CompareReport compare_runs(const std::vector<ModeEstimate>& modes_a,
                                  const std::vector<ModeEstimate>& modes_b,
                                  double match_tol_rel = 0.02) {
  struct Cand {
    double dist;
    std::size_t i, j;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < modes_a.size(); ++i)
    for (std::size_t j = 0; j < modes_b.size(); ++j) {
      const double d = std::abs(modes_a[i].f_n_hz - modes_b[j].f_n_hz);
      if (d <= match_tol_rel * modes_a[i].f_n_hz) cands.push_back({d, i, j});
    }
  std::sort(cands.begin(), cands.end(), [&](const Cand& x, const Cand& y) {
    if (x.dist != y.dist) return x.dist < y.dist;
    if (modes_a[x.i].f_n_hz != modes_a[y.i].f_n_hz)
      return modes_a[x.i].f_n_hz < modes_a[y.i].f_n_hz;
    return modes_b[x.j].f_n_hz < modes_b[y.j].f_n_hz;
  });

  std::vector<bool> used_a(modes_a.size(), false), used_b(modes_b.size(), false);
  CompareReport rep;
  for (const auto& c : cands) {
    if (used_a[c.i] || used_b[c.j]) continue;
    used_a[c.i] = used_b[c.j] = true;
    ModeMatch m;
    m.a = modes_a[c.i];
    m.b = modes_b[c.j];
    m.delta_f_hz = modes_b[c.j].f_n_hz - modes_a[c.i].f_n_hz;
    m.delta_zeta = (m.a.has_zeta() && m.b.has_zeta()) ? m.b.zeta - m.a.zeta : 0.0;
    rep.matched.push_back(m);
  }
  for (std::size_t i = 0; i < modes_a.size(); ++i)
    if (!used_a[i]) rep.only_in_a.push_back(modes_a[i]);
  for (std::size_t j = 0; j < modes_b.size(); ++j)
    if (!used_b[j]) rep.only_in_b.push_back(modes_b[j]);
  std::sort(rep.matched.begin(), rep.matched.end(),
            [](const ModeMatch& x, const ModeMatch& y) { return x.a.f_n_hz < y.a.f_n_hz; });
  return rep;
}

}  // namespace modalkit
