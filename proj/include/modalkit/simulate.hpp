#pragma once

// Ground-truth run synthesis. Impact responses come from modal
// superposition with analytically sampled impulse responses; swept-sine
// runs are time-stepped with Newmark-beta. Sensor imperfections
// (sensitivity factor, range clipping) and pump-tone noise are applied on
// top of the exact structural response.

#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalkit/dft.hpp"
#include "modalkit/rig_model.hpp"
#include "modalkit/time_series.hpp"

namespace modalkit {

enum class RunKind { impact, sweep };

struct RunChannel {
  PointAxis where;
  TimeSeries series;
  std::size_t clipped_samples = 0;
};

/// A simulated (or recorded) test session: one excitation reference plus
/// the response of every mapped point/axis.
struct RawRun {
  RunKind kind = RunKind::impact;
  double fs_hz = 0.0;
  std::optional<PointAxis> excitation;
  TimeSeries force;
  std::vector<RunChannel> responses;
  HammerSpec hammer;
  SensorSpec sensor;
  NoiseSpec noise;
  unsigned long long seed = 0;
  std::vector<double> hit_times_s;  // impact runs: scheduled pulse starts

  bool any_clipped() const {
    for (const auto& c : responses)
      if (c.clipped_samples > 0) return true;
    return false;
  }
};

/// Placement of hammer hits within a run. Amplitude jitter models the
/// swing-to-swing variation of a human operator; it scales each pulse by
/// 1 + jitter*u, u uniform in [-1, 1], drawn from the run seed.
struct ImpactSchedule {
  std::size_t n_hits = 1;
  double first_hit_s = 0.1;
  double interval_s = 1.0;
  double amplitude_jitter = 0.0;
};

namespace detail {

/// Sampled convolution of a force record with a damped-sinusoid kernel,
/// evaluated exactly through the kernel's two-term recurrence:
///   y[n] = p y[n-1] + q y[n-2] + g0 f[n] + g1p f[n-1]
/// where g0, g1 are the kernel's first two samples and p, q come from the
/// pole pair exp((-sigma +- i wd) dt).
struct DampedKernelFilter {
  double p, q, g0, g1p;

  static DampedKernelFilter accel_kernel(double omega, double zeta, double dt) {
    const double sigma = zeta * omega;
    const double wd = omega * std::sqrt(1.0 - zeta * zeta);
    const double e = std::exp(-sigma * dt);
    DampedKernelFilter f{};
    f.p = 2.0 * e * std::cos(wd * dt);
    f.q = -e * e;
    // h(t) = exp(-sigma t) sin(wd t)/wd  ->  hdd(t) sampled at 0 and dt
    f.g0 = -2.0 * sigma;
    const double g1 = e * (((sigma * sigma - wd * wd) / wd) * std::sin(wd * dt) -
                           2.0 * sigma * std::cos(wd * dt));
    f.g1p = g1 - f.p * f.g0;
    return f;
  }

  void apply(const std::vector<double>& f, std::vector<double>& y) const {
    const std::size_t n = f.size();
    y.assign(n, 0.0);
    if (n == 0) return;
    y[0] = g0 * f[0];
    if (n > 1) y[1] = p * y[0] + g0 * f[1] + g1p * f[0];
    for (std::size_t i = 2; i < n; ++i)
      y[i] = p * y[i - 1] + q * y[i - 2] + g0 * f[i] + g1p * f[i - 1];
  }
};

/// Add one half-sine pulse sin(pi (t - t0)/T) of height `peak` to `samples`.
inline void add_half_sine(std::vector<double>& samples, double fs, double t0, double T,
                          double peak) {
  const auto n0 = static_cast<std::size_t>(std::ceil(t0 * fs));
  for (std::size_t n = n0; n < samples.size(); ++n) {
    const double t = static_cast<double>(n) / fs - t0;
    if (t > T) break;
    samples[n] += peak * std::sin(std::numbers::pi * t / T);
  }
}

inline void clip_channel(RunChannel& ch, double range_pk) {
  for (double& v : ch.series.samples) {
    if (v > range_pk) { v = range_pk; ++ch.clipped_samples; }
    else if (v < -range_pk) { v = -range_pk; ++ch.clipped_samples; }
  }
}

}  // namespace detail

/// Simulate a triggered hammer run: half-sine force pulses at the drive
/// point, responses by modal superposition (pulse convolved with each
/// mode's analytically sampled acceleration impulse response plus the
/// direct mass-line term). Responses are scaled by the sensor sensitivity
/// and hard-clipped at +-range_pk; clip counts land in the run metadata.
inline RawRun simulate_impact(const RigModel& rig, const HammerSpec& hammer,
                              PointAxis drive_point, const SensorSpec& sensors,
                              double fs_hz, double duration_s,
                              unsigned long long seed,
                              const ImpactSchedule& schedule = {}) {
  rig.validate();
  hammer.validate();
  sensors.validate();
  if (!(fs_hz > 0.0)) throw std::invalid_argument("fs must be > 0");
  const auto drive_dof_opt = rig.dof_of(drive_point);
  if (!drive_dof_opt) throw std::invalid_argument("unknown drive point " + drive_point.str());
  const std::size_t drive_dof = *drive_dof_opt;

  const double pulse_T = hammer.duration();
  if (pulse_T >= duration_s) throw std::invalid_argument("pulse longer than duration");
  if (schedule.n_hits == 0) throw std::invalid_argument("schedule needs at least one hit");

  const auto n = static_cast<std::size_t>(std::llround(duration_s * fs_hz));
  if (n < 2) throw std::invalid_argument("duration too short");

  // force channel with jittered pulse train
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> force(n, 0.0);
  std::vector<double> hit_times;
  for (std::size_t h = 0; h < schedule.n_hits; ++h) {
    const double t0 = schedule.first_hit_s + static_cast<double>(h) * schedule.interval_s;
    if (t0 < 0.0 || t0 + pulse_T > duration_s)
      throw std::invalid_argument("hit schedule does not fit in the record");
    const double scale = 1.0 + schedule.amplitude_jitter * uni(rng);
    detail::add_half_sine(force, fs_hz, t0, pulse_T, hammer.peak_force_N * scale);
    hit_times.push_back(t0);
  }

  // modal acceleration: qdd_r[n] = phi_r[j] (f[n] + dt * (f (*) hdd_r)[n])
  const std::vector<RigMode> modes = eigen_modes(rig);
  const double dt = 1.0 / fs_hz;
  std::vector<std::vector<double>> modal_acc(modes.size());
  std::vector<double> conv;
  for (std::size_t r = 0; r < modes.size(); ++r) {
    const double omega = 2.0 * std::numbers::pi * modes[r].f_n_hz;
    const auto filter = detail::DampedKernelFilter::accel_kernel(omega, modes[r].zeta, dt);
    filter.apply(force, conv);
    auto& q = modal_acc[r];
    q.resize(n);
    const double pj = modes[r].shape[drive_dof];
    for (std::size_t i = 0; i < n; ++i) q[i] = pj * (force[i] + dt * conv[i]);
  }

  // superpose per unique DOF, then fan out to mapped channels
  std::map<std::size_t, std::vector<double>> dof_acc;
  for (const auto& entry : rig.node_map) {
    if (dof_acc.count(entry.dof)) continue;
    std::vector<double> acc(n, 0.0);
    for (std::size_t r = 0; r < modes.size(); ++r) {
      const double pi_ = modes[r].shape[entry.dof];
      const auto& q = modal_acc[r];
      for (std::size_t i = 0; i < n; ++i) acc[i] += pi_ * q[i];
    }
    dof_acc.emplace(entry.dof, std::move(acc));
  }

  RawRun run;
  run.kind = RunKind::impact;
  run.fs_hz = fs_hz;
  run.excitation = drive_point;
  run.force = TimeSeries(std::move(force), fs_hz, Quantity::force_N, "force");
  run.hammer = hammer;
  run.sensor = sensors;
  run.seed = seed;
  run.hit_times_s = std::move(hit_times);
  for (const auto& entry : rig.node_map) {
    RunChannel ch;
    ch.where = entry.where;
    std::vector<double> samples = dof_acc.at(entry.dof);
    for (double& v : samples) v *= sensors.sensitivity_factor;
    ch.series = TimeSeries(std::move(samples), fs_hz, Quantity::accel_mps2, entry.where.str());
    detail::clip_channel(ch, sensors.range_pk);
    run.responses.push_back(std::move(ch));
  }
  return run;
}

/// Simulate a linear swept-sine shaker run using Newmark-beta average
/// acceleration (gamma = 1/2, beta = 1/4). The damping matrix is
/// reassembled from the modal ratios, C = sum_r 2 zeta_r w_r (M phi_r)(M phi_r)^T.
inline RawRun simulate_sweep(const RigModel& rig, PointAxis drive_point, double f_start_hz,
                             double f_end_hz, double rate_hz_per_s, double amplitude_N,
                             double fs_hz, const SensorSpec& sensors = {}) {
  rig.validate();
  sensors.validate();
  if (!(fs_hz > 0.0)) throw std::invalid_argument("fs must be > 0");
  if (!(f_start_hz < f_end_hz)) throw std::invalid_argument("sweep band reversed");
  if (!(f_end_hz < fs_hz / 2.0)) throw std::invalid_argument("sweep end above Nyquist");
  if (f_start_hz < 0.0) throw std::invalid_argument("sweep start below 0");
  if (!(rate_hz_per_s > 0.0)) throw std::invalid_argument("sweep rate must be > 0");
  const auto drive_dof_opt = rig.dof_of(drive_point);
  if (!drive_dof_opt) throw std::invalid_argument("unknown drive point " + drive_point.str());
  const std::size_t drive_dof = *drive_dof_opt;

  const std::size_t ndof = rig.n_dof();
  const std::vector<RigMode> modes = eigen_modes(rig);

  Matrix C(ndof);
  for (std::size_t r = 0; r < ndof; ++r) {
    const double w = 2.0 * std::numbers::pi * modes[r].f_n_hz;
    std::vector<double> mphi(ndof);
    for (std::size_t i = 0; i < ndof; ++i) mphi[i] = rig.masses_kg[i] * modes[r].shape[i];
    const double coef = 2.0 * modes[r].zeta * w;
    for (std::size_t i = 0; i < ndof; ++i)
      for (std::size_t j = 0; j < ndof; ++j) C(i, j) += coef * mphi[i] * mphi[j];
  }

  const double dt = 1.0 / fs_hz;
  const double duration = (f_end_hz - f_start_hz) / rate_hz_per_s;
  const auto n = static_cast<std::size_t>(std::llround(duration * fs_hz)) + 1;

  constexpr double gamma = 0.5, beta = 0.25;
  const double a0 = 1.0 / (beta * dt * dt);
  const double a1 = gamma / (beta * dt);
  const double a2 = 1.0 / (beta * dt);
  const double a3 = 1.0 / (2.0 * beta) - 1.0;
  const double a4 = gamma / beta - 1.0;
  const double a5 = dt / 2.0 * (gamma / beta - 2.0);

  Matrix keff(ndof);
  for (std::size_t i = 0; i < ndof; ++i)
    for (std::size_t j = 0; j < ndof; ++j)
      keff(i, j) = rig.stiffness(i, j) + a0 * (i == j ? rig.masses_kg[i] : 0.0) + a1 * C(i, j);
  const Matrix L = cholesky(keff);

  auto force_at = [&](double t) {
    const double phase = 2.0 * std::numbers::pi * (f_start_hz * t + 0.5 * rate_hz_per_s * t * t);
    return amplitude_N * std::sin(phase);
  };

  std::vector<double> u(ndof, 0.0), v(ndof, 0.0), a(ndof, 0.0);
  a[drive_dof] = force_at(0.0) / rig.masses_kg[drive_dof];  // starts from rest

  std::vector<double> force_rec(n, 0.0);
  std::vector<std::vector<double>> acc_rec(ndof, std::vector<double>(n, 0.0));
  force_rec[0] = force_at(0.0);
  for (std::size_t i = 0; i < ndof; ++i) acc_rec[i][0] = a[i];

  std::vector<double> rhs(ndof), u_next(ndof), a_next(ndof);
  for (std::size_t step = 1; step < n; ++step) {
    const double t = static_cast<double>(step) * dt;
    const double f_ext = force_at(t);
    for (std::size_t i = 0; i < ndof; ++i) {
      double r = (i == drive_dof ? f_ext : 0.0);
      r += rig.masses_kg[i] * (a0 * u[i] + a2 * v[i] + a3 * a[i]);
      double cu = 0.0;
      for (std::size_t j = 0; j < ndof; ++j) cu += C(i, j) * (a1 * u[j] + a4 * v[j] + a5 * a[j]);
      rhs[i] = r + cu;
    }
    u_next = cholesky_solve(L, rhs);
    for (std::size_t i = 0; i < ndof; ++i)
      a_next[i] = a0 * (u_next[i] - u[i]) - a2 * v[i] - a3 * a[i];
    for (std::size_t i = 0; i < ndof; ++i)
      v[i] += dt * ((1.0 - gamma) * a[i] + gamma * a_next[i]);
    u = u_next;
    a = a_next;
    force_rec[step] = f_ext;
    for (std::size_t i = 0; i < ndof; ++i) acc_rec[i][step] = a[i];
  }

  RawRun run;
  run.kind = RunKind::sweep;
  run.fs_hz = fs_hz;
  run.excitation = drive_point;
  run.force = TimeSeries(std::move(force_rec), fs_hz, Quantity::force_N, "force");
  run.sensor = sensors;
  for (const auto& entry : rig.node_map) {
    RunChannel ch;
    ch.where = entry.where;
    std::vector<double> samples = acc_rec[entry.dof];
    for (double& s : samples) s *= sensors.sensitivity_factor;
    ch.series = TimeSeries(std::move(samples), fs_hz, Quantity::accel_mps2, entry.where.str());
    detail::clip_channel(ch, sensors.range_pk);
    run.responses.push_back(std::move(ch));
  }
  return run;
}

/// Add pump tones (seeded random phase) and Gaussian broadband noise to
/// every acceleration channel. The force reference stays untouched and an
/// empty NoiseSpec is the identity.
inline RawRun inject_noise(const RawRun& run, const NoiseSpec& noise) {
  if (noise.empty()) return run;
  for (const auto& tone : noise.tones)
    if (!(tone.freq_hz < run.fs_hz / 2.0))
      throw std::invalid_argument("noise tone at or above Nyquist");

  RawRun out = run;
  out.noise = noise;
  std::mt19937_64 rng(noise.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (auto& ch : out.responses) {
    auto& s = ch.series.samples;
    const double fs = ch.series.sample_rate_hz;
    for (const auto& tone : noise.tones) {
      const double ph = phase(rng);
      const double w = 2.0 * std::numbers::pi * tone.freq_hz;
      for (std::size_t i = 0; i < s.size(); ++i)
        s[i] += tone.amp_mps2 * std::sin(w * static_cast<double>(i) / fs + ph);
    }
    if (noise.broadband_rms > 0.0)
      for (double& v : s) v += noise.broadband_rms * gauss(rng);
  }
  return out;
}

/// Usable excitation bandwidth of a pulse: the highest frequency below
/// which the force spectrum magnitude stays within drop_db of its DC
/// value. The crossing is interpolated between bins.
inline double usable_bandwidth(const Spectrum& force_spectrum, double drop_db = 10.0) {
  if (force_spectrum.bins.size() < 2) throw std::invalid_argument("empty spectrum");
  const double dc = std::abs(force_spectrum.bins[0]);
  if (dc <= 0.0) throw std::invalid_argument("zero spectrum");
  const double floor_mag = dc * std::pow(10.0, -drop_db / 20.0);

  for (std::size_t k = 1; k < force_spectrum.bins.size(); ++k) {
    const double mag = std::abs(force_spectrum.bins[k]);
    if (mag < floor_mag) {
      const double prev = std::abs(force_spectrum.bins[k - 1]);
      const double frac = (prev - floor_mag) / (prev - mag);
      return (static_cast<double>(k - 1) + frac) * force_spectrum.df_hz;
    }
  }
  return force_spectrum.nyquist_hz();
}

/// Force spectrum of a single pulse of the given hammer, sampled at fs in
/// a window of `window_s` seconds.
inline Spectrum hammer_pulse_spectrum(const HammerSpec& hammer, double fs_hz,
                                      double window_s = 1.0) {
  const double T = hammer.duration();
  if (T >= window_s) throw std::invalid_argument("window too short for pulse");
  const auto n = static_cast<std::size_t>(std::llround(window_s * fs_hz));
  std::vector<double> samples(n, 0.0);
  detail::add_half_sine(samples, fs_hz, 0.0, T, hammer.peak_force_N);
  return dft_forward(TimeSeries(std::move(samples), fs_hz, Quantity::force_N, "pulse"));
}

}  // namespace modalkit
