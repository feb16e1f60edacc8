#pragma once

// Lumped mass-spring model of the structure under test, plus the hammer,
// sensor and noise descriptions that drive the simulated measurements.
// Models are loaded from JSON config files.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modalkit/linalg.hpp"
#include "modalkit/units.hpp"

namespace modalkit {

enum class Axis { x, y, z };

inline std::string to_string(Axis a) {
  switch (a) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

inline Axis axis_from_string(const std::string& s) {
  if (s == "x" || s == "X") return Axis::x;
  if (s == "y" || s == "Y") return Axis::y;
  if (s == "z" || s == "Z") return Axis::z;
  throw std::invalid_argument("unknown axis '" + s + "'");
}

/// A measurement location: geometry point id plus axis.
struct PointAxis {
  int point = 0;
  Axis axis = Axis::z;

  auto operator<=>(const PointAxis&) const = default;
  std::string str() const { return std::to_string(point) + ":" + to_string(axis); }
};

/// Parse "13:z" style point/axis references.
inline PointAxis point_axis_from_string(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("expected POINT:AXIS, got '" + s + "'");
  PointAxis pa;
  pa.point = std::stoi(s.substr(0, colon));
  pa.axis = axis_from_string(s.substr(colon + 1));
  return pa;
}

struct NodeMapEntry {
  PointAxis where;
  std::size_t dof = 0;
};

struct RigModel {
  std::string name;
  std::vector<double> masses_kg;        // diagonal (lumped) mass matrix
  Matrix stiffness;                     // symmetric positive definite, N/m
  std::vector<double> modal_damping;    // zeta per mode, ascending mode order
  std::vector<NodeMapEntry> node_map;   // multiple points may share a DOF

  std::size_t n_dof() const { return masses_kg.size(); }

  std::optional<std::size_t> dof_of(PointAxis pa) const {
    for (const auto& e : node_map)
      if (e.where == pa) return e.dof;
    return std::nullopt;
  }

  void validate() const {
    if (masses_kg.empty()) throw std::invalid_argument("rig needs at least one DOF");
    for (double m : masses_kg)
      if (!(m > 0.0)) throw std::invalid_argument("masses must be > 0");
    if (stiffness.n != n_dof()) throw std::invalid_argument("stiffness size mismatch");
    if (!stiffness.is_symmetric(1e-12)) throw std::invalid_argument("stiffness not symmetric");
    if (modal_damping.size() != n_dof())
      throw std::invalid_argument("need one damping ratio per mode");
    for (double z : modal_damping)
      if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("damping ratios must be in (0,1)");
    for (const auto& e : node_map)
      if (e.dof >= n_dof()) throw std::invalid_argument("node map DOF out of range");
  }
};

enum class HammerTip { soft, medium, medium_hard, hard };

inline std::string to_string(HammerTip t) {
  switch (t) {
    case HammerTip::soft: return "soft";
    case HammerTip::medium: return "medium";
    case HammerTip::medium_hard: return "medium_hard";
    case HammerTip::hard: return "hard";
  }
  return "?";
}

inline HammerTip tip_from_string(const std::string& s) {
  if (s == "soft") return HammerTip::soft;
  if (s == "medium") return HammerTip::medium;
  if (s == "medium_hard") return HammerTip::medium_hard;
  if (s == "hard") return HammerTip::hard;
  throw std::invalid_argument("unknown hammer tip '" + s + "'");
}

/// Nominal 1,000 lbf swing of the big instrumented hammer.
inline constexpr double kNominalPeakForceN = 1000.0 * kLbfToNewton;

/// Half-sine pulse durations per tip, calibrated so the medium_hard tip's
/// 10 dB force-spectrum bandwidth lands near 900 Hz. Softer tips are
/// strictly longer (narrower band) than harder ones.
inline const std::map<HammerTip, double>& default_tip_durations() {
  static const std::map<HammerTip, double> table = {
      {HammerTip::soft, 8.0e-3},
      {HammerTip::medium, 3.0e-3},
      {HammerTip::medium_hard, 1.13e-3},
      {HammerTip::hard, 0.5e-3},
  };
  return table;
}

struct HammerSpec {
  HammerTip tip = HammerTip::medium_hard;
  double peak_force_N = kNominalPeakForceN;
  double pulse_duration_s = 0.0;  // 0 means: derive from tip

  double duration() const {
    return pulse_duration_s > 0.0 ? pulse_duration_s : default_tip_durations().at(tip);
  }

  void validate() const {
    if (peak_force_N < 0.0) throw std::invalid_argument("peak force must be >= 0");
    if (pulse_duration_s < 0.0) throw std::invalid_argument("pulse duration must be >= 0");
  }
};

struct SensorSpec {
  double range_pk = 50.0 * kGravity;  // +-50 g
  double sensitivity_factor = 1.0;    // 1.0 nominal, +-10 % tolerance class
  double band_lo_hz = 0.5;
  double band_hi_hz = 4500.0;

  void validate() const {
    if (!(range_pk > 0.0)) throw std::invalid_argument("sensor range must be > 0");
    if (sensitivity_factor < 0.5 || sensitivity_factor > 1.5)
      throw std::invalid_argument("sensitivity factor outside [0.5, 1.5]");
    if (!(band_lo_hz < band_hi_hz)) throw std::invalid_argument("sensor band reversed");
  }
};

struct NoiseTone {
  double freq_hz = 0.0;
  double amp_mps2 = 0.0;
};

struct NoiseSpec {
  std::vector<NoiseTone> tones;
  double broadband_rms = 0.0;  // m/s^2
  unsigned long long seed = 0;

  bool empty() const { return tones.empty() && broadband_rms == 0.0; }
};

/// One identified vibration mode of the model.
struct RigMode {
  double f_n_hz = 0.0;
  double zeta = 0.0;
  std::vector<double> shape;  // mass-normalized, one entry per DOF
};

/// Natural frequencies, damping ratios and mass-orthonormal shapes of the
/// model, ascending in frequency. Solves the lumped-mass eigenproblem via
/// the symmetric reduction M^-1/2 K M^-1/2.
inline std::vector<RigMode> eigen_modes(const RigModel& rig) {
  rig.validate();
  const std::size_t n = rig.n_dof();

  Matrix A(n);
  std::vector<double> inv_sqrt_m(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt_m[i] = 1.0 / std::sqrt(rig.masses_kg[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      A(i, j) = rig.stiffness(i, j) * inv_sqrt_m[i] * inv_sqrt_m[j];

  const EigenResult eig = eigen_symmetric(A);
  std::vector<RigMode> modes(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!(eig.values[r] > 0.0)) throw std::runtime_error("unstable model");
    modes[r].f_n_hz = std::sqrt(eig.values[r]) / (2.0 * std::numbers::pi);
    modes[r].zeta = rig.modal_damping[r];
    modes[r].shape.resize(n);
    for (std::size_t i = 0; i < n; ++i) modes[r].shape[i] = eig.vectors(i, r) * inv_sqrt_m[i];
  }
  return modes;
}

// ---------------------------------------------------------------------------
// JSON config loading

inline RigModel rig_from_json(const nlohmann::json& j) {
  RigModel rig;
  rig.name = j.value("name", "");
  rig.masses_kg = j.at("masses_kg").get<std::vector<double>>();
  const std::size_t n = rig.masses_kg.size();

  rig.stiffness = Matrix(n);
  if (j.contains("stiffness_n_per_m")) {
    const auto& rows = j.at("stiffness_n_per_m");
    if (rows.size() != n) throw std::invalid_argument("stiffness matrix row count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw std::invalid_argument("stiffness matrix column count mismatch");
      for (std::size_t k = 0; k < n; ++k) rig.stiffness(i, k) = rows[i][k].get<double>();
    }
  } else if (j.contains("springs")) {
    for (const auto& s : j.at("springs")) {
      const double k = s.at("k_n_per_m").get<double>();
      if (!(k > 0.0)) throw std::invalid_argument("spring stiffness must be > 0");
      const std::size_t i = s.at("i").get<std::size_t>();
      if (i >= n) throw std::invalid_argument("spring endpoint out of range");
      if (s.contains("j") && !s.at("j").is_null()) {
        const std::size_t jj = s.at("j").get<std::size_t>();
        if (jj >= n) throw std::invalid_argument("spring endpoint out of range");
        rig.stiffness(i, i) += k;
        rig.stiffness(jj, jj) += k;
        rig.stiffness(i, jj) -= k;
        rig.stiffness(jj, i) -= k;
      } else {
        rig.stiffness(i, i) += k;  // grounded spring
      }
    }
  } else {
    throw std::invalid_argument("rig config needs 'springs' or 'stiffness_n_per_m'");
  }

  rig.modal_damping = j.at("modal_damping").get<std::vector<double>>();
  for (const auto& e : j.at("node_map")) {
    NodeMapEntry entry;
    entry.where.point = e.at("point").get<int>();
    entry.where.axis = axis_from_string(e.at("axis").get<std::string>());
    entry.dof = e.at("dof").get<std::size_t>();
    rig.node_map.push_back(entry);
  }
  rig.validate();
  return rig;
}

inline SensorSpec sensor_from_json(const nlohmann::json& j) {
  SensorSpec s;
  s.range_pk = j.value("range_pk_mps2", s.range_pk);
  if (j.contains("range_pk_g")) s.range_pk = g_to_mps2(j.at("range_pk_g").get<double>());
  s.sensitivity_factor = j.value("sensitivity_factor", s.sensitivity_factor);
  s.band_lo_hz = j.value("band_lo_hz", s.band_lo_hz);
  s.band_hi_hz = j.value("band_hi_hz", s.band_hi_hz);
  s.validate();
  return s;
}

inline NoiseSpec noise_from_json(const nlohmann::json& j) {
  NoiseSpec n;
  if (j.contains("tones")) {
    for (const auto& t : j.at("tones"))
      n.tones.push_back({t.at("freq_hz").get<double>(), t.at("amp_mps2").get<double>()});
  }
  n.broadband_rms = j.value("broadband_rms_mps2", 0.0);
  n.seed = j.value("seed", 0ULL);
  return n;
}

}  // namespace modalkit
