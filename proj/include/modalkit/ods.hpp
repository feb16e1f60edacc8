#pragma once

// Operating deflection shapes: per-point complex deflection at one
// frequency (receptance, m/N), phase relations between points, the
// welded-seam equality check and animation frame export.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "modalkit/frf.hpp"
#include "modalkit/geometry.hpp"

namespace modalkit {

struct DeflectionEntry {
  PointAxis where;
  std::complex<double> deflection;  // m/N at the shape frequency

  double magnitude() const { return std::abs(deflection); }
  double phase_deg() const {
    double deg = std::arg(deflection) * 180.0 / std::numbers::pi;
    if (deg <= -180.0) deg += 360.0;
    return deg;
  }
};

struct DeflectionShape {
  double frequency_hz = 0.0;        // actual bin frequency used
  std::vector<DeflectionEntry> entries;
  std::vector<int> missing_points;  // geometry points with no FRF coverage

  const DeflectionEntry* find(PointAxis pa) const {
    for (const auto& e : entries)
      if (e.where == pa) return &e;
    return nullptr;
  }
};

/// Deflection shape at the bin nearest f_hz: each FRF's accelerance at
/// that bin converted to receptance through division by -(2 pi f*)^2.
/// Geometry points without any FRF are omitted and listed in the shape.
inline DeflectionShape extract_ods(const std::vector<FrfSpectrum>& frfs, double f_hz,
                                   const GeometryModel& geometry) {
  if (frfs.empty()) throw std::invalid_argument("no FRFs");
  const std::size_t bin = frfs.front().h.nearest_bin(f_hz);
  const double f_star = frfs.front().h.freq_at(bin);
  if (!(f_star > 0.0)) throw std::invalid_argument("shape frequency must be > 0");
  const double w2 = std::pow(2.0 * std::numbers::pi * f_star, 2);

  DeflectionShape shape;
  shape.frequency_hz = f_star;
  for (const auto& frf : frfs) {
    if (geometry.find(frf.response_point.point) == nullptr) continue;
    DeflectionEntry e;
    e.where = frf.response_point;
    e.deflection = frf.h.bins[bin] / (-w2);
    shape.entries.push_back(e);
  }
  for (const auto& p : geometry.points)
    if (shape.find({p.id, Axis::x}) == nullptr && shape.find({p.id, Axis::y}) == nullptr &&
        shape.find({p.id, Axis::z}) == nullptr)
      shape.missing_points.push_back(p.id);
  return shape;
}

enum class PhaseRelation { in_phase, out_of_phase, indeterminate };

inline std::string to_string(PhaseRelation r) {
  switch (r) {
    case PhaseRelation::in_phase: return "in_phase";
    case PhaseRelation::out_of_phase: return "out_of_phase";
    case PhaseRelation::indeterminate: return "indeterminate";
  }
  return "?";
}

struct PhaseRelationResult {
  PhaseRelation relation = PhaseRelation::indeterminate;
  double angle_deg = 0.0;
};

/// Wrapped phase difference between two points on one axis. Within
/// in_phase_deg of 0 is in phase, within the same margin of 180 is out of
/// phase, anything else indeterminate.
inline PhaseRelationResult phase_relation(const DeflectionShape& shape, int point_a, int point_b,
                                          Axis axis, double in_phase_deg = 30.0,
                                          double out_phase_deg = 150.0) {
  const auto* a = shape.find({point_a, axis});
  const auto* b = shape.find({point_b, axis});
  if (!a) throw std::invalid_argument("no shape entry for point " + std::to_string(point_a));
  if (!b) throw std::invalid_argument("no shape entry for point " + std::to_string(point_b));

  double angle = a->phase_deg() - b->phase_deg();
  while (angle > 180.0) angle -= 360.0;
  while (angle <= -180.0) angle += 360.0;

  PhaseRelationResult res;
  res.angle_deg = angle;
  if (std::abs(angle) <= in_phase_deg)
    res.relation = PhaseRelation::in_phase;
  else if (std::abs(angle) >= out_phase_deg)
    res.relation = PhaseRelation::out_of_phase;
  return res;
}

struct SeamCheckResult {
  int point_a = 0;
  int point_b = 0;
  bool pass = false;
  double worst_mag_diff_rel = 0.0;
  double worst_phase_diff_deg = 0.0;
  bool magnitude_ok = true;
  bool phase_ok = true;
};

/// Verify that paired points move together: pass when, on every axis both
/// points share, the relative magnitude difference and the wrapped phase
/// difference stay within tolerance.
inline std::vector<SeamCheckResult> seam_check(const DeflectionShape& shape,
                                               const std::vector<std::pair<int, int>>& pairs,
                                               double mag_tol_rel, double phase_tol_deg) {
  std::vector<SeamCheckResult> results;
  for (const auto& [pa, pb] : pairs) {
    SeamCheckResult r;
    r.point_a = pa;
    r.point_b = pb;
    bool any_axis = false;
    for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
      const auto* a = shape.find({pa, axis});
      const auto* b = shape.find({pb, axis});
      if (!a || !b) continue;
      any_axis = true;
      const double ma = a->magnitude(), mb = b->magnitude();
      const double scale = std::max(ma, mb);
      const double mag_diff = scale > 0.0 ? std::abs(ma - mb) / scale : 0.0;
      double phase_diff = a->phase_deg() - b->phase_deg();
      while (phase_diff > 180.0) phase_diff -= 360.0;
      while (phase_diff <= -180.0) phase_diff += 360.0;
      phase_diff = std::abs(phase_diff);
      r.worst_mag_diff_rel = std::max(r.worst_mag_diff_rel, mag_diff);
      r.worst_phase_diff_deg = std::max(r.worst_phase_diff_deg, phase_diff);
    }
    if (!any_axis)
      throw std::invalid_argument("seam pair " + std::to_string(pa) + ":" + std::to_string(pb) +
                                  " has no shared shape entries");
    r.magnitude_ok = r.worst_mag_diff_rel <= mag_tol_rel;
    r.phase_ok = r.worst_phase_diff_deg <= phase_tol_deg;
    r.pass = r.magnitude_ok && r.phase_ok;
    results.push_back(r);
  }
  return results;
}

/// Animation document: frame k displaces each point by
/// scale * Re(entry * e^{i 2 pi k / n_frames}) along its axis. Points
/// without entries stay at rest so the full geometry renders.
inline nlohmann::json export_animation(const DeflectionShape& shape,
                                       const GeometryModel& geometry, int n_frames,
                                       double scale) {
  if (n_frames < 1) throw std::invalid_argument("n_frames must be >= 1");
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be > 0");

  nlohmann::json doc;
  doc["frequency_hz"] = shape.frequency_hz;
  doc["scale"] = scale;
  doc["n_frames"] = n_frames;

  nlohmann::json frames = nlohmann::json::array();
  for (int k = 0; k < n_frames; ++k) {
    const std::complex<double> rot =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                            static_cast<double>(n_frames));
    nlohmann::json frame = nlohmann::json::array();
    for (const auto& p : geometry.points) {
      double dx = 0.0, dy = 0.0, dz = 0.0;
      if (const auto* e = shape.find({p.id, Axis::x})) dx = scale * (e->deflection * rot).real();
      if (const auto* e = shape.find({p.id, Axis::y})) dy = scale * (e->deflection * rot).real();
      if (const auto* e = shape.find({p.id, Axis::z})) dz = scale * (e->deflection * rot).real();
      frame.push_back({{"id", p.id}, {"x", p.x + dx}, {"y", p.y + dy}, {"z", p.z + dz}});
    }
    frames.push_back(frame);
  }
  doc["frames"] = frames;
  return doc;
}

}  // namespace modalkit
