#pragma once

// Physical quantities and unit conversions. All internal math is SI
// (N, m/s^2, m/s, m, Hz); g and lbf exist only at IO boundaries.

#include <stdexcept>
#include <string>

namespace modalkit {

inline constexpr double kGravity = 9.80665;        // m/s^2 per g
inline constexpr double kLbfToNewton = 4.4482216;  // N per lbf

inline constexpr double g_to_mps2(double g) { return g * kGravity; }
inline constexpr double mps2_to_g(double a) { return a / kGravity; }
inline constexpr double lbf_to_newton(double lbf) { return lbf * kLbfToNewton; }
inline constexpr double newton_to_lbf(double n) { return n / kLbfToNewton; }

/// Physical quantity carried by a time-domain channel.
enum class Quantity { force_N, accel_mps2, vel_mps, disp_m };

/// Unit tag of a spectrum. The *_per_force tags are FRF quantities;
/// auto_power/cross_power come out of auto_cross_spectra; magnitude_sum
/// is the channel-summed real spectrum used for peak identification.
enum class SpecQuantity {
  force,
  accel,
  vel,
  disp,
  accel_per_force,
  vel_per_force,
  disp_per_force,
  auto_power,
  cross_power,
  magnitude_sum,
};

inline std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::force_N: return "force_N";
    case Quantity::accel_mps2: return "accel_mps2";
    case Quantity::vel_mps: return "vel_mps";
    case Quantity::disp_m: return "disp_m";
  }
  return "?";
}

inline Quantity quantity_from_string(const std::string& s) {
  if (s == "force_N") return Quantity::force_N;
  if (s == "accel_mps2") return Quantity::accel_mps2;
  if (s == "vel_mps") return Quantity::vel_mps;
  if (s == "disp_m") return Quantity::disp_m;
  throw std::invalid_argument("unknown quantity '" + s + "'");
}

inline std::string to_string(SpecQuantity q) {
  switch (q) {
    case SpecQuantity::force: return "force";
    case SpecQuantity::accel: return "accel";
    case SpecQuantity::vel: return "vel";
    case SpecQuantity::disp: return "disp";
    case SpecQuantity::accel_per_force: return "accel_per_force";
    case SpecQuantity::vel_per_force: return "vel_per_force";
    case SpecQuantity::disp_per_force: return "disp_per_force";
    case SpecQuantity::auto_power: return "auto_power";
    case SpecQuantity::cross_power: return "cross_power";
    case SpecQuantity::magnitude_sum: return "magnitude_sum";
  }
  return "?";
}

/// Spectrum tag for the transform of a time-domain quantity.
inline SpecQuantity spectrum_quantity(Quantity q) {
  switch (q) {
    case Quantity::force_N: return SpecQuantity::force;
    case Quantity::accel_mps2: return SpecQuantity::accel;
    case Quantity::vel_mps: return SpecQuantity::vel;
    case Quantity::disp_m: return SpecQuantity::disp;
  }
  return SpecQuantity::accel;
}

/// Time-domain quantity recovered by an inverse transform.
inline Quantity time_quantity(SpecQuantity q) {
  switch (q) {
    case SpecQuantity::force: return Quantity::force_N;
    case SpecQuantity::accel: return Quantity::accel_mps2;
    case SpecQuantity::vel: return Quantity::vel_mps;
    case SpecQuantity::disp: return Quantity::disp_m;
    default:
      throw std::invalid_argument("spectrum quantity '" + to_string(q) +
                                  "' has no time-domain counterpart");
  }
}

}  // namespace modalkit
