#pragma once

// Canonical internal units: km, hr, MPa. Well fluxes are entered in m^3/hr.

namespace seisctl::units {

inline constexpr double kKm3PerM3 = 1e-9;
inline constexpr double kM3PerKm3 = 1e9;
inline constexpr double kHoursPerMonth = 730.0;
inline constexpr double kHoursPerYear = 8760.0;

inline constexpr double m3_to_km3(double v) { return v * kKm3PerM3; }
inline constexpr double km3_to_m3(double v) { return v * kM3PerKm3; }

}  // namespace seisctl::units
