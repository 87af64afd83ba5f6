#pragma once

#include <cmath>
#include <numbers>

namespace stormcast {

inline constexpr double kEarthRadiusKm = 6371.0;

struct LatLon {
  double lat = 0.0;  // degrees north
  double lon = 0.0;  // degrees east
};

namespace detail {
inline double radians(double deg) { return deg * std::numbers::pi / 180.0; }
inline double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }
}  // namespace detail

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
inline double haversine_km(LatLon a, LatLon b) {
  const double phi1 = detail::radians(a.lat);
  const double phi2 = detail::radians(b.lat);
  const double dphi = phi2 - phi1;
  const double dlambda = detail::radians(b.lon - a.lon);
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::fmin(1.0, std::fmax(0.0, h));
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

/// Initial great-circle bearing at `a` toward `b`, clockwise from true north,
/// in [0, 360). Coincident points give 0.
inline double initial_bearing_deg(LatLon a, LatLon b) {
  if (a.lat == b.lat && a.lon == b.lon) return 0.0;
  const double phi1 = detail::radians(a.lat);
  const double phi2 = detail::radians(b.lat);
  const double dlambda = detail::radians(b.lon - a.lon);
  const double y = std::sin(dlambda) * std::cos(phi2);
  const double x = std::cos(phi1) * std::sin(phi2) - std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
  double deg = std::fmod(detail::degrees(std::atan2(y, x)) + 360.0, 360.0);
  if (deg >= 360.0) deg = 0.0;  // fmod can round up to exactly 360
  return deg;
}

}  // namespace stormcast
