#pragma once

// Seeded synthetic best tracks for tests, demos and desk-scale experiments.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "stormcast/storm_data.hpp"

namespace stormcast::synthetic {

namespace detail {

inline Timestamp start_time(std::size_t storm_index) {
  using namespace std::chrono;
  return sys_days{year{2000} / January / 1} + days{static_cast<int>(7 * storm_index)};
}

inline std::string storm_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
  return buf;
}

}  // namespace detail

/// Straight-line storms: each moves west-northwest at a constant velocity with steady intensity.
inline std::vector<StormTrack> constant_velocity_tracks(std::size_t count, std::size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lat0(15.0, 25.0), lon0(-70.0, -50.0), dlat(0.2, 0.4), dlon(-0.6, -0.3),
      wind(35.0, 90.0);
  std::vector<StormTrack> out;
  for (std::size_t s = 0; s < count; ++s) {
    StormTrack t{detail::storm_id("CV", s), "LINEAR" + std::to_string(s), {}};
    const double la = lat0(rng), lo = lon0(rng), vla = dlat(rng), vlo = dlon(rng), w = wind(rng);
    for (std::size_t k = 0; k < length; ++k) {
      const double step = static_cast<double>(k);
      Fix f;
      f.timestamp = detail::start_time(s) + static_cast<int>(k) * kFixInterval;
      f.lat = la + vla * step;
      f.lon = lo + vlo * step;
      f.max_wind = w;
      f.min_pressure = 1012.0 - 0.9 * (w - 15.0);
      t.fixes.push_back(f);
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Atlantic-like storms: west-northwest drift that recurves to the northeast,
/// with autocorrelated velocity noise and a rise-and-decay intensity cycle.
inline std::vector<StormTrack> recurving_tracks(std::size_t count, std::uint64_t seed, std::size_t min_len = 12,
                                                std::size_t max_len = 30) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_real_distribution<double> lat0(10.0, 22.0), lon0(-75.0, -30.0), speed(0.5, 1.0), turn_at(0.35, 0.75),
      peak(60.0, 140.0);
  std::normal_distribution<double> noise(0.0, 0.08);
  std::vector<StormTrack> out;
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t n = len(rng);
    StormTrack t{detail::storm_id("SY", s), "SYNTH" + std::to_string(s), {}};
    double lat = lat0(rng), lon = lon0(rng);
    const double v = speed(rng);
    const double recurve = turn_at(rng) * static_cast<double>(n);
    const double peak_wind = peak(rng);
    double nla = 0.0, nlo = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double step = static_cast<double>(k);
      Fix f;
      f.timestamp = detail::start_time(s) + static_cast<int>(k) * kFixInterval;
      f.lat = std::clamp(lat, -89.0, 89.0);
      f.lon = std::clamp(lon, -179.0, 179.0);
      const double phase = step / static_cast<double>(n);
      f.max_wind = 25.0 + (peak_wind - 25.0) * std::sin(3.14159265358979 * phase);
      f.min_pressure = 1012.0 - 0.85 * (f.max_wind - 25.0);
      t.fixes.push_back(f);

      // heading swings smoothly from west-northwest to northeast around `recurve`
      const double w = 1.0 / (1.0 + std::exp(-(step - recurve) / 1.5));
      const double vlat = v * (0.35 * (1.0 - w) + 0.8 * w) * (1.0 + 0.03 * step * w);
      const double vlon = v * (-0.9 * (1.0 - w) + 0.9 * w) * (1.0 + 0.05 * step * w);
      nla = 0.6 * nla + noise(rng);
      nlo = 0.6 * nlo + noise(rng);
      lat += vlat + nla;
      lon += vlon + nlo;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace stormcast::synthetic
