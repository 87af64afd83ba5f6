#pragma once

// Best-track ingestion and sample construction.
//
// A track CSV has the header
//   storm_id,name,timestamp,lat_deg,lon_deg,max_wind_kt,min_pressure_hpa
// and one row per 6-hourly fix. Rows of different storms may interleave, but
// the rows of one storm must be in time order on the 6-hour grid.

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "stormcast/errors.hpp"
#include "stormcast/geo.hpp"

namespace stormcast {

using Timestamp = std::chrono::sys_seconds;

inline constexpr std::chrono::hours kFixInterval{6};
inline constexpr std::string_view kTrackCsvHeader =
    "storm_id,name,timestamp,lat_deg,lon_deg,max_wind_kt,min_pressure_hpa";

struct Fix {
  Timestamp timestamp{};
  double lat = 0.0;
  double lon = 0.0;
  double max_wind = 0.0;      // knots
  double min_pressure = 0.0;  // hPa
};

struct StormTrack {
  std::string storm_id;
  std::string name;
  std::vector<Fix> fixes;

  std::size_t size() const { return fixes.size(); }
};

// ---------------------------------------------------------------------------
// Timestamps

/// Parses `YYYY-MM-DDTHH:MM:SSZ`. Returns false on any deviation.
inline bool parse_iso8601_utc(std::string_view text, Timestamp& out) {
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z') {
    return false;
  }
  auto field = [&](std::size_t pos, std::size_t len, int& value) {
    const char* first = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, first + len, value);
    return ec == std::errc{} && ptr == first + len;
  };
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  if (!field(0, 4, y) || !field(5, 2, mo) || !field(8, 2, d) || !field(11, 2, h) || !field(14, 2, mi) ||
      !field(17, 2, s)) {
    return false;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return false;
  out = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
  return true;
}

inline std::string format_iso8601_utc(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------
// Track CSV

/// Throws ValidationError if the fix violates a physical range.
inline void validate_fix(const Fix& f) {
  if (!(f.lat >= -90.0 && f.lat <= 90.0))
    throw ValidationError("latitude " + std::to_string(f.lat) + " outside [-90, 90]");
  if (!(f.lon >= -180.0 && f.lon <= 180.0))
    throw ValidationError("longitude " + std::to_string(f.lon) + " outside [-180, 180]");
  if (!(f.max_wind >= 0.0)) throw ValidationError("negative max wind " + std::to_string(f.max_wind));
  if (!(f.min_pressure > 0.0 && f.min_pressure < 1100.0))
    throw ValidationError("min pressure " + std::to_string(f.min_pressure) + " outside (0, 1100)");
}

/// Throws ValidationError unless the track is non-empty, in range and on the 6-hour grid.
inline void validate_track(const StormTrack& track) {
  if (track.fixes.empty()) throw ValidationError("storm " + track.storm_id + " has no fixes");
  for (std::size_t i = 0; i < track.fixes.size(); ++i) {
    validate_fix(track.fixes[i]);
    if (i > 0 && track.fixes[i].timestamp - track.fixes[i - 1].timestamp != kFixInterval)
      throw ValidationError("storm " + track.storm_id + " fix " + std::to_string(i) +
                            " is not 6 hours after the previous fix");
  }
}

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline bool parse_finite(std::string_view text, double& value) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(value);
}

}  // namespace detail

/// Reads a track CSV. Storms are returned in order of first appearance.
inline std::vector<StormTrack> parse_track_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto strip_cr = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };

  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  strip_cr(line);
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != kTrackCsvHeader) throw ParseError(1, "unexpected header, want '" + std::string(kTrackCsvHeader) + "'");

  std::vector<StormTrack> tracks;
  std::unordered_map<std::string, std::size_t> index;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto cols = detail::split_commas(line);
    if (cols.size() != 7)
      throw ParseError(line_no, "expected 7 columns, got " + std::to_string(cols.size()));
    if (cols[0].empty()) throw ParseError(line_no, "empty storm_id");

    Fix fix;
    if (!parse_iso8601_utc(cols[2], fix.timestamp))
      throw ParseError(line_no, "bad timestamp '" + std::string(cols[2]) + "'");
    double* targets[] = {&fix.lat, &fix.lon, &fix.max_wind, &fix.min_pressure};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!detail::parse_finite(cols[3 + k], *targets[k]))
        throw ParseError(line_no, "unparseable number '" + std::string(cols[3 + k]) + "'");
    }
    try {
      validate_fix(fix);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }

    const std::string id(cols[0]);
    auto [it, inserted] = index.try_emplace(id, tracks.size());
    if (inserted) tracks.push_back(StormTrack{id, std::string(cols[1]), {}});
    StormTrack& track = tracks[it->second];
    if (!track.fixes.empty()) {
      const auto gap = fix.timestamp - track.fixes.back().timestamp;
      if (gap <= Timestamp::duration::zero())
        throw ValidationError("line " + std::to_string(line_no) + ": storm " + id +
                              " timestamps not strictly increasing");
      if (gap != kFixInterval)
        throw ValidationError("line " + std::to_string(line_no) + ": storm " + id +
                              " fix is not 6 hours after the previous fix");
    }
    track.fixes.push_back(fix);
  }
  return tracks;
}

inline std::vector<StormTrack> parse_track_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_track_csv(in);
}

/// Inverse of parse_track_csv; numbers are written in shortest round-trip form.
inline std::string format_track_csv(std::span<const StormTrack> tracks) {
  std::string out(kTrackCsvHeader);
  out += '\n';
  auto num = [&](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
  };
  for (const auto& t : tracks) {
    for (const auto& f : t.fixes) {
      out += t.storm_id;
      out += ',';
      out += t.name;
      out += ',';
      out += format_iso8601_utc(f.timestamp);
      for (double v : {f.lat, f.lon, f.max_wind, f.min_pressure}) {
        out += ',';
        num(v);
      }
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Features

inline constexpr std::size_t kNumFeatures = 6;

enum Feature : std::size_t {
  kLat = 0,
  kLon = 1,
  kMaxWind = 2,
  kMinPressure = 3,
  kStepDistance = 4,  // km from the previous fix
  kStepBearing = 5,   // degrees clockwise from north, [0, 360)
};

using FeatureVector = std::array<double, kNumFeatures>;

/// One vector per fix; the first fix has zero step distance and bearing.
inline std::vector<FeatureVector> derive_features(const StormTrack& track) {
  std::vector<FeatureVector> out;
  out.reserve(track.fixes.size());
  for (std::size_t i = 0; i < track.fixes.size(); ++i) {
    const Fix& f = track.fixes[i];
    FeatureVector v{f.lat, f.lon, f.max_wind, f.min_pressure, 0.0, 0.0};
    if (i > 0) {
      const Fix& prev = track.fixes[i - 1];
      v[kStepDistance] = haversine_km({prev.lat, prev.lon}, {f.lat, f.lon});
      v[kStepBearing] = initial_bearing_deg({prev.lat, prev.lon}, {f.lat, f.lon});
    }
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Min-max scaling

struct Scaler {
  FeatureVector min{};
  FeatureVector max{};

  /// Maps into [0, 1], clamping values outside the fitted range. Constant features map to 0.
  double normalize(std::size_t feature, double x) const {
    const double span = max[feature] - min[feature];
    if (span <= 0.0) return 0.0;
    return std::clamp((x - min[feature]) / span, 0.0, 1.0);
  }

  /// Affine inverse of normalize; not clamped, so it also maps interval bounds.
  double denormalize(std::size_t feature, double u) const {
    return min[feature] + u * (max[feature] - min[feature]);
  }

  /// Scale factor from normalized to physical units (used for spreads).
  double range(std::size_t feature) const { return max[feature] - min[feature]; }
};

inline Scaler fit_minmax(std::span<const FeatureVector> features) {
  if (features.empty()) throw ValidationError("fit_minmax: no feature vectors");
  Scaler s{features.front(), features.front()};
  for (const auto& v : features) {
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      s.min[i] = std::min(s.min[i], v[i]);
      s.max[i] = std::max(s.max[i], v[i]);
    }
  }
  return s;
}

enum class ScaleDirection { kForward, kInverse };

inline FeatureVector apply_minmax(const Scaler& scaler, const FeatureVector& v,
                                  ScaleDirection direction = ScaleDirection::kForward) {
  FeatureVector out{};
  for (std::size_t i = 0; i < kNumFeatures; ++i)
    out[i] = direction == ScaleDirection::kForward ? scaler.normalize(i, v[i]) : scaler.denormalize(i, v[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Splitting

struct SplitDataset {
  std::vector<StormTrack> train;
  std::vector<StormTrack> validation;
  std::vector<StormTrack> test;
  std::uint64_t seed = 0;
};

/// Seeded permutation of whole storms: the first round(test_frac*N) go to test,
/// the next round(val_frac*N) to validation, the remainder to train.
inline SplitDataset shuffle_split(std::span<const StormTrack> storms, std::uint64_t seed, double test_frac = 0.25,
                                  double val_frac = 0.25) {
  const std::size_t n = storms.size();
  if (n < 4) throw ValidationError("shuffle_split: need at least 4 storms, got " + std::to_string(n));
  if (!(test_frac > 0.0 && val_frac > 0.0 && test_frac + val_frac < 1.0))
    throw ValidationError("shuffle_split: fractions must be positive and sum below 1");
  const auto n_test = static_cast<std::size_t>(std::lround(test_frac * static_cast<double>(n)));
  const auto n_val = static_cast<std::size_t>(std::lround(val_frac * static_cast<double>(n)));
  if (n_test == 0 || n_val == 0 || n_test + n_val >= n)
    throw ValidationError("shuffle_split: fractions leave an empty split");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  SplitDataset out;
  out.seed = seed;
  for (std::size_t k = 0; k < n; ++k) {
    const StormTrack& s = storms[order[k]];
    if (k < n_test)
      out.test.push_back(s);
    else if (k < n_test + n_val)
      out.validation.push_back(s);
    else
      out.train.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Samples

struct SampleConfig {
  std::size_t min_start = 4;  // observed fixes before the first prediction
  std::size_t pred_len = 1;   // steps ahead (1 = 6 h)
  std::size_t max_len = 89;   // longest storm in the dataset

  std::size_t input_len() const { return max_len - pred_len - min_start; }

  void validate() const {
    if (min_start < 1) throw ValidationError("min_start must be >= 1");
    if (pred_len < 1) throw ValidationError("pred_len must be >= 1");
    if (max_len <= min_start + pred_len)
      throw ValidationError("max_len must exceed min_start + pred_len (input length would be zero)");
  }
};

struct Sample {
  std::string storm_id;
  std::size_t cutoff = 0;     // number of observed fixes
  Eigen::MatrixXd input;      // input_len x kNumFeatures, pre-padded with zero rows
  std::array<double, 2> label{};  // normalized (lat, lon) at cutoff + pred_len - 1
  std::size_t mask_len = 0;   // number of real rows at the bottom of `input`
};

/// One sample per cutoff c in [min_start, L - pred_len]. The most recent
/// min(c, input_len) normalized fixes fill the bottom rows of the input.
inline std::vector<Sample> build_samples(std::span<const FeatureVector> features, const Scaler& scaler,
                                         const SampleConfig& config, const std::string& storm_id = {}) {
  config.validate();
  const std::size_t L = features.size();
  if (L > config.max_len)
    throw ValidationError("storm " + storm_id + " has " + std::to_string(L) + " fixes, more than max_len " +
                          std::to_string(config.max_len));
  std::vector<Sample> out;
  if (L < config.min_start + config.pred_len) return out;

  std::vector<FeatureVector> normalized;
  normalized.reserve(L);
  for (const auto& v : features) normalized.push_back(apply_minmax(scaler, v));

  const std::size_t input_len = config.input_len();
  for (std::size_t c = config.min_start; c + config.pred_len <= L; ++c) {
    Sample s;
    s.storm_id = storm_id;
    s.cutoff = c;
    s.mask_len = std::min(c, input_len);
    s.input = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(input_len), kNumFeatures);
    const std::size_t first_fix = c - s.mask_len;
    const std::size_t first_row = input_len - s.mask_len;
    for (std::size_t r = 0; r < s.mask_len; ++r)
      for (std::size_t j = 0; j < kNumFeatures; ++j)
        s.input(static_cast<Eigen::Index>(first_row + r), static_cast<Eigen::Index>(j)) = normalized[first_fix + r][j];
    const auto& target = normalized[c + config.pred_len - 1];
    s.label = {target[kLat], target[kLon]};
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace stormcast
