#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "stormcast/errors.hpp"

namespace stormcast {

struct MeanStd {
  double mean = 0.0;
  double sigma = 0.0;  // sample standard deviation, denominator n - 1
};

/// Welford's single-pass mean and sample standard deviation. Requires n >= 2.
inline MeanStd mean_std(std::span<const double> xs) {
  if (xs.size() < 2) throw ValidationError("mean_std: need at least 2 values");
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  return {mean, std::sqrt(std::max(0.0, m2 / static_cast<double>(n - 1)))};
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Inverse standard normal CDF: Acklam's rational approximation (relative
/// error below 1.2e-9) refined with one Halley step against erfc.
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("inverse_normal_cdf: p must be in (0, 1)");
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

/// Two-sided z for a central credible level given in percent, e.g. 95 -> 1.95996.
inline double z_for_level(double level_percent) {
  if (!(level_percent > 0.0 && level_percent < 100.0))
    throw ValidationError("credible level must be in (0, 100), got " + std::to_string(level_percent));
  return inverse_normal_cdf((1.0 + level_percent / 100.0) / 2.0);
}

struct NormalityTest {
  double k2 = 0.0;
  double p_value = 0.0;
  double z_skew = 0.0;
  double z_kurtosis = 0.0;
};

/// D'Agostino-Pearson omnibus test. Combines the D'Agostino skewness transform
/// and the Anscombe-Glynn kurtosis transform; K^2 ~ chi^2(2) under normality.
inline NormalityTest dagostino_k2(std::span<const double> xs) {
  const std::size_t count = xs.size();
  if (count < 20) throw ValidationError("dagostino_k2: need at least 20 values, got " + std::to_string(count));
  const double n = static_cast<double>(count);

  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw ValidationError("dagostino_k2: zero variance");

  // skewness
  const double g1 = m3 / std::pow(m2, 1.5);
  double y = g1 * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
  const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                       ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
  const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
  const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
  const double alpha = std::sqrt(2.0 / (w2 - 1.0));
  if (y == 0.0) y = 1.0;
  const double ya = y / alpha;
  const double z_skew = delta * std::log(ya + std::sqrt(ya * ya + 1.0));

  // kurtosis
  const double b2 = m4 / (m2 * m2);
  const double expected = 3.0 * (n - 1.0) / (n + 1.0);
  const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
  const double x = (b2 - expected) / std::sqrt(var_b2);
  const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                            std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
  const double A = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
  const double term1 = 1.0 - 2.0 / (9.0 * A);
  const double denom = 1.0 + x * std::sqrt(2.0 / (A - 4.0));
  const double term2 = std::copysign(std::cbrt((1.0 - 2.0 / A) / std::abs(denom)), denom);
  const double z_kurt = (term1 - term2) / std::sqrt(2.0 / (9.0 * A));

  NormalityTest out;
  out.z_skew = z_skew;
  out.z_kurtosis = z_kurt;
  out.k2 = z_skew * z_skew + z_kurt * z_kurt;
  out.p_value = std::exp(-out.k2 / 2.0);  // chi^2 survival function, 2 dof
  return out;
}

}  // namespace stormcast
