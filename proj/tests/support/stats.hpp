#pragma once

// Small statistics helpers shared by tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "srb/rng.hpp"

namespace srb::testing {

inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Two-sided Kolmogorov-Smirnov distance against the standard normal.
inline double ks_statistic_vs_normal(std::vector<double> sample) {
  std::sort(sample.begin(), sample.end());
  const std::size_t n = sample.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double cdf = normal_cdf(sample[i]);
    double upper = static_cast<double>(i + 1) / static_cast<double>(n) - cdf;
    double lower = cdf - static_cast<double>(i) / static_cast<double>(n);
    d = std::max(d, std::max(upper, lower));
  }
  return d;
}

// Critical KS distance via Stephens' finite-sample correction.
inline double ks_critical(double alpha, std::size_t n) {
  double k_alpha = std::sqrt(-0.5 * std::log(alpha / 2.0));
  double sqrt_n = std::sqrt(static_cast<double>(n));
  return k_alpha / (sqrt_n + 0.12 + 0.11 / sqrt_n);
}

inline double sample_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  double m = sample_mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline Eigen::MatrixXd random_uniform_matrix(Eigen::Index n, Eigen::Index p,
                                             srb::RngStream& rng) {
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = 2.0 * rng.next_unit() - 1.0;
  return x;
}

inline Eigen::VectorXd random_normal_vector(Eigen::Index n, srb::RngStream& rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_normal();
  return v;
}

}  // namespace srb::testing
