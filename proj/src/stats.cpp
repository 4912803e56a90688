#include "basket/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace basket {

double mean_of(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("mean_of: empty input");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median_of: empty input");
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

Interval hpd_from_samples(const std::vector<double>& samples, double alpha) {
  if (samples.size() < 100) {
    throw std::invalid_argument("hpd_from_samples: need at least 100 samples");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("hpd_from_samples: alpha must lie in (0,1)");
  }
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const size_t n = sorted.size();
  const size_t m = static_cast<size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(n)));
  const size_t keep = std::max<size_t>(1, std::min(m, n));
  size_t best = 0;
  double best_width = sorted[keep - 1] - sorted[0];
  for (size_t i = 1; i + keep <= n; ++i) {
    const double width = sorted[i + keep - 1] - sorted[i];
    if (width < best_width) {  // strict: ties keep the lowest lower bound
      best_width = width;
      best = i;
    }
  }
  return Interval{sorted[best], sorted[best + keep - 1]};
}

std::vector<std::pair<double, double>> kde_curve(const std::vector<double>& samples,
                                                 int grid_points) {
  if (grid_points < 2) throw std::invalid_argument("kde_curve: need at least 2 grid points");
  const size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("kde_curve: need at least 2 samples");

  double mean = mean_of(samples);
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw std::invalid_argument("kde_curve: samples are degenerate (all equal)");
  }
  const double q1 = sorted[static_cast<size_t>(0.25 * static_cast<double>(n - 1))];
  const double q3 = sorted[static_cast<size_t>(0.75 * static_cast<double>(n - 1))];
  const double iqr = q3 - q1;

  // Silverman's rule of thumb on the smaller of sd and IQR/1.34.
  double scale = sd;
  if (iqr > 0.0) scale = std::min(scale, iqr / 1.34);
  double bandwidth = 0.9 * scale * std::pow(static_cast<double>(n), -0.2);
  bandwidth = std::max(bandwidth, 1e-3);

  const double norm = 1.0 / (static_cast<double>(n) * bandwidth *
                             std::sqrt(2.0 * 3.14159265358979323846));
  const double cutoff = 8.0 * bandwidth;  // Gaussian tails beyond 8 sigma are negligible

  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(grid_points - 1);
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), x - cutoff);
    const auto hi = std::upper_bound(lo, sorted.end(), x + cutoff);
    double acc = 0.0;
    for (auto it = lo; it != hi; ++it) {
      const double z = (x - *it) / bandwidth;
      acc += std::exp(-0.5 * z * z);
    }
    curve.emplace_back(x, norm * acc);
  }
  return curve;
}

}  // namespace basket
