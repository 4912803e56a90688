#pragma once

#include <utility>
#include <vector>

#include "basket/numerics.hpp"

namespace basket {

double mean_of(const std::vector<double>& values);

// Midpoint of the two central order statistics.
double median_of(std::vector<double> values);

// Shortest contiguous window containing ceil((1-alpha)*N) sorted samples;
// ties resolved toward the lowest lower bound. Requires >= 100 samples.
Interval hpd_from_samples(const std::vector<double>& samples, double alpha);

// Gaussian kernel density on an equispaced grid over [0,1]. Bandwidth by
// Silverman's rule (clipped below at 1e-3). Requires >= 2 distinct samples.
std::vector<std::pair<double, double>> kde_curve(const std::vector<double>& samples,
                                                 int grid_points);

}  // namespace basket
