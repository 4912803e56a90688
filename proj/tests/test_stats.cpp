#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "basket/numerics.hpp"
#include "basket/rng.hpp"
#include "basket/stats.hpp"

using namespace basket;

namespace {

// Brute-force shortest-window HPD over the sorted sample, the independent
// check for the production scan.
Interval hpd_brute_force(std::vector<double> samples, double alpha) {
  std::sort(samples.begin(), samples.end());
  const size_t n = samples.size();
  const size_t m = std::min(
      n, static_cast<size_t>(std::ceil((1.0 - alpha) * static_cast<double>(n))));
  size_t best = 0;
  double best_width = samples[m - 1] - samples[0];
  for (size_t s = 1; s + m <= n; ++s) {
    const double width = samples[s + m - 1] - samples[s];
    if (width < best_width) {  // strict: ties keep the lowest lower bound
      best_width = width;
      best = s;
    }
  }
  return {samples[best], samples[best + m - 1]};
}

}  // namespace

TEST_CASE("mean and median basics") {
  CHECK(mean_of({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
  CHECK(median_of({5.0, 1.0, 3.0}) == doctest::Approx(3.0));
  CHECK(median_of({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
  CHECK(median_of({7.0}) == doctest::Approx(7.0));
}

TEST_CASE("hpd on an even grid keeps the lowest window on ties") {
  std::vector<double> grid(200);
  for (int i = 0; i < 200; ++i) grid[static_cast<size_t>(i)] = i / 199.0;
  const Interval h = hpd_from_samples(grid, 0.05);
  // ceil(0.95 * 200) = 190 points; every window has the same width, so the
  // first one wins.
  CHECK(h.lower == doctest::Approx(0.0));
  CHECK(h.upper == doctest::Approx(189.0 / 199.0));
}

TEST_CASE("hpd matches the brute-force shortest window") {
  RngState rng(101, 0);
  for (int rep = 0; rep < 8; ++rep) {
    std::vector<double> samples(501 + rep * 37);
    for (auto& s : samples) s = rng.beta(2.0 + rep, 5.0);
    for (double alpha : {0.05, 0.2, 0.5}) {
      const Interval got = hpd_from_samples(samples, alpha);
      const Interval want = hpd_brute_force(samples, alpha);
      CHECK(got.lower == want.lower);
      CHECK(got.upper == want.upper);
    }
  }
}

TEST_CASE("hpd of a symmetric beta approaches the equal-tailed interval") {
  // For a symmetric unimodal distribution the HPD and equal-tailed intervals
  // coincide.
  RngState rng(103, 0);
  std::vector<double> samples(200000);
  for (auto& s : samples) s = rng.beta(2.0, 2.0);
  const Interval h = hpd_from_samples(samples, 0.05);
  CHECK(h.lower == doctest::Approx(beta_quantile(0.025, 2.0, 2.0)).epsilon(0.012));
  CHECK(h.upper == doctest::Approx(beta_quantile(0.975, 2.0, 2.0)).epsilon(0.012));
}

TEST_CASE("hpd input validation") {
  std::vector<double> few(50, 0.5);
  CHECK_THROWS_AS(hpd_from_samples(few, 0.05), std::invalid_argument);
  std::vector<double> enough(200, 0.5);
  CHECK_THROWS_AS(hpd_from_samples(enough, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hpd_from_samples(enough, 1.0), std::invalid_argument);
}

TEST_CASE("kde grid shape and positivity") {
  RngState rng(107, 0);
  std::vector<double> samples(5000);
  for (auto& s : samples) s = rng.beta(3.0, 3.0);
  const auto curve = kde_curve(samples, 512);
  REQUIRE(curve.size() == 512);
  CHECK(curve.front().first == doctest::Approx(0.0));
  CHECK(curve.back().first == doctest::Approx(1.0));
  for (size_t k = 1; k < curve.size(); ++k) {
    CHECK(curve[k].first > curve[k - 1].first);
    CHECK(curve[k].second >= 0.0);
  }
}

TEST_CASE("kde of a symmetric sample is symmetric") {
  // Mirror-closed sample set: density(x) must equal density(1-x).
  RngState rng(109, 0);
  std::vector<double> samples;
  for (int i = 0; i < 4000; ++i) {
    const double u = 0.5 * rng.beta(4.0, 2.0);
    samples.push_back(0.5 + u);
    samples.push_back(0.5 - u);
  }
  const auto curve = kde_curve(samples, 513);  // odd count: grid is mirror-closed
  const size_t G = curve.size();
  for (size_t k = 0; k < G; ++k) {
    CHECK(curve[k].second == doctest::Approx(curve[G - 1 - k].second).epsilon(1e-6));
  }
}

TEST_CASE("kde integrates to roughly one for interior mass") {
  RngState rng(113, 0);
  std::vector<double> samples(20000);
  for (auto& s : samples) s = 0.2 + 0.6 * rng.beta(5.0, 5.0);
  const auto curve = kde_curve(samples, 512);
  double integral = 0.0;
  for (size_t k = 1; k < curve.size(); ++k) {
    integral += 0.5 * (curve[k].second + curve[k - 1].second) *
                (curve[k].first - curve[k - 1].first);
  }
  CHECK(integral == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("kde bandwidth floor keeps a near-degenerate sample finite") {
  std::vector<double> samples(3000, 0.5);
  for (size_t i = 0; i < samples.size(); i += 2) samples[i] += 1e-9;
  const auto curve = kde_curve(samples, 512);
  for (const auto& [x, d] : curve) {
    CHECK(std::isfinite(d));
    CHECK(d >= 0.0);
  }
}

TEST_CASE("kde input validation") {
  std::vector<double> constant(100, 0.3);
  CHECK_THROWS_AS(kde_curve(constant, 512), std::invalid_argument);
  std::vector<double> one = {0.5};
  CHECK_THROWS_AS(kde_curve(one, 512), std::invalid_argument);
  std::vector<double> ok = {0.4, 0.6};
  CHECK_THROWS_AS(kde_curve(ok, 1), std::invalid_argument);
}
