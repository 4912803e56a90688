#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "basket/exact.hpp"
#include "basket/mcmc.hpp"
#include "basket/model.hpp"

using namespace basket;

namespace {

TrialData three_baskets() {
  TrialData d;
  d.basket_names = {"a", "b", "c"};
  d.responses = {1, 1, 9};
  d.sizes = {10, 10, 10};
  return d;
}

TrialData four_baskets() {
  TrialData d;
  d.basket_names = {"a", "b", "c", "d"};
  d.responses = {2, 3, 8, 1};
  d.sizes = {12, 11, 15, 9};
  return d;
}

int hamming(const ExchConfig& a, const ExchConfig& b) {
  int dist = 0;
  for (int c = 0; c < a.cells(); ++c) dist += a.cell(c) != b.cell(c);
  return dist;
}

}  // namespace

TEST_CASE("proposal flips between one and all cells, uniformly over k") {
  const ExchConfig base = ExchConfig::from_bits(3, 0b101);
  RngState rng(31, 0);
  const int n = 30000;
  std::vector<int> dist_counts(4, 0);
  for (int i = 0; i < n; ++i) {
    const ExchConfig prop = propose_flip(base, rng);
    const int d = hamming(base, prop);
    REQUIRE(d >= 1);
    REQUIRE(d <= 3);
    dist_counts[static_cast<size_t>(d)]++;
  }
  // k is uniform on {1,2,3}: expected 10000 each, sd = 81.6, five sigma = 409.
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(dist_counts[static_cast<size_t>(k)] - 10000) < 450);
  }
}

TEST_CASE("proposal distribution is symmetric between configurations") {
  // P(x -> y) depends only on the flip distance, so counts of A->B and B->A
  // proposals must agree statistically.
  const ExchConfig a = ExchConfig::from_bits(3, 0b001);
  const ExchConfig b = ExchConfig::from_bits(3, 0b110);  // distance 3
  RngState rng(37, 0);
  const int n = 60000;
  int a_to_b = 0, b_to_a = 0;
  for (int i = 0; i < n; ++i) {
    if (propose_flip(a, rng) == b) a_to_b++;
    if (propose_flip(b, rng) == a) b_to_a++;
  }
  // Both are Binomial(n, 1/3 * 1/C(3,3)) = Binomial(n, 1/3): sd = 115.
  CHECK(std::abs(a_to_b - b_to_a) < 820);  // five sigma of the difference
  CHECK(std::abs(a_to_b - n / 3) < 600);
  CHECK(std::abs(b_to_a - n / 3) < 600);
}

TEST_CASE("single-basket chains have no cells to flip") {
  const ExchConfig lone(1);
  RngState rng(41, 0);
  CHECK_THROWS_AS(propose_flip(lone, rng), std::invalid_argument);
}

TEST_CASE("a pinned prior keeps the chain on the feasible configuration") {
  TrialData d;
  d.basket_names = {"x", "y"};
  d.responses = {3, 4};
  d.sizes = {10, 10};
  PriorConfig prior = PriorConfig::reference(2);
  prior.prior_exch[0][1] = prior.prior_exch[1][0] = 1.0;
  AnalysisConfig config;
  config.mcmc_iter = 5000;
  config.mcmc_burnin = 500;
  const McmcTrace trace = fit_mcmc(d, prior, config);
  CHECK(trace.pep[0][1] == 1.0);
  CHECK(trace.map_config == ExchConfig::from_bits(2, 1));
  CHECK(trace.config_tally.size() == 1);
}

TEST_CASE("an initial configuration contradicting a pin is rejected") {
  TrialData d;
  d.basket_names = {"x", "y"};
  d.responses = {3, 4};
  d.sizes = {10, 10};
  PriorConfig prior = PriorConfig::reference(2);
  prior.prior_exch[0][1] = prior.prior_exch[1][0] = 1.0;
  AnalysisConfig config;
  config.mcmc_iter = 1000;
  config.mcmc_burnin = 100;
  config.initial_config = ExchConfig::from_bits(2, 0);  // contradicts the pin
  CHECK_THROWS_AS(fit_mcmc(d, prior, config), std::invalid_argument);
}

TEST_CASE("chain marginals agree with exact enumeration at three baskets") {
  const TrialData d = three_baskets();
  const PriorConfig prior = PriorConfig::reference(3);
  AnalysisConfig config;
  config.method = Method::exact;
  const ExactPosterior exact = fit_exact(d, prior, config);

  config.method = Method::mcmc;
  config.mcmc_iter = 200000;
  config.mcmc_burnin = 50000;
  config.seed = 7;
  const McmcTrace trace = fit_mcmc(d, prior, config);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(trace.pep[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     exact.pep[static_cast<size_t>(i)][static_cast<size_t>(j)]) < 0.01);
    }
  }
  CHECK(trace.map_config == exact.map_config());
}

TEST_CASE("long-run configuration frequencies approach the exact weights") {
  const TrialData d = four_baskets();
  const PriorConfig prior = PriorConfig::reference(4);
  AnalysisConfig config;
  config.method = Method::exact;
  const ExactPosterior exact = fit_exact(d, prior, config);

  config.method = Method::mcmc;
  config.mcmc_iter = 1000000;
  config.mcmc_burnin = 50000;
  config.seed = 11;
  const McmcTrace trace = fit_mcmc(d, prior, config);

  // Total variation distance between tally frequencies and exact weights.
  double tv = 0.0;
  for (uint64_t bits = 0; bits < 64; ++bits) {
    const ExchConfig c = ExchConfig::from_bits(4, bits);
    const auto it = trace.config_tally.find(c.words());
    const double freq =
        it == trace.config_tally.end()
            ? 0.0
            : static_cast<double>(it->second.first) / static_cast<double>(trace.iter);
    tv += std::abs(freq - std::exp(exact.log_weights[bits]));
  }
  tv *= 0.5;
  CHECK(tv < 0.01);
}

TEST_CASE("chains are bitwise reproducible and seeds matter") {
  const TrialData d = three_baskets();
  const PriorConfig prior = PriorConfig::reference(3);
  AnalysisConfig config;
  config.mcmc_iter = 20000;
  config.mcmc_burnin = 2000;
  config.seed = 3;
  const McmcTrace a = fit_mcmc(d, prior, config);
  const McmcTrace b = fit_mcmc(d, prior, config);
  CHECK(a.pep == b.pep);
  CHECK(a.pi_draws == b.pi_draws);
  CHECK(a.accepted_count == b.accepted_count);
  CHECK(a.config_tally == b.config_tally);

  config.seed = 4;
  const McmcTrace c = fit_mcmc(d, prior, config);
  CHECK(a.pi_draws != c.pi_draws);
}

TEST_CASE("map configuration is the most visited one") {
  const TrialData d = three_baskets();
  const PriorConfig prior = PriorConfig::reference(3);
  AnalysisConfig config;
  config.mcmc_iter = 50000;
  config.mcmc_burnin = 5000;
  config.seed = 13;
  const McmcTrace trace = fit_mcmc(d, prior, config);
  long long best = -1;
  for (const auto& [words, entry] : trace.config_tally) best = std::max(best, entry.first);
  const auto it = trace.config_tally.find(trace.map_config.words());
  REQUIRE(it != trace.config_tally.end());
  CHECK(it->second.first == best);
}

TEST_CASE("trace dimensions follow the configuration") {
  const TrialData d = three_baskets();
  const PriorConfig prior = PriorConfig::reference(3);
  AnalysisConfig config;
  config.mcmc_iter = 2500;
  config.mcmc_burnin = 300;
  const McmcTrace trace = fit_mcmc(d, prior, config);
  CHECK(trace.iter == 2500);
  REQUIRE(trace.pi_draws.size() == 3);
  for (const auto& draws : trace.pi_draws) {
    REQUIRE(draws.size() == 2500);
    for (double v : draws) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }
}
