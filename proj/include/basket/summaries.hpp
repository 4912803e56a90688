#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "basket/exact.hpp"
#include "basket/mcmc.hpp"
#include "basket/numerics.hpp"
#include "basket/rng.hpp"
#include "basket/trial.hpp"

namespace basket {

// One report row, used for baskets and for clusters alike.
struct BasketSummary {
  std::string name;
  double post_prob = 0.0;
  double mean = 0.0;
  double median = 0.0;
  Interval hpd;
  double ess = 0.0;
  bool operator==(const BasketSummary&) const = default;
};

// A fitted model: inputs, engine output, and the posterior draws every
// summary is computed from.
struct MemFit {
  TrialData data;
  PriorConfig prior;
  AnalysisConfig config;
  std::variant<ExactPosterior, McmcTrace> engine;
  std::vector<std::vector<double>> pi_draws;  // J x n
  uint64_t seed = 0;

  const Matrix& pep() const;
  ExchConfig map_config() const;
};

// Runs the configured engine and collects posterior draws (the exact engine
// samples its mixture with the same draw count as the MCMC default).
MemFit fit_model(const TrialData& data, const PriorConfig& prior,
                 const AnalysisConfig& config);

// Share of draws beyond each basket's null rate (strictly above for
// "greater", strictly below for "less").
std::vector<double> posterior_probability(const MemFit& fit, const std::vector<double>& p0,
                                          Alternative alternative);

// Exact-engine cross-check: the same probabilities from the mixture's beta
// cdfs instead of draws.
std::vector<double> posterior_probability_analytic(const MemFit& fit,
                                                   const std::vector<double>& p0,
                                                   Alternative alternative);

// Per-basket rows: exceedance probability, mean, median, HPD interval, ESS.
std::vector<BasketSummary> summarize(const MemFit& fit);

// Effective sample size: the shape sum of the beta distribution whose mean
// is pinned to the sample mean and whose equal-tailed (1-alpha) interval
// best matches the sample HPD interval, found by simulated annealing over
// the shape sum. Requires >= 100 draws.
double ess(const std::vector<double>& draws, double alpha);

// Fresh draws from the fitted posterior: the exact engine resamples its
// mixture, the MCMC engine bootstraps its stored draws.
std::vector<std::vector<double>> sample_posterior(const MemFit& fit, long long n,
                                                  RngState& rng);

}  // namespace basket
