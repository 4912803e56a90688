#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "basket/rng.hpp"
#include "basket/trial.hpp"

namespace basket {

// Posterior over the full configuration domain by complete enumeration.
// Configurations are implicit: index k is the configuration with packed
// upper-triangle bits k, so log_weights[k] is its normalized log weight.
struct ExactPosterior {
  int baskets = 0;
  std::vector<double> log_weights;  // log-sum-exp normalized to 0
  int map_index = 0;                // argmax weight, lowest index on ties
  Matrix pep;

  ExchConfig config(uint64_t index) const { return ExchConfig::from_bits(baskets, index); }
  ExchConfig map_config() const { return config(static_cast<uint64_t>(map_index)); }
};

// Enumerates every configuration, scores it, and normalizes. Feasible for up
// to 7 baskets (a warning is printed at 7); more baskets are refused with a
// pointer to the MCMC engine.
ExactPosterior fit_exact(const TrialData& data, const PriorConfig& prior,
                         const AnalysisConfig& config);

// Marginal probability of each row pattern of basket j (2^(J-1) patterns in
// ascending packed order), obtained by summing full-matrix weights.
std::vector<std::pair<std::vector<int>, double>> row_config_weights(
    int j, const ExactPosterior& posterior);

// Monte Carlo draws from each basket's posterior mixture: sample a row
// pattern by its marginal weight, then draw from the conjugate beta.
std::vector<std::vector<double>> sample_pi_exact(const ExactPosterior& posterior,
                                                 const TrialData& data,
                                                 const PriorConfig& prior, long long n_draws,
                                                 RngState& rng);

}  // namespace basket
