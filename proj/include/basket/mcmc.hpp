#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "basket/rng.hpp"
#include "basket/trial.hpp"

namespace basket {

// One Metropolis run over the configuration domain.
struct McmcTrace {
  int baskets = 0;
  long long iter = 0;            // retained iterations (burn-in excluded)
  long long accepted_count = 0;  // accepted proposals across burn-in + retained
  // Visit count and first-visit iteration per retained configuration, keyed
  // by the packed bit words.
  std::map<std::vector<uint64_t>, std::pair<long long, long long>> config_tally;
  Matrix pep;             // visit proportion per pair
  ExchConfig map_config;  // most visited, earliest first visit on ties
  std::vector<std::vector<double>> pi_draws;  // one draw per basket per iteration

  McmcTrace() : map_config(1) {}
};

// Proposal: flip k distinct upper-triangle cells, k uniform on
// {1, ..., J(J-1)/2}, cells chosen uniformly without replacement. The
// distribution is symmetric between any two configurations.
ExchConfig propose_flip(const ExchConfig& current, RngState& rng);

// Metropolis sampling: burn-in proposals are discarded, each retained
// iteration tallies the current configuration and draws every basket's
// response rate from its conditional beta.
McmcTrace fit_mcmc(const TrialData& data, const PriorConfig& prior,
                   const AnalysisConfig& config);

}  // namespace basket
