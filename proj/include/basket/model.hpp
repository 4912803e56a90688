#pragma once

#include <utility>
#include <vector>

#include "basket/trial.hpp"

namespace basket {

// Log marginal density of basket j's responses given its exchangeability row:
// pooled beta-binomial evidence over the baskets in the row, times the
// independent evidence of every basket left out of the pool. row[j] must be 1.
double log_marginal_row(int j, const std::vector<int>& row, const TrialData& data,
                        const PriorConfig& prior);
double log_marginal_row(int j, const ExchConfig& config, const TrialData& data,
                        const PriorConfig& prior);

// Log prior of a full configuration: independent Bernoulli cells over the
// strict upper triangle. Cells pinned to 0/1 by the prior yield -inf when
// contradicted.
double log_config_prior(const ExchConfig& config, const PriorConfig& prior);

// Unnormalized log posterior weight of a full symmetric configuration:
// sum of row log marginals plus the configuration log prior.
double log_config_score(const ExchConfig& config, const TrialData& data,
                        const PriorConfig& prior);

// Conjugate beta shapes of basket j's response rate given its row:
// (a_j + pooled responses, b_j + pooled non-responses).
std::pair<double, double> conditional_beta_shapes(int j, const std::vector<int>& row,
                                                  const TrialData& data,
                                                  const PriorConfig& prior);
std::pair<double, double> conditional_beta_shapes(int j, const ExchConfig& config,
                                                  const TrialData& data,
                                                  const PriorConfig& prior);

// Number of distinct symmetric configurations: 2^(J(J-1)/2).
uint64_t config_count(int baskets);

// All configurations in ascending packed-bit order. Guarded at 7 baskets
// (2,097,152 configurations); more than 7 is refused.
std::vector<ExchConfig> enumerate_configs(int baskets);

}  // namespace basket
