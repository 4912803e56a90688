#include "basket/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "basket/numerics.hpp"

namespace basket {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Shared core: pooled counts for basket j plus the sum of independent
// log-evidence terms of the baskets excluded from the pool.
template <typename InRow>
double log_marginal_row_impl(int j, InRow in_row, const TrialData& data,
                             const PriorConfig& prior) {
  const int J = data.baskets();
  double pooled_s = prior.shape1[static_cast<size_t>(j)];
  double pooled_f = prior.shape2[static_cast<size_t>(j)];
  double excluded = 0.0;
  for (int h = 0; h < J; ++h) {
    const auto hs = static_cast<size_t>(h);
    const double s = data.responses[hs];
    const double f = data.sizes[hs] - data.responses[hs];
    if (in_row(h)) {
      pooled_s += s;
      pooled_f += f;
    } else {
      excluded += log_beta(prior.shape1[hs] + s, prior.shape2[hs] + f) -
                  log_beta(prior.shape1[hs], prior.shape2[hs]);
    }
  }
  return log_beta(pooled_s, pooled_f) -
         log_beta(prior.shape1[static_cast<size_t>(j)], prior.shape2[static_cast<size_t>(j)]) +
         excluded;
}

}  // namespace

double log_marginal_row(int j, const std::vector<int>& row, const TrialData& data,
                        const PriorConfig& prior) {
  if (row.size() != static_cast<size_t>(data.baskets())) {
    throw std::invalid_argument("log_marginal_row: row length must equal basket count");
  }
  if (row[static_cast<size_t>(j)] != 1) {
    throw std::invalid_argument("log_marginal_row: a basket is always in its own row");
  }
  return log_marginal_row_impl(
      j, [&row](int h) { return row[static_cast<size_t>(h)] != 0; }, data, prior);
}

double log_marginal_row(int j, const ExchConfig& config, const TrialData& data,
                        const PriorConfig& prior) {
  return log_marginal_row_impl(j, [&config, j](int h) { return config.entry(j, h); }, data,
                               prior);
}

double log_config_prior(const ExchConfig& config, const PriorConfig& prior) {
  const int J = config.baskets();
  double acc = 0.0;
  for (int i = 0; i < J; ++i) {
    for (int j = i + 1; j < J; ++j) {
      const double p = prior.prior_exch[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (config.entry(i, j)) {
        if (p == 0.0) return kNegInf;
        acc += std::log(p);
      } else {
        if (p == 1.0) return kNegInf;
        acc += std::log1p(-p);
      }
    }
  }
  return acc;
}

double log_config_score(const ExchConfig& config, const TrialData& data,
                        const PriorConfig& prior) {
  const double prior_term = log_config_prior(config, prior);
  if (prior_term == kNegInf) return kNegInf;
  double acc = prior_term;
  for (int j = 0; j < data.baskets(); ++j) acc += log_marginal_row(j, config, data, prior);
  return acc;
}

namespace {

template <typename InRow>
std::pair<double, double> conditional_beta_shapes_impl(int j, InRow in_row,
                                                       const TrialData& data,
                                                       const PriorConfig& prior) {
  double a = prior.shape1[static_cast<size_t>(j)];
  double b = prior.shape2[static_cast<size_t>(j)];
  for (int h = 0; h < data.baskets(); ++h) {
    if (in_row(h)) {
      const auto hs = static_cast<size_t>(h);
      a += data.responses[hs];
      b += data.sizes[hs] - data.responses[hs];
    }
  }
  return {a, b};
}

}  // namespace

std::pair<double, double> conditional_beta_shapes(int j, const std::vector<int>& row,
                                                  const TrialData& data,
                                                  const PriorConfig& prior) {
  if (row.size() != static_cast<size_t>(data.baskets())) {
    throw std::invalid_argument("conditional_beta_shapes: row length must equal basket count");
  }
  if (row[static_cast<size_t>(j)] != 1) {
    throw std::invalid_argument("conditional_beta_shapes: a basket is always in its own row");
  }
  return conditional_beta_shapes_impl(
      j, [&row](int h) { return row[static_cast<size_t>(h)] != 0; }, data, prior);
}

std::pair<double, double> conditional_beta_shapes(int j, const ExchConfig& config,
                                                  const TrialData& data,
                                                  const PriorConfig& prior) {
  return conditional_beta_shapes_impl(j, [&config, j](int h) { return config.entry(j, h); },
                                      data, prior);
}

uint64_t config_count(int baskets) {
  if (baskets < 1) throw std::invalid_argument("config_count: need at least one basket");
  return uint64_t{1} << ExchConfig::cell_count(baskets);
}

std::vector<ExchConfig> enumerate_configs(int baskets) {
  if (baskets < 1) throw std::invalid_argument("enumerate_configs: need at least one basket");
  if (baskets > 7) {
    throw std::invalid_argument(
        "enumerate_configs: enumeration over " + std::to_string(baskets) +
        " baskets is infeasible (limit 7); use the MCMC engine");
  }
  const uint64_t count = config_count(baskets);
  std::vector<ExchConfig> out;
  out.reserve(count);
  for (uint64_t bits = 0; bits < count; ++bits) {
    out.push_back(ExchConfig::from_bits(baskets, bits));
  }
  return out;
}

}  // namespace basket
