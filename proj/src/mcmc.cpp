#include "basket/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "basket/model.hpp"
#include "basket/numerics.hpp"

namespace basket {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Default start: prior cells rounded down just below one half, so the
// reference prior starts from the identity matrix while pinned cells start
// at their pinned value.
ExchConfig default_initial_config(int J, const PriorConfig& prior) {
  ExchConfig config(J);
  for (int i = 0; i < J; ++i) {
    for (int j = i + 1; j < J; ++j) {
      const double p = prior.prior_exch[static_cast<size_t>(i)][static_cast<size_t>(j)];
      config.set_entry(i, j, std::round(p - 0.001) >= 1.0);
    }
  }
  return config;
}

// Per-run cache for the configuration score: the independent-evidence term of
// each basket and the prior's per-cell log odds are constants of the data.
class ScoreCache {
 public:
  ScoreCache(const TrialData& data, const PriorConfig& prior)
      : data_(data), prior_(prior), J_(data.baskets()) {
    singleton_term_.resize(static_cast<size_t>(J_));
    for (int h = 0; h < J_; ++h) {
      const auto hs = static_cast<size_t>(h);
      const double s = data.responses[hs];
      const double f = data.sizes[hs] - data.responses[hs];
      singleton_term_[hs] = log_beta(prior.shape1[hs] + s, prior.shape2[hs] + f) -
                            log_beta(prior.shape1[hs], prior.shape2[hs]);
    }
    const int M = ExchConfig::cell_count(J_);
    cell_delta_.assign(static_cast<size_t>(M), 0.0);
    const size_t words = static_cast<size_t>((M + 63) / 64);
    must_set_.assign(std::max<size_t>(words, 1), 0);
    must_clear_.assign(std::max<size_t>(words, 1), 0);
    for (int i = 0; i < J_; ++i) {
      for (int j = i + 1; j < J_; ++j) {
        const int c = ExchConfig::cell_index(i, j, J_);
        const double p = prior.prior_exch[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (p == 1.0) {
          must_set_[static_cast<size_t>(c) / 64] |= uint64_t{1} << (c % 64);
        } else if (p == 0.0) {
          must_clear_[static_cast<size_t>(c) / 64] |= uint64_t{1} << (c % 64);
        } else {
          prior_base_ += std::log1p(-p);
          cell_delta_[static_cast<size_t>(c)] = std::log(p) - std::log1p(-p);
        }
      }
    }
  }

  double score(const ExchConfig& config) const {
    const auto& words = config.words();
    for (size_t w = 0; w < must_set_.size() && w < words.size(); ++w) {
      if ((words[w] & must_clear_[w]) != 0) return kNegInf;
      if ((~words[w] & must_set_[w]) != 0) return kNegInf;
    }
    double acc = prior_base_;
    const int M = config.cells();
    for (int c = 0; c < M; ++c) {
      if (config.cell(c)) acc += cell_delta_[static_cast<size_t>(c)];
    }
    for (int j = 0; j < J_; ++j) {
      const auto js = static_cast<size_t>(j);
      double pooled_a = prior_.shape1[js];
      double pooled_b = prior_.shape2[js];
      for (int h = 0; h < J_; ++h) {
        const auto hs = static_cast<size_t>(h);
        if (config.entry(j, h)) {
          pooled_a += data_.responses[hs];
          pooled_b += data_.sizes[hs] - data_.responses[hs];
        } else {
          acc += singleton_term_[hs];
        }
      }
      acc += log_beta(pooled_a, pooled_b) - log_beta(prior_.shape1[js], prior_.shape2[js]);
    }
    return acc;
  }

 private:
  const TrialData& data_;
  const PriorConfig& prior_;
  int J_;
  std::vector<double> singleton_term_;
  std::vector<double> cell_delta_;
  std::vector<uint64_t> must_set_, must_clear_;
  double prior_base_ = 0.0;
};

}  // namespace

ExchConfig propose_flip(const ExchConfig& current, RngState& rng) {
  const int M = current.cells();
  if (M < 1) throw std::invalid_argument("propose_flip: need at least two baskets");
  const auto k = static_cast<int>(1 + rng.uniform_int(static_cast<uint64_t>(M)));
  // Partial Fisher-Yates over the cell indices: the first k entries become a
  // uniform k-subset.
  std::vector<int> cells(static_cast<size_t>(M));
  for (int c = 0; c < M; ++c) cells[static_cast<size_t>(c)] = c;
  ExchConfig next = current;
  for (int t = 0; t < k; ++t) {
    const auto pick =
        t + static_cast<int>(rng.uniform_int(static_cast<uint64_t>(M - t)));
    std::swap(cells[static_cast<size_t>(t)], cells[static_cast<size_t>(pick)]);
    next.flip_cell(cells[static_cast<size_t>(t)]);
  }
  return next;
}

McmcTrace fit_mcmc(const TrialData& data, const PriorConfig& prior,
                   const AnalysisConfig& config) {
  data.validate();
  const int J = data.baskets();
  prior.validate(J);
  config.validate(J);

  ExchConfig current = config.initial_config ? *config.initial_config
                                             : default_initial_config(J, prior);
  const ScoreCache cache(data, prior);
  double current_score = cache.score(current);
  if (current_score == kNegInf) {
    throw std::invalid_argument(
        "mcmc engine: initial configuration contradicts a prior cell pinned to 0 or 1");
  }

  RngState rng(config.seed, /*stream=*/0);
  const int M = current.cells();

  McmcTrace trace;
  trace.baskets = J;
  trace.iter = config.mcmc_iter;
  trace.pi_draws.assign(static_cast<size_t>(J), {});
  for (auto& v : trace.pi_draws) v.reserve(static_cast<size_t>(config.mcmc_iter));

  std::vector<long long> cell_visits(static_cast<size_t>(M), 0);

  const long long total_steps = config.mcmc_burnin + config.mcmc_iter;
  for (long long step = 0; step < total_steps; ++step) {
    if (M > 0) {
      const ExchConfig candidate = propose_flip(current, rng);
      const double candidate_score = cache.score(candidate);
      const double delta = candidate_score - current_score;
      if (delta >= 0.0 || rng.uniform() < std::exp(delta)) {
        current = candidate;
        current_score = candidate_score;
        ++trace.accepted_count;
      }
    }
    if (step < config.mcmc_burnin) continue;
    const long long retained = step - config.mcmc_burnin;

    auto& entry = trace.config_tally[current.words()];
    if (entry.first == 0) entry.second = retained;
    ++entry.first;
    for (int c = 0; c < M; ++c) {
      if (current.cell(c)) ++cell_visits[static_cast<size_t>(c)];
    }
    for (int j = 0; j < J; ++j) {
      const auto [a, b] = conditional_beta_shapes(j, current, data, prior);
      trace.pi_draws[static_cast<size_t>(j)].push_back(rng.beta(a, b));
    }
  }

  trace.pep.assign(static_cast<size_t>(J), std::vector<double>(static_cast<size_t>(J), 0.0));
  for (int j = 0; j < J; ++j) trace.pep[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1.0;
  for (int i = 0; i < J; ++i) {
    for (int j = i + 1; j < J; ++j) {
      const double share =
          static_cast<double>(cell_visits[static_cast<size_t>(ExchConfig::cell_index(i, j, J))]) /
          static_cast<double>(config.mcmc_iter);
      trace.pep[static_cast<size_t>(i)][static_cast<size_t>(j)] = share;
      trace.pep[static_cast<size_t>(j)][static_cast<size_t>(i)] = share;
    }
  }

  // Most visited configuration; first reached wins ties.
  long long best_count = -1, best_first = 0;
  std::vector<uint64_t> best_words;
  for (const auto& [words, stats] : trace.config_tally) {
    const auto [count, first] = stats;
    if (count > best_count || (count == best_count && first < best_first)) {
      best_count = count;
      best_first = first;
      best_words = words;
    }
  }
  trace.map_config = ExchConfig(J);
  for (int c = 0; c < M; ++c) {
    if ((best_words[static_cast<size_t>(c) / 64] >> (c % 64)) & 1) {
      trace.map_config.set_cell(c, true);
    }
  }
  return trace;
}

}  // namespace basket
