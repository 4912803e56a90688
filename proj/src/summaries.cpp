#include "basket/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "basket/annealing.hpp"
#include "basket/model.hpp"
#include "basket/stats.hpp"

namespace basket {

namespace {

// Internal stream ids, forked from the user seed so the engine chain and any
// later resampling never share a stream.
constexpr uint64_t kStreamExactDraws = 1;
constexpr uint64_t kEssSeed = 0xE55;

}  // namespace

const Matrix& MemFit::pep() const {
  if (const auto* exact = std::get_if<ExactPosterior>(&engine)) return exact->pep;
  return std::get<McmcTrace>(engine).pep;
}

ExchConfig MemFit::map_config() const {
  if (const auto* exact = std::get_if<ExactPosterior>(&engine)) return exact->map_config();
  return std::get<McmcTrace>(engine).map_config;
}

MemFit fit_model(const TrialData& data, const PriorConfig& prior,
                 const AnalysisConfig& config) {
  data.validate();
  prior.validate(data.baskets());
  config.validate(data.baskets());

  MemFit fit{data, prior, config, ExactPosterior{}, {}, config.seed};
  if (config.method == Method::exact) {
    ExactPosterior posterior = fit_exact(data, prior, config);
    RngState rng(config.seed, kStreamExactDraws);
    fit.pi_draws = sample_pi_exact(posterior, data, prior, config.mcmc_iter, rng);
    fit.engine = std::move(posterior);
  } else {
    McmcTrace trace = fit_mcmc(data, prior, config);
    fit.pi_draws = trace.pi_draws;
    fit.engine = std::move(trace);
  }
  return fit;
}

std::vector<double> posterior_probability(const MemFit& fit, const std::vector<double>& p0,
                                          Alternative alternative) {
  const int J = fit.data.baskets();
  if (p0.size() != static_cast<size_t>(J)) {
    throw std::invalid_argument("posterior_probability: need one null rate per basket");
  }
  std::vector<double> out(static_cast<size_t>(J), 0.0);
  for (int j = 0; j < J; ++j) {
    const auto js = static_cast<size_t>(j);
    const auto& draws = fit.pi_draws[js];
    long long hits = 0;
    for (double d : draws) {
      if (alternative == Alternative::greater ? d > p0[js] : d < p0[js]) ++hits;
    }
    out[js] = static_cast<double>(hits) / static_cast<double>(draws.size());
  }
  return out;
}

std::vector<double> posterior_probability_analytic(const MemFit& fit,
                                                   const std::vector<double>& p0,
                                                   Alternative alternative) {
  const auto* exact = std::get_if<ExactPosterior>(&fit.engine);
  if (exact == nullptr) {
    throw std::invalid_argument(
        "posterior_probability_analytic: only available for the exact engine");
  }
  const int J = fit.data.baskets();
  if (p0.size() != static_cast<size_t>(J)) {
    throw std::invalid_argument("posterior_probability_analytic: need one null rate per basket");
  }
  std::vector<double> out(static_cast<size_t>(J), 0.0);
  for (int j = 0; j < J; ++j) {
    const auto js = static_cast<size_t>(j);
    double acc = 0.0;
    for (const auto& [row, probability] : row_config_weights(j, *exact)) {
      const auto [a, b] = conditional_beta_shapes(j, row, fit.data, fit.prior);
      const double below = beta_cdf(p0[js], a, b);
      acc += probability * (alternative == Alternative::greater ? 1.0 - below : below);
    }
    out[js] = acc;
  }
  return out;
}

double ess(const std::vector<double>& draws, double alpha) {
  if (draws.size() < 100) throw std::invalid_argument("ess: need at least 100 draws");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ess: alpha must lie in (0,1)");

  const Interval target = hpd_from_samples(draws, alpha);
  if (target.lower == target.upper) throw std::invalid_argument("ess: degenerate draws");

  double mu = mean_of(draws);
  mu = std::min(std::max(mu, 1e-10), 1.0 - 1e-10);

  // Distance between the sample HPD bounds and the equal-tailed interval of
  // the mean-pinned beta with shape sum s = e^u + e^v. Searching in log shape
  // space keeps late annealing steps proportionally small at every scale.
  const auto objective = [&](double u, double v) {
    const double s = std::exp(u) + std::exp(v);
    const double a = mu * s;
    const double b = (1.0 - mu) * s;
    const double lo = beta_quantile(alpha / 2.0, a, b);
    const double hi = beta_quantile(1.0 - alpha / 2.0, a, b);
    const double dl = lo - target.lower;
    const double dh = hi - target.upper;
    return std::sqrt(dl * dl + dh * dh);
  };

  const double log_lo = std::log(1e-4), log_hi = std::log(1e4);
  const Box2 bounds{log_lo, log_hi, log_lo, log_hi};

  // Method-of-moments start for the shape sum.
  double ss = 0.0;
  for (double d : draws) ss += (d - mu) * (d - mu);
  const double var = ss / static_cast<double>(draws.size());
  double s0 = var > 0.0 ? mu * (1.0 - mu) / var - 1.0 : 1.0;
  s0 = std::min(std::max(s0, 2e-4), 2e4);
  const auto clamp_log = [&](double x) { return std::min(std::max(x, log_lo), log_hi); };
  const std::pair<double, double> start{clamp_log(std::log(mu * s0)),
                                        clamp_log(std::log((1.0 - mu) * s0))};

  RngState rng(kEssSeed, 0);
  const AnnealResult best = anneal_minimize(objective, bounds, rng, AnnealSchedule{}, start);
  return std::exp(best.x) + std::exp(best.y);
}

std::vector<BasketSummary> summarize(const MemFit& fit) {
  const int J = fit.data.baskets();
  const auto p0 = fit.config.resolved_p0(J);
  const auto probs = posterior_probability(fit, p0, fit.config.alternative);
  std::vector<BasketSummary> rows;
  rows.reserve(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j) {
    const auto js = static_cast<size_t>(j);
    const auto& draws = fit.pi_draws[js];
    BasketSummary row;
    row.name = fit.data.basket_names[js];
    row.post_prob = probs[js];
    row.mean = mean_of(draws);
    row.median = median_of(draws);
    row.hpd = hpd_from_samples(draws, fit.config.hpd_alpha);
    row.ess = ess(draws, fit.config.hpd_alpha);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> sample_posterior(const MemFit& fit, long long n,
                                                  RngState& rng) {
  if (n < 1) throw std::invalid_argument("sample_posterior: need at least one draw");
  if (const auto* exact = std::get_if<ExactPosterior>(&fit.engine)) {
    return sample_pi_exact(*exact, fit.data, fit.prior, n, rng);
  }
  const int J = fit.data.baskets();
  std::vector<std::vector<double>> out(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j) {
    const auto& stored = fit.pi_draws[static_cast<size_t>(j)];
    auto& draws = out[static_cast<size_t>(j)];
    draws.reserve(static_cast<size_t>(n));
    for (long long d = 0; d < n; ++d) {
      draws.push_back(stored[rng.uniform_int(stored.size())]);
    }
  }
  return out;
}

}  // namespace basket
