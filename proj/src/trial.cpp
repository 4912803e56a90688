#include "basket/trial.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace basket {

void TrialData::validate() const {
  const size_t J = basket_names.size();
  if (J == 0) throw std::invalid_argument("trial data: need at least one basket");
  if (responses.size() != J || sizes.size() != J) {
    throw std::invalid_argument("trial data: names, responses and sizes must have equal length");
  }
  std::set<std::string> seen;
  for (size_t j = 0; j < J; ++j) {
    if (basket_names[j].empty()) throw std::invalid_argument("trial data: empty basket name");
    if (!seen.insert(basket_names[j]).second) {
      throw std::invalid_argument("trial data: duplicate basket name '" + basket_names[j] + "'");
    }
    if (sizes[j] <= 0) {
      throw std::invalid_argument("trial data: basket '" + basket_names[j] +
                                  "' has non-positive size");
    }
    if (responses[j] < 0 || responses[j] > sizes[j]) {
      throw std::invalid_argument("trial data: basket '" + basket_names[j] +
                                  "' has responses outside [0, size]");
    }
  }
}

PriorConfig PriorConfig::reference(int baskets) {
  return broadcast(baskets, 0.5, 0.5, 0.5);
}

PriorConfig PriorConfig::broadcast(int baskets, double shape1, double shape2,
                                   double prior_off_diagonal) {
  PriorConfig prior;
  prior.shape1.assign(baskets, shape1);
  prior.shape2.assign(baskets, shape2);
  prior.prior_exch.assign(baskets, std::vector<double>(baskets, prior_off_diagonal));
  for (int j = 0; j < baskets; ++j) prior.prior_exch[j][j] = 1.0;
  return prior;
}

void PriorConfig::validate(int baskets) const {
  const size_t J = static_cast<size_t>(baskets);
  if (shape1.size() != J || shape2.size() != J) {
    throw std::invalid_argument("prior: shape vectors must have one entry per basket");
  }
  for (size_t j = 0; j < J; ++j) {
    if (!(shape1[j] > 0.0) || !(shape2[j] > 0.0)) {
      throw std::invalid_argument("prior: shapes must be positive");
    }
  }
  if (prior_exch.size() != J) {
    throw std::invalid_argument("prior: exchangeability matrix must be J x J");
  }
  for (size_t i = 0; i < J; ++i) {
    if (prior_exch[i].size() != J) {
      throw std::invalid_argument("prior: exchangeability matrix must be J x J");
    }
    if (prior_exch[i][i] != 1.0) {
      throw std::invalid_argument("prior: exchangeability diagonal must be 1");
    }
    for (size_t j = 0; j < J; ++j) {
      const double v = prior_exch[i][j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("prior: exchangeability cells must lie in [0,1]");
      }
      if (prior_exch[j][i] != v) {
        throw std::invalid_argument("prior: exchangeability matrix must be symmetric");
      }
    }
  }
}

ExchConfig::ExchConfig(int baskets) : baskets_(baskets) {
  if (baskets < 1) throw std::invalid_argument("exchangeability config: need at least one basket");
  words_.assign(static_cast<size_t>((cell_count(baskets) + 63) / 64), 0);
  if (words_.empty()) words_.push_back(0);  // J = 1: keep one word so low_bits() is defined
}

int ExchConfig::cell_index(int i, int j, int baskets) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= baskets || i == j) {
    throw std::invalid_argument("exchangeability config: cell index out of range");
  }
  return i * (2 * baskets - i - 1) / 2 + (j - i - 1);
}

ExchConfig ExchConfig::from_bits(int baskets, uint64_t bits) {
  ExchConfig config(baskets);
  config.words_[0] = bits;
  const int m = cell_count(baskets);
  if (m < 64) config.words_[0] &= (uint64_t{1} << m) - 1;
  return config;
}

bool ExchConfig::cell(int c) const {
  return (words_[static_cast<size_t>(c) / 64] >> (c % 64)) & 1;
}

void ExchConfig::set_cell(int c, bool value) {
  const uint64_t mask = uint64_t{1} << (c % 64);
  if (value) {
    words_[static_cast<size_t>(c) / 64] |= mask;
  } else {
    words_[static_cast<size_t>(c) / 64] &= ~mask;
  }
}

void ExchConfig::flip_cell(int c) {
  words_[static_cast<size_t>(c) / 64] ^= uint64_t{1} << (c % 64);
}

bool ExchConfig::entry(int i, int j) const {
  if (i == j) return true;
  return cell(cell_index(i, j, baskets_));
}

void ExchConfig::set_entry(int i, int j, bool value) {
  if (i == j) {
    if (!value) throw std::invalid_argument("exchangeability config: diagonal is fixed at 1");
    return;
  }
  set_cell(cell_index(i, j, baskets_), value);
}

std::vector<int> ExchConfig::row(int j) const {
  std::vector<int> out(static_cast<size_t>(baskets_), 0);
  for (int h = 0; h < baskets_; ++h) out[static_cast<size_t>(h)] = entry(j, h) ? 1 : 0;
  return out;
}

bool ExchConfig::operator<(const ExchConfig& other) const {
  if (baskets_ != other.baskets_) return baskets_ < other.baskets_;
  return words_ < other.words_;
}

std::vector<double> AnalysisConfig::resolved_p0(int baskets) const {
  if (p0.empty()) return std::vector<double>(static_cast<size_t>(baskets), 0.15);
  if (p0.size() == 1) return std::vector<double>(static_cast<size_t>(baskets), p0[0]);
  if (p0.size() != static_cast<size_t>(baskets)) {
    throw std::invalid_argument("analysis config: p0 must be a scalar or one value per basket");
  }
  return p0;
}

void AnalysisConfig::validate(int baskets) const {
  for (double v : resolved_p0(baskets)) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("analysis config: p0 values must lie in [0,1]");
    }
  }
  if (!(hpd_alpha > 0.0 && hpd_alpha < 1.0)) {
    throw std::invalid_argument("analysis config: hpd_alpha must lie in (0,1)");
  }
  if (mcmc_iter < 1) throw std::invalid_argument("analysis config: mcmc_iter must be positive");
  if (mcmc_burnin < 0) throw std::invalid_argument("analysis config: mcmc_burnin must be nonnegative");
  if (initial_config && initial_config->baskets() != baskets) {
    throw std::invalid_argument("analysis config: initial configuration has wrong basket count");
  }
}

std::string to_string(Alternative alternative) {
  return alternative == Alternative::greater ? "greater" : "less";
}

std::string to_string(Method method) { return method == Method::exact ? "exact" : "mcmc"; }

Alternative alternative_from_string(const std::string& text) {
  if (text == "greater") return Alternative::greater;
  if (text == "less") return Alternative::less;
  throw std::invalid_argument("alternative must be 'greater' or 'less'");
}

Method method_from_string(const std::string& text) {
  if (text == "exact") return Method::exact;
  if (text == "mcmc") return Method::mcmc;
  throw std::invalid_argument("method must be 'exact' or 'mcmc'");
}

}  // namespace basket
