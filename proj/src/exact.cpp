#include "basket/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "basket/model.hpp"

namespace basket {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Packed row mask of basket j (bits over the other baskets in ascending
// order) extracted from full-configuration bits.
uint32_t row_mask_of(uint64_t bits, int j, int J) {
  uint32_t mask = 0;
  for (int h = 0, pos = 0; h < J; ++h) {
    if (h == j) continue;
    const int c = ExchConfig::cell_index(j, h, J);
    if ((bits >> c) & 1) mask |= uint32_t{1} << pos;
    ++pos;
  }
  return mask;
}

std::vector<int> row_from_mask(uint32_t mask, int j, int J) {
  std::vector<int> row(static_cast<size_t>(J), 0);
  row[static_cast<size_t>(j)] = 1;
  for (int h = 0, pos = 0; h < J; ++h) {
    if (h == j) continue;
    row[static_cast<size_t>(h)] = static_cast<int>((mask >> pos) & 1);
    ++pos;
  }
  return row;
}

}  // namespace

ExactPosterior fit_exact(const TrialData& data, const PriorConfig& prior,
                         const AnalysisConfig& config) {
  data.validate();
  const int J = data.baskets();
  prior.validate(J);
  config.validate(J);
  if (J > 7) {
    throw std::invalid_argument(
        "exact engine: enumeration over " + std::to_string(J) +
        " baskets is infeasible (limit 7); use the MCMC engine");
  }
  if (J == 7) {
    std::fprintf(stderr,
                 "warning: exact enumeration over 7 baskets evaluates 2097152 "
                 "configurations; the MCMC engine scales better\n");
  }

  const int M = ExchConfig::cell_count(J);
  const uint64_t total = config_count(J);

  // Row tables: log marginal of basket j for each of its 2^(J-1) row patterns.
  std::vector<std::vector<double>> row_table(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j) {
    auto& table = row_table[static_cast<size_t>(j)];
    table.resize(size_t{1} << (J - 1));
    for (uint32_t mask = 0; mask < table.size(); ++mask) {
      table[mask] = log_marginal_row(j, row_from_mask(mask, j, J), data, prior);
    }
  }

  // Configuration prior: base value with every free cell clear, plus a delta
  // per set cell. Cells pinned by a 0/1 prior become feasibility masks.
  double prior_base = 0.0;
  std::vector<double> cell_delta(static_cast<size_t>(M), 0.0);
  uint64_t must_set = 0, must_clear = 0;
  for (int i = 0; i < J; ++i) {
    for (int j2 = i + 1; j2 < J; ++j2) {
      const int c = ExchConfig::cell_index(i, j2, J);
      const double p = prior.prior_exch[static_cast<size_t>(i)][static_cast<size_t>(j2)];
      if (p == 1.0) {
        must_set |= uint64_t{1} << c;
      } else if (p == 0.0) {
        must_clear |= uint64_t{1} << c;
      } else {
        prior_base += std::log1p(-p);
        cell_delta[static_cast<size_t>(c)] = std::log(p) - std::log1p(-p);
      }
    }
  }

  ExactPosterior posterior;
  posterior.baskets = J;
  posterior.log_weights.resize(total);

  double best_score = kNegInf;
  int best_index = 0;
  for (uint64_t bits = 0; bits < total; ++bits) {
    double score;
    if ((bits & must_clear) != 0 || (~bits & must_set) != 0) {
      score = kNegInf;
    } else {
      score = prior_base;
      for (uint64_t rest = bits; rest != 0; rest &= rest - 1) {
        score += cell_delta[static_cast<size_t>(std::countr_zero(rest))];
      }
      for (int j = 0; j < J; ++j) {
        score += row_table[static_cast<size_t>(j)][row_mask_of(bits, j, J)];
      }
    }
    posterior.log_weights[bits] = score;
    if (score > best_score) {
      best_score = score;
      best_index = static_cast<int>(bits);
    }
  }
  if (best_score == kNegInf) {
    throw std::runtime_error("exact engine: no configuration has positive prior mass");
  }
  posterior.map_index = best_index;

  // Normalize in fixed ascending order for bitwise determinism.
  double sum_exp = 0.0;
  for (double lw : posterior.log_weights) {
    if (lw != kNegInf) sum_exp += std::exp(lw - best_score);
  }
  const double log_norm = best_score + std::log(sum_exp);
  for (double& lw : posterior.log_weights) lw -= log_norm;

  posterior.pep.assign(static_cast<size_t>(J), std::vector<double>(static_cast<size_t>(J), 0.0));
  for (int j = 0; j < J; ++j) posterior.pep[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1.0;
  std::vector<double> cell_mass(static_cast<size_t>(M), 0.0);
  for (uint64_t bits = 0; bits < total; ++bits) {
    const double lw = posterior.log_weights[bits];
    if (lw == kNegInf) continue;
    const double w = std::exp(lw);
    for (uint64_t rest = bits; rest != 0; rest &= rest - 1) {
      cell_mass[static_cast<size_t>(std::countr_zero(rest))] += w;
    }
  }
  for (int i = 0; i < J; ++i) {
    for (int j2 = i + 1; j2 < J; ++j2) {
      const double mass = cell_mass[static_cast<size_t>(ExchConfig::cell_index(i, j2, J))];
      posterior.pep[static_cast<size_t>(i)][static_cast<size_t>(j2)] = mass;
      posterior.pep[static_cast<size_t>(j2)][static_cast<size_t>(i)] = mass;
    }
  }
  return posterior;
}

std::vector<std::pair<std::vector<int>, double>> row_config_weights(
    int j, const ExactPosterior& posterior) {
  const int J = posterior.baskets;
  if (j < 0 || j >= J) throw std::invalid_argument("row_config_weights: basket index out of range");
  std::vector<double> mass(size_t{1} << (J - 1), 0.0);
  for (uint64_t bits = 0; bits < posterior.log_weights.size(); ++bits) {
    const double lw = posterior.log_weights[bits];
    if (lw == -std::numeric_limits<double>::infinity()) continue;
    mass[row_mask_of(bits, j, J)] += std::exp(lw);
  }
  std::vector<std::pair<std::vector<int>, double>> out;
  out.reserve(mass.size());
  for (uint32_t mask = 0; mask < mass.size(); ++mask) {
    out.emplace_back(row_from_mask(mask, j, J), mass[mask]);
  }
  return out;
}

std::vector<std::vector<double>> sample_pi_exact(const ExactPosterior& posterior,
                                                 const TrialData& data,
                                                 const PriorConfig& prior, long long n_draws,
                                                 RngState& rng) {
  if (n_draws < 1) throw std::invalid_argument("sample_pi_exact: need at least one draw");
  const int J = posterior.baskets;
  std::vector<std::vector<double>> draws(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j) {
    const auto row_weights = row_config_weights(j, posterior);
    std::vector<double> cumulative;
    std::vector<std::pair<double, double>> shapes;
    cumulative.reserve(row_weights.size());
    shapes.reserve(row_weights.size());
    double acc = 0.0;
    for (const auto& [row, probability] : row_weights) {
      acc += probability;
      cumulative.push_back(acc);
      shapes.push_back(conditional_beta_shapes(j, row, data, prior));
    }
    cumulative.back() = 1.0;  // guard against rounding at the top end

    auto& out = draws[static_cast<size_t>(j)];
    out.reserve(static_cast<size_t>(n_draws));
    for (long long d = 0; d < n_draws; ++d) {
      const double u = rng.uniform();
      const size_t pick = static_cast<size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      const auto& [a, b] = shapes[std::min(pick, shapes.size() - 1)];
      out.push_back(rng.beta(a, b));
    }
  }
  return draws;
}

}  // namespace basket
