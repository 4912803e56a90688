#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace basket {

using Matrix = std::vector<std::vector<double>>;

inline constexpr uint64_t kDefaultSeed = 83;

// Observed outcomes: per-basket response counts out of evaluable patients.
struct TrialData {
  std::vector<std::string> basket_names;
  std::vector<int> responses;  // S_j
  std::vector<int> sizes;      // n_j

  int baskets() const { return static_cast<int>(basket_names.size()); }
  void validate() const;  // throws std::invalid_argument on violation
};

// Beta prior shapes per basket plus the prior exchangeability matrix
// (symmetric, unit diagonal, cells in [0,1]).
struct PriorConfig {
  std::vector<double> shape1;  // a_j
  std::vector<double> shape2;  // b_j
  Matrix prior_exch;

  // All shapes 0.5 and every off-diagonal prior cell 0.5 ("reference" prior).
  static PriorConfig reference(int baskets);
  // Broadcast scalars to every basket / off-diagonal cell.
  static PriorConfig broadcast(int baskets, double shape1, double shape2,
                               double prior_off_diagonal);
  void validate(int baskets) const;
};

// One symmetric binary exchangeability matrix with unit diagonal, packed as
// bits over the strict upper triangle in row-major (i < j) order.
class ExchConfig {
 public:
  explicit ExchConfig(int baskets);

  static int cell_count(int baskets) { return baskets * (baskets - 1) / 2; }
  static int cell_index(int i, int j, int baskets);
  static ExchConfig from_bits(int baskets, uint64_t bits);  // low 64 cells

  int baskets() const { return baskets_; }
  int cells() const { return cell_count(baskets_); }

  bool cell(int c) const;
  void set_cell(int c, bool value);
  void flip_cell(int c);

  // Symmetric matrix entry; the diagonal is always 1.
  bool entry(int i, int j) const;
  void set_entry(int i, int j, bool value);

  // Full row j as 0/1 values (row[j] == 1).
  std::vector<int> row(int j) const;

  const std::vector<uint64_t>& words() const { return words_; }
  uint64_t low_bits() const { return words_.empty() ? 0 : words_[0]; }

  bool operator==(const ExchConfig& other) const = default;
  bool operator<(const ExchConfig& other) const;

 private:
  int baskets_ = 0;
  std::vector<uint64_t> words_;
};

enum class Alternative { greater, less };
enum class Method { exact, mcmc };

// Knobs for one analysis run.
struct AnalysisConfig {
  std::vector<double> p0;  // empty = default 0.15 per basket
  Alternative alternative = Alternative::greater;
  double hpd_alpha = 0.05;
  Method method = Method::mcmc;
  long long mcmc_iter = 200000;
  long long mcmc_burnin = 50000;
  uint64_t seed = kDefaultSeed;
  std::optional<ExchConfig> initial_config;

  // p0 broadcast/validated to length J.
  std::vector<double> resolved_p0(int baskets) const;
  void validate(int baskets) const;
};

std::string to_string(Alternative alternative);
std::string to_string(Method method);
Alternative alternative_from_string(const std::string& text);
Method method_from_string(const std::string& text);

}  // namespace basket
