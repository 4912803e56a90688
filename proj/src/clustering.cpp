#include "basket/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "basket/stats.hpp"

namespace basket {

namespace {

constexpr double kGainTol = 1e-12;

// One level of local moving. Returns the community of each vertex (relabeled
// to 0..C-1 by first appearance) and whether any vertex moved. The weight
// matrix may carry self-loops (folded from earlier aggregation levels).
std::pair<std::vector<int>, bool> local_moving(const Matrix& weight) {
  const int n = static_cast<int>(weight.size());
  double two_m = 0.0;
  std::vector<double> strength(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) strength[static_cast<size_t>(i)] += weight[static_cast<size_t>(i)][static_cast<size_t>(j)];
    two_m += strength[static_cast<size_t>(i)];
  }

  std::vector<int> community(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) community[static_cast<size_t>(i)] = i;
  if (two_m <= 0.0) return {community, false};

  std::vector<double> total(strength);  // community strength sums
  bool moved_any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int v = 0; v < n; ++v) {
      const auto vs = static_cast<size_t>(v);
      const int home = community[vs];
      // Edge weight from v into each neighboring community.
      std::map<int, double> links;
      for (int u = 0; u < n; ++u) {
        if (u == v) continue;
        const double w = weight[vs][static_cast<size_t>(u)];
        if (w != 0.0) links[community[static_cast<size_t>(u)]] += w;
      }
      total[static_cast<size_t>(home)] -= strength[vs];
      const auto gain_of = [&](int c) {
        const auto it = links.find(c);
        const double link = it == links.end() ? 0.0 : it->second;
        return link - total[static_cast<size_t>(c)] * strength[vs] / two_m;
      };
      const double stay = gain_of(home);
      int best_c = home;
      double best_gain = 0.0;
      for (const auto& [c, link] : links) {  // std::map: ascending community index
        (void)link;
        const double gain = gain_of(c) - stay;
        if (gain > best_gain + kGainTol) {
          best_gain = gain;
          best_c = c;
        }
      }
      total[static_cast<size_t>(best_c)] += strength[vs];
      if (best_c != home) {
        community[vs] = best_c;
        moved = true;
        moved_any = true;
      }
    }
  }

  // Relabel communities by first appearance.
  std::vector<int> relabel(static_cast<size_t>(n), -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    auto& slot = relabel[static_cast<size_t>(community[static_cast<size_t>(v)])];
    if (slot < 0) slot = next++;
    community[static_cast<size_t>(v)] = slot;
  }
  return {community, moved_any};
}

}  // namespace

ClusterAssignment cluster_louvain(const Matrix& pep, RngState& rng) {
  (void)rng;  // the sweep order is fixed, so the algorithm is deterministic
  const int J = static_cast<int>(pep.size());
  if (J == 0) throw std::invalid_argument("cluster_louvain: empty matrix");
  for (const auto& row : pep) {
    if (row.size() != static_cast<size_t>(J)) {
      throw std::invalid_argument("cluster_louvain: matrix must be square");
    }
  }

  // Working graph: off-diagonal weights only; self-loops appear once levels
  // aggregate. node_groups maps each super-vertex to its original baskets.
  Matrix weight(static_cast<size_t>(J), std::vector<double>(static_cast<size_t>(J), 0.0));
  for (int i = 0; i < J; ++i) {
    for (int j = 0; j < J; ++j) {
      if (i != j) weight[static_cast<size_t>(i)][static_cast<size_t>(j)] = pep[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
  }
  std::vector<std::vector<int>> node_groups(static_cast<size_t>(J));
  for (int j = 0; j < J; ++j) node_groups[static_cast<size_t>(j)] = {j};

  for (;;) {
    const auto [community, moved] = local_moving(weight);
    const int count = 1 + *std::max_element(community.begin(), community.end());
    if (!moved || count == static_cast<int>(weight.size())) break;

    // Aggregate: communities become vertices; within-community weight folds
    // into self-loops (double counted, consistent with strength = row sum).
    Matrix next(static_cast<size_t>(count), std::vector<double>(static_cast<size_t>(count), 0.0));
    const int n = static_cast<int>(weight.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        next[static_cast<size_t>(community[static_cast<size_t>(i)])]
            [static_cast<size_t>(community[static_cast<size_t>(j)])] +=
            weight[static_cast<size_t>(i)][static_cast<size_t>(j)];
      }
    }
    std::vector<std::vector<int>> next_groups(static_cast<size_t>(count));
    for (int i = 0; i < n; ++i) {
      auto& group = next_groups[static_cast<size_t>(community[static_cast<size_t>(i)])];
      group.insert(group.end(), node_groups[static_cast<size_t>(i)].begin(),
                   node_groups[static_cast<size_t>(i)].end());
    }
    weight = std::move(next);
    node_groups = std::move(next_groups);
  }

  ClusterAssignment assignment;
  assignment.clusters = std::move(node_groups);
  for (auto& cluster : assignment.clusters) std::sort(cluster.begin(), cluster.end());
  std::sort(assignment.clusters.begin(), assignment.clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (size_t c = 0; c < assignment.clusters.size(); ++c) {
    assignment.labels.push_back("Cluster " + std::to_string(c + 1));
  }
  return assignment;
}

namespace {

void validate_partition(const ClusterAssignment& assignment, int J) {
  std::vector<bool> seen(static_cast<size_t>(J), false);
  for (const auto& cluster : assignment.clusters) {
    if (cluster.empty()) throw std::invalid_argument("cluster assignment: empty cluster");
    for (int j : cluster) {
      if (j < 0 || j >= J) throw std::invalid_argument("cluster assignment: index out of range");
      if (seen[static_cast<size_t>(j)]) {
        throw std::invalid_argument("cluster assignment: basket assigned twice");
      }
      seen[static_cast<size_t>(j)] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw std::invalid_argument("cluster assignment: basket missing from partition");
  }
}

}  // namespace

std::vector<BasketSummary> cluster_summaries(const MemFit& fit,
                                             const ClusterAssignment& assignment) {
  const int J = fit.data.baskets();
  validate_partition(assignment, J);
  const auto p0 = fit.config.resolved_p0(J);

  std::vector<BasketSummary> rows;
  rows.reserve(assignment.clusters.size());
  for (size_t c = 0; c < assignment.clusters.size(); ++c) {
    const auto& members = assignment.clusters[c];
    std::vector<double> pooled;
    long long hits = 0, denom = 0;
    for (int j : members) {
      const auto& draws = fit.pi_draws[static_cast<size_t>(j)];
      pooled.insert(pooled.end(), draws.begin(), draws.end());
      for (double d : draws) {
        if (fit.config.alternative == Alternative::greater ? d > p0[static_cast<size_t>(j)]
                                                           : d < p0[static_cast<size_t>(j)]) {
          ++hits;
        }
      }
      denom += static_cast<long long>(draws.size());
    }
    BasketSummary row;
    row.name = c < assignment.labels.size() ? assignment.labels[c]
                                            : "Cluster " + std::to_string(c + 1);
    row.post_prob = static_cast<double>(hits) / static_cast<double>(denom);
    row.mean = mean_of(pooled);
    row.median = median_of(pooled);
    row.hpd = hpd_from_samples(pooled, fit.config.hpd_alpha);
    row.ess = ess(pooled, fit.config.hpd_alpha);
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix cluster_pep(const Matrix& pep, const ClusterAssignment& assignment) {
  const int J = static_cast<int>(pep.size());
  validate_partition(assignment, J);
  const size_t C = assignment.clusters.size();
  Matrix out(C, std::vector<double>(C, 0.0));
  for (size_t k = 0; k < C; ++k) {
    for (size_t l = k; l < C; ++l) {
      const auto& a = assignment.clusters[k];
      const auto& b = assignment.clusters[l];
      double acc = 0.0;
      long long pairs = 0;
      if (k == l) {
        for (size_t s = 0; s < a.size(); ++s) {
          for (size_t t = s + 1; t < a.size(); ++t) {
            acc += pep[static_cast<size_t>(a[s])][static_cast<size_t>(a[t])];
            ++pairs;
          }
        }
        out[k][k] = pairs == 0 ? 1.0 : acc / static_cast<double>(pairs);
      } else {
        for (int i : a) {
          for (int j : b) {
            acc += pep[static_cast<size_t>(i)][static_cast<size_t>(j)];
            ++pairs;
          }
        }
        out[k][l] = out[l][k] = acc / static_cast<double>(pairs);
      }
    }
  }
  return out;
}

Matrix cluster_map(const ExchConfig& map_config, const ClusterAssignment& assignment) {
  const int J = map_config.baskets();
  validate_partition(assignment, J);
  const size_t C = assignment.clusters.size();
  Matrix out(C, std::vector<double>(C, 0.0));
  for (size_t k = 0; k < C; ++k) {
    for (size_t l = k; l < C; ++l) {
      const auto& a = assignment.clusters[k];
      const auto& b = assignment.clusters[l];
      bool all = true;
      if (k == l) {
        for (size_t s = 0; s < a.size() && all; ++s) {
          for (size_t t = s + 1; t < a.size() && all; ++t) {
            all = map_config.entry(a[s], a[t]);
          }
        }
        out[k][k] = all ? 1.0 : 0.0;  // a singleton has no pairs and stays 1
      } else {
        for (size_t s = 0; s < a.size() && all; ++s) {
          for (size_t t = 0; t < b.size() && all; ++t) {
            all = map_config.entry(a[s], b[t]);
          }
        }
        out[k][l] = out[l][k] = all ? 1.0 : 0.0;
      }
    }
  }
  return out;
}

}  // namespace basket
