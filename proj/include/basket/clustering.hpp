#pragma once

#include <string>
#include <vector>

#include "basket/rng.hpp"
#include "basket/summaries.hpp"
#include "basket/trial.hpp"

namespace basket {

// A partition of the baskets into clusters, each block sorted and the blocks
// ordered by their smallest member.
struct ClusterAssignment {
  std::vector<std::vector<int>> clusters;
  std::vector<std::string> labels;  // "Cluster 1", ...
  bool operator==(const ClusterAssignment&) const = default;
};

// Louvain modularity maximization on the complete graph weighted by the
// pairwise exchangeability probabilities (zero-weight edges are absent).
// Deterministic: fixed vertex sweep order, lowest community index on ties.
ClusterAssignment cluster_louvain(const Matrix& pep, RngState& rng);

// Cluster rows computed on the pooled draws of the member baskets; the
// exceedance probability applies each member's own null rate to its own
// draws before pooling the indicator.
std::vector<BasketSummary> cluster_summaries(const MemFit& fit,
                                             const ClusterAssignment& assignment);

// Clusterwise exchangeability: mean of the member-pair probabilities
// (within-cluster on the diagonal; a singleton's own entry is 1).
Matrix cluster_pep(const Matrix& pep, const ClusterAssignment& assignment);

// Clusterwise MAP: 1 where every member pair is linked in the configuration
// (within-cluster on the diagonal; a singleton's own entry is 1).
Matrix cluster_map(const ExchConfig& map_config, const ClusterAssignment& assignment);

}  // namespace basket
