#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "basket/clustering.hpp"
#include "basket/summaries.hpp"
#include "basket/trial.hpp"

namespace basket {

// Everything the analysis reports, serializable to JSON without loss.
struct MemReport {
  std::string call;  // resolved invocation echo
  std::string method;
  uint64_t seed = 0;
  std::string alternative;
  double hpd_alpha = 0.05;
  std::vector<double> p0;
  std::vector<std::string> basket_names;
  std::vector<BasketSummary> basket_rows;
  std::vector<BasketSummary> cluster_rows;
  ClusterAssignment cluster_members;
  Matrix basket_pep;
  Matrix basket_map;
  Matrix cluster_pep;
  Matrix cluster_map;
  bool operator==(const MemReport&) const = default;
};

// Summaries, clustering, and matrices for a fitted model.
MemReport build_report(const MemFit& fit, const std::string& call);

std::string report_to_json_string(const MemReport& report, int indent = 2);
MemReport report_from_json_string(const std::string& text);

// Human-readable rendering; a pure function of the report content.
std::string render_summary_text(const MemReport& report);

// Re-evaluates only the exceedance probabilities under a new null; every
// other field is copied from the base report bit for bit.
MemReport update_p0(const MemFit& fit, const MemReport& base, const std::vector<double>& p0,
                    Alternative alternative);

}  // namespace basket
