#include "basket/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "basket/clustering.hpp"

namespace basket {

namespace {

constexpr uint64_t kStreamClustering = 2;
constexpr int kSummaryWidth = 82;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string dashed_header(const std::string& title) {
  std::string line = "-- " + title + " ";
  while (static_cast<int>(line.size()) < kSummaryWidth) line.push_back('-');
  return line;
}

nlohmann::json row_to_json(const BasketSummary& row) {
  return nlohmann::json{{"name", row.name},
                        {"post_prob", row.post_prob},
                        {"mean", row.mean},
                        {"median", row.median},
                        {"hpd_lower", row.hpd.lower},
                        {"hpd_upper", row.hpd.upper},
                        {"ess", row.ess}};
}

BasketSummary row_from_json(const nlohmann::json& j) {
  BasketSummary row;
  row.name = j.at("name").get<std::string>();
  row.post_prob = j.at("post_prob").get<double>();
  row.mean = j.at("mean").get<double>();
  row.median = j.at("median").get<double>();
  row.hpd.lower = j.at("hpd_lower").get<double>();
  row.hpd.upper = j.at("hpd_upper").get<double>();
  row.ess = j.at("ess").get<double>();
  return row;
}

// Formats one summary table (shared by the basket and cluster blocks).
std::string render_table(const std::vector<BasketSummary>& rows,
                         const std::vector<std::string>& null_column,
                         const std::string& prob_header) {
  size_t name_width = 6;  // "Basket" / "Cluster" handled by caller's rows
  for (const auto& row : rows) name_width = std::max(name_width, row.name.size());
  name_width += 2;

  std::string out;
  auto pad = [&](const std::string& s) {
    std::string cell = s;
    while (cell.size() < name_width) cell.push_back(' ');
    return cell;
  };
  char head[160];
  std::snprintf(head, sizeof(head), "%7s  %11s  %7s  %7s  %9s  %9s  %9s\n", "Null",
                prob_header.c_str(), "Mean", "Median", "HPD Lower", "HPD Upper", "ESS");
  out += pad("Name") + head;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    char line[160];
    std::snprintf(line, sizeof(line), "%7s  %11.3f  %7.3f  %7.3f  %9.3f  %9.3f  %9.3f\n",
                  null_column[i].c_str(), row.post_prob, row.mean, row.median, row.hpd.lower,
                  row.hpd.upper, row.ess);
    out += pad(row.name) + line;
  }
  return out;
}

}  // namespace

MemReport build_report(const MemFit& fit, const std::string& call) {
  const int J = fit.data.baskets();
  MemReport report;
  report.call = call;
  report.method = to_string(fit.config.method);
  report.seed = fit.seed;
  report.alternative = to_string(fit.config.alternative);
  report.hpd_alpha = fit.config.hpd_alpha;
  report.p0 = fit.config.resolved_p0(J);
  report.basket_names = fit.data.basket_names;
  report.basket_rows = summarize(fit);
  report.basket_pep = fit.pep();
  const ExchConfig map = fit.map_config();
  report.basket_map = Matrix(static_cast<size_t>(J), std::vector<double>(static_cast<size_t>(J)));
  for (int i = 0; i < J; ++i) {
    for (int j = 0; j < J; ++j) {
      report.basket_map[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          map.entry(i, j) ? 1.0 : 0.0;
    }
  }
  RngState rng(fit.seed, kStreamClustering);
  report.cluster_members = cluster_louvain(report.basket_pep, rng);
  report.cluster_rows = cluster_summaries(fit, report.cluster_members);
  report.cluster_pep = cluster_pep(report.basket_pep, report.cluster_members);
  report.cluster_map = cluster_map(map, report.cluster_members);
  return report;
}

std::string report_to_json_string(const MemReport& report, int indent) {
  nlohmann::json j;
  j["call"] = report.call;
  j["method"] = report.method;
  j["seed"] = report.seed;
  j["alternative"] = report.alternative;
  j["hpd_alpha"] = report.hpd_alpha;
  j["p0"] = report.p0;
  j["basket_names"] = report.basket_names;
  j["baskets"] = nlohmann::json::array();
  for (const auto& row : report.basket_rows) j["baskets"].push_back(row_to_json(row));
  j["clusters"] = nlohmann::json::array();
  for (const auto& row : report.cluster_rows) j["clusters"].push_back(row_to_json(row));
  nlohmann::json names = nlohmann::json::array();
  for (const auto& block : report.cluster_members.clusters) {
    nlohmann::json one = nlohmann::json::array();
    for (int m : block) one.push_back(report.basket_names.at(static_cast<size_t>(m)));
    names.push_back(std::move(one));
  }
  j["cluster_baskets"] = std::move(names);
  j["cluster_indices"] = report.cluster_members.clusters;
  j["cluster_labels"] = report.cluster_members.labels;
  j["basket_pep"] = report.basket_pep;
  j["basket_map"] = report.basket_map;
  j["cluster_pep"] = report.cluster_pep;
  j["cluster_map"] = report.cluster_map;
  return j.dump(indent) + "\n";
}

MemReport report_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw std::runtime_error(std::string("report JSON parse error: ") + err.what());
  }
  MemReport report;
  try {
    report.call = j.at("call").get<std::string>();
    report.method = j.at("method").get<std::string>();
    report.seed = j.at("seed").get<uint64_t>();
    report.alternative = j.at("alternative").get<std::string>();
    report.hpd_alpha = j.at("hpd_alpha").get<double>();
    report.p0 = j.at("p0").get<std::vector<double>>();
    report.basket_names = j.at("basket_names").get<std::vector<std::string>>();
    for (const auto& row : j.at("baskets")) report.basket_rows.push_back(row_from_json(row));
    for (const auto& row : j.at("clusters")) report.cluster_rows.push_back(row_from_json(row));
    report.cluster_members.clusters = j.at("cluster_indices").get<std::vector<std::vector<int>>>();
    report.cluster_members.labels = j.at("cluster_labels").get<std::vector<std::string>>();
    report.basket_pep = j.at("basket_pep").get<Matrix>();
    report.basket_map = j.at("basket_map").get<Matrix>();
    report.cluster_pep = j.at("cluster_pep").get<Matrix>();
    report.cluster_map = j.at("cluster_map").get<Matrix>();
  } catch (const nlohmann::json::exception& err) {
    throw std::runtime_error(std::string("report JSON field error: ") + err.what());
  }
  return report;
}

std::string render_summary_text(const MemReport& report) {
  std::string out;
  out += dashed_header("The MEM Model Call") + "\n\n";
  out += "  " + report.call + "\n\n";

  out += dashed_header("The Basket Summary") + "\n\n";
  const bool greater = report.alternative == "greater";
  out += std::string("Alternative hypothesis: the response rate is ") +
         (greater ? "greater" : "less") + " than the null.\n";
  out += "Highest posterior density coverage: " + fmt("%.2f", 1.0 - report.hpd_alpha) + "\n\n";
  const std::string prob_header = greater ? "Prob(>Null)" : "Prob(<Null)";

  std::vector<std::string> basket_null;
  basket_null.reserve(report.p0.size());
  for (double v : report.p0) basket_null.push_back(fmt("%.3f", v));
  out += render_table(report.basket_rows, basket_null, prob_header);
  out += "\n";

  out += dashed_header("The Cluster Summary") + "\n\n";
  for (size_t c = 0; c < report.cluster_members.clusters.size(); ++c) {
    out += report.cluster_members.labels[c] + ": ";
    const auto& block = report.cluster_members.clusters[c];
    for (size_t m = 0; m < block.size(); ++m) {
      if (m > 0) out += ", ";
      out += "\"" + report.basket_names.at(static_cast<size_t>(block[m])) + "\"";
    }
    out += "\n";
  }
  out += "\n";

  std::vector<std::string> cluster_null;
  for (const auto& block : report.cluster_members.clusters) {
    const double first = report.p0.at(static_cast<size_t>(block.front()));
    bool uniform = true;
    for (int m : block) {
      if (report.p0.at(static_cast<size_t>(m)) != first) uniform = false;
    }
    cluster_null.push_back(uniform ? fmt("%.3f", first) : "mixed");
  }
  out += render_table(report.cluster_rows, cluster_null, prob_header);
  return out;
}

MemReport update_p0(const MemFit& fit, const MemReport& base, const std::vector<double>& p0,
                    Alternative alternative) {
  const int J = fit.data.baskets();
  AnalysisConfig probe;
  probe.p0 = p0;
  const std::vector<double> resolved = probe.resolved_p0(J);

  MemReport report = base;
  report.alternative = to_string(alternative);
  report.p0 = resolved;

  const std::vector<double> basket_probs = posterior_probability(fit, resolved, alternative);
  if (report.basket_rows.size() != basket_probs.size()) {
    throw std::invalid_argument("update_p0: report and fit disagree on basket count");
  }
  for (size_t j = 0; j < basket_probs.size(); ++j) {
    report.basket_rows[j].post_prob = basket_probs[j];
  }

  // Same pooled-indicator arithmetic as the cluster summaries.
  for (size_t c = 0; c < report.cluster_members.clusters.size(); ++c) {
    long long hits = 0, denom = 0;
    for (int j : report.cluster_members.clusters[c]) {
      const auto& draws = fit.pi_draws.at(static_cast<size_t>(j));
      for (double d : draws) {
        if (alternative == Alternative::greater ? d > resolved[static_cast<size_t>(j)]
                                                : d < resolved[static_cast<size_t>(j)]) {
          ++hits;
        }
      }
      denom += static_cast<long long>(draws.size());
    }
    report.cluster_rows.at(c).post_prob = static_cast<double>(hits) / static_cast<double>(denom);
  }
  return report;
}

}  // namespace basket
