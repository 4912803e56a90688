#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "basket/io.hpp"
#include "basket/report.hpp"
#include "basket/summaries.hpp"
#include "basket/trial.hpp"

namespace {

struct CliOptions {
  std::string data_path;
  std::string format_text = "wide";
  std::string method_text = "mcmc";
  std::string p0_text = "0.15";
  std::string alternative_text = "greater";
  std::string shape1_text = "0.5";
  std::string shape2_text = "0.5";
  std::string prior_text = "0.5";
  double hpd_alpha = 0.05;
  long long iter = 200000;
  long long burnin = 50000;
  uint64_t seed = basket::kDefaultSeed;
  std::string out_dir = ".";
};

std::vector<double> parse_double_list(const std::string& text, const std::string& option) {
  std::vector<double> values;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(option + ": '" + piece + "' is not a number");
    }
    while (pos < piece.size() && std::isspace(static_cast<unsigned char>(piece[pos]))) ++pos;
    if (pos != piece.size()) {
      throw std::invalid_argument(option + ": '" + piece + "' is not a number");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (values.empty()) throw std::invalid_argument(option + ": no values given");
  return values;
}

// Broadcast a scalar, or demand exactly one value per basket.
std::vector<double> resolve_list(std::vector<double> values, int baskets,
                                 const std::string& option) {
  if (values.size() == 1) return std::vector<double>(static_cast<size_t>(baskets), values[0]);
  if (static_cast<int>(values.size()) != baskets) {
    throw std::invalid_argument(option + ": expected 1 or " + std::to_string(baskets) +
                                " values, got " + std::to_string(values.size()));
  }
  return values;
}

bool parse_scalar(const std::string& text, double& out) {
  size_t pos = 0;
  try {
    out = std::stod(text, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == text.size();
}

std::string join_g(const std::vector<double>& values) {
  std::string out;
  char buf[48];
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    std::snprintf(buf, sizeof(buf), "%g", values[i]);
    out += buf;
  }
  return out;
}

std::string canonical_call(const CliOptions& opt, const std::vector<double>& p0,
                           const std::vector<double>& shape1, const std::vector<double>& shape2) {
  std::string call = "basket --data " + opt.data_path + " --format " + opt.format_text +
                     " --method " + opt.method_text + " --p0 " + join_g(p0) + " --alternative " +
                     opt.alternative_text + " --shape1 " + join_g(shape1) + " --shape2 " +
                     join_g(shape2) + " --prior " + opt.prior_text;
  char buf[160];
  std::snprintf(buf, sizeof(buf), " --hpd-alpha %g --iter %lld --burnin %lld --seed %llu --out ",
                opt.hpd_alpha, opt.iter, opt.burnin,
                static_cast<unsigned long long>(opt.seed));
  call += buf;
  call += opt.out_dir;
  return call;
}

void dump_defaults() {
  const CliOptions defaults;
  nlohmann::json j;
  j["format"] = defaults.format_text;
  j["method"] = defaults.method_text;
  j["p0"] = 0.15;
  j["alternative"] = defaults.alternative_text;
  j["shape1"] = 0.5;
  j["shape2"] = 0.5;
  j["prior"] = 0.5;
  j["hpd_alpha"] = defaults.hpd_alpha;
  j["iter"] = defaults.iter;
  j["burnin"] = defaults.burnin;
  j["seed"] = defaults.seed;
  j["out"] = defaults.out_dir;
  std::cout << j.dump(2) << "\n";
}

int run(const CliOptions& opt) {
  namespace fs = std::filesystem;
  if (opt.iter < 100) throw std::invalid_argument("--iter must be at least 100");
  if (opt.burnin < 0) throw std::invalid_argument("--burnin must not be negative");
  if (opt.hpd_alpha <= 0.0 || opt.hpd_alpha >= 1.0) {
    throw std::invalid_argument("--hpd-alpha must lie strictly between 0 and 1");
  }

  // Flag values are checked before the data file is opened so that a bad
  // flag is reported as a usage error even when the file is also missing.
  const basket::DataFormat format = basket::data_format_from_string(opt.format_text);
  const basket::Method method = basket::method_from_string(opt.method_text);
  const basket::Alternative alternative =
      basket::alternative_from_string(opt.alternative_text);
  const std::vector<double> p0_list = parse_double_list(opt.p0_text, "--p0");
  const std::vector<double> shape1_list = parse_double_list(opt.shape1_text, "--shape1");
  const std::vector<double> shape2_list = parse_double_list(opt.shape2_text, "--shape2");

  const basket::TrialData data = basket::ingest_csv(opt.data_path, format);
  const int J = data.baskets();

  basket::AnalysisConfig config;
  config.p0 = resolve_list(p0_list, J, "--p0");
  config.alternative = alternative;
  config.hpd_alpha = opt.hpd_alpha;
  config.method = method;
  config.mcmc_iter = opt.iter;
  config.mcmc_burnin = opt.burnin;
  config.seed = opt.seed;
  config.validate(J);

  const std::vector<double> shape1 = resolve_list(shape1_list, J, "--shape1");
  const std::vector<double> shape2 = resolve_list(shape2_list, J, "--shape2");
  basket::PriorConfig prior;
  prior.shape1 = shape1;
  prior.shape2 = shape2;
  double prior_scalar = 0.0;
  if (parse_scalar(opt.prior_text, prior_scalar)) {
    prior.prior_exch = basket::PriorConfig::broadcast(J, 1.0, 1.0, prior_scalar).prior_exch;
  } else {
    prior.prior_exch = basket::prior_matrix_from_csv(opt.prior_text, J);
  }
  prior.validate(J);

  const basket::MemFit fit = basket::fit_model(data, prior, config);
  const std::string call = canonical_call(opt, config.p0, shape1, shape2);
  const basket::MemReport report = basket::build_report(fit, call);

  const fs::path out_dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir)) {
    throw std::runtime_error("cannot create output directory '" + opt.out_dir + "'");
  }
  const std::string summary = basket::render_summary_text(report);
  basket::write_text_file((out_dir / "report.json").string(),
                          basket::report_to_json_string(report));
  basket::write_text_file((out_dir / "summary.txt").string(), summary);
  basket::write_text_file((out_dir / "densities.csv").string(),
                          basket::densities_csv(fit, report.cluster_members));
  basket::write_text_file((out_dir / "exchangeogram.svg").string(),
                          basket::exchangeogram_svg(report.basket_pep, data.basket_names));
  std::cout << summary;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian analysis of binary basket-trial data under multi-source exchangeability"};
  CliOptions opt;
  bool want_defaults = false;

  app.add_option("--data", opt.data_path, "CSV file with the trial data");
  app.add_option("--format", opt.format_text,
                 "Data layout: wide (basket,responders,evaluable) or long (basket,responder)")
      ->capture_default_str();
  app.add_option("--method", opt.method_text, "Posterior engine: exact or mcmc")
      ->capture_default_str();
  app.add_option("--p0", opt.p0_text,
                 "Null response rate: one value, or one per basket (comma separated)")
      ->capture_default_str();
  app.add_option("--alternative", opt.alternative_text,
                 "Direction of the exceedance probability: greater or less")
      ->capture_default_str();
  app.add_option("--shape1", opt.shape1_text, "Beta prior first shape: one value or one per basket")
      ->capture_default_str();
  app.add_option("--shape2", opt.shape2_text,
                 "Beta prior second shape: one value or one per basket")
      ->capture_default_str();
  app.add_option("--prior", opt.prior_text,
                 "Prior exchangeability probability: a number, or a CSV file with a square matrix")
      ->capture_default_str();
  app.add_option("--hpd-alpha", opt.hpd_alpha,
                 "One minus the coverage of the highest posterior density intervals")
      ->capture_default_str();
  app.add_option("--iter", opt.iter, "Posterior draws to keep")->capture_default_str();
  app.add_option("--burnin", opt.burnin, "Proposals discarded before sampling (mcmc only)")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "Random number generator seed")->capture_default_str();
  app.add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--dump-defaults", want_defaults, "Print the built-in defaults as JSON and exit")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (want_defaults) {
    dump_defaults();
    return 0;
  }
  if (opt.data_path.empty()) {
    std::cerr << "error: --data is required\n";
    return 2;
  }

  try {
    return run(opt);
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
