// Command-line front end: generate / verify / stats over JSON Lines datasets
// of elementary integrable (integrand, integral) pairs.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "integen/dataset.hpp"
#include "integen/generator.hpp"
#include "integen/records.hpp"
#include "integen/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("INTEGEN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "integen: ignoring unparsable INTEGEN_SEED\n";
    }
  }
  return 0;
}

int run_generate(std::uint64_t count, integen::GenConfig cfg, int threads,
                 const std::string& out_path) {
  std::vector<integen::IntegrablePair> pairs =
      integen::generate_batch(cfg, count, threads);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::cerr << "integen: cannot open " << out_path << " for writing\n";
      return kExitFailure;
    }
    os = &file;
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    integen::write_record(*os, integen::record_from_pair(pairs[i], i));
  os->flush();
  if (!*os) {
    std::cerr << "integen: write failed\n";
    return kExitFailure;
  }
  std::cerr << "generated " << pairs.size() << " pairs (seed " << cfg.seed << ")\n";
  return kExitOk;
}

int run_verify(const std::string& in_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "integen: cannot open " << in_path << "\n";
    return kExitFailure;
  }
  std::vector<integen::RecordLoad> loads = integen::read_records(in);
  integen::DatasetSummary summary = integen::verify_dataset(loads);
  for (const auto& [line, reason] : summary.failures)
    std::cerr << "line " << line << ": " << reason << "\n";
  std::cout << summary.passed << " pass, " << summary.failed << " fail\n";
  return summary.all_passed() ? kExitOk : kExitFailure;
}

int run_stats(const std::string& in_path, int threshold, const std::string& csv_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) {
    std::cerr << "integen: cannot open " << in_path << "\n";
    return kExitFailure;
  }
  std::vector<integen::RecordLoad> loads = integen::read_records(in);
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> toks;
  for (const auto& load : loads) {
    if (!load.record) {
      std::cerr << "integen: line " << load.line << ": " << load.error << "\n";
      return kExitFailure;
    }
    toks.push_back({load.record->integrand_prefix, load.record->integral_prefix});
  }
  integen::DatasetStats st = integen::dataset_stats(toks, threshold);

  std::cout << std::left << std::setw(26) << "count" << st.count << "\n";
  std::cout << std::setw(26) << "closeness_threshold" << threshold << "\n";
  std::cout << std::setw(26) << "close_fraction" << std::fixed << std::setprecision(4)
            << st.close_fraction << "\n";
  std::cout << std::setw(26) << "unique_mod_const_fraction" << st.unique_mod_const_fraction
            << "\n";
  auto describe = [](const std::map<std::size_t, std::size_t>& hist) {
    std::size_t lo = hist.begin()->first, hi = hist.rbegin()->first, n = 0, sum = 0;
    for (const auto& [len, c] : hist) {
      n += c;
      sum += len * c;
    }
    std::ostringstream os;
    os << "min " << lo << "  mean " << std::fixed << std::setprecision(1)
       << static_cast<double>(sum) / static_cast<double>(n) << "  max " << hi;
    return os.str();
  };
  std::cout << std::setw(26) << "integrand_length" << describe(st.integrand_length_hist)
            << "\n";
  std::cout << std::setw(26) << "integral_length" << describe(st.integral_length_hist)
            << "\n";

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) {
      std::cerr << "integen: cannot open " << csv_path << " for writing\n";
      return kExitFailure;
    }
    csv << "length,integrand_count,integral_count\n";
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> merged;
    for (const auto& [len, c] : st.integrand_length_hist) merged[len].first = c;
    for (const auto& [len, c] : st.integral_length_hist) merged[len].second = c;
    for (const auto& [len, counts] : merged)
      csv << len << ',' << counts.first << ',' << counts.second << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generator and verifier for elementary integrable (integrand, integral) pairs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "emit a JSON Lines dataset");
  std::uint64_t count = 0;
  std::uint64_t seed = default_seed();
  std::string method = "auto";
  std::string extension = "random";
  std::string arctan = "auto";
  std::string out_path;
  int tower_height = 1, max_theta_degree = 4, max_factor_count = 3, threads = 1;
  long long coeff_bound = 20;
  gen->add_option("--count", count, "number of pairs")->required();
  gen->add_option("--seed", seed, "master seed (INTEGEN_SEED sets the default)");
  gen->add_option("--method", method, "poly|sqfree|hermite|mixed (default: one third each)")
      ->check(CLI::IsMember({"poly", "sqfree", "hermite", "mixed", "auto"}));
  gen->add_option("--extension", extension, "log|exp|random")
      ->check(CLI::IsMember({"log", "exp", "random"}));
  gen->add_option("--tower-height", tower_height, "number of extensions (1 or 2)")
      ->check(CLI::Range(1, 2));
  gen->add_option("--max-theta-degree", max_theta_degree, "cap on theta degrees")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-factor-count", max_factor_count, "cap on denominator factors")
      ->check(CLI::PositiveNumber);
  gen->add_option("--coeff-bound", coeff_bound, "coefficient magnitude bound (<= 20)")
      ->check(CLI::Range(1LL, 20LL));
  gen->add_option("--arctan-factors", arctan, "auto|on|off (on needs log extensions)")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  gen->add_option("--threads", threads, "worker threads (output is order-stable)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path, "output path (default: standard output)");

  auto* ver = app.add_subcommand("verify", "re-verify every record of a dataset");
  std::string verify_in;
  ver->add_option("--in", verify_in, "dataset path")->required();

  auto* sta = app.add_subcommand("stats", "length/closeness/uniqueness statistics");
  std::string stats_in, csv_path;
  int threshold = 10;
  sta->add_option("--in", stats_in, "dataset path")->required();
  sta->add_option("--closeness-threshold", threshold, "length-gap bound")
      ->check(CLI::PositiveNumber);
  sta->add_option("--csv", csv_path, "also write the length histogram as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      integen::GenConfig cfg;
      cfg.seed = seed;
      if (method == "poly") cfg.method = integen::Method::Poly;
      else if (method == "sqfree") cfg.method = integen::Method::Sqfree;
      else if (method == "hermite") cfg.method = integen::Method::Hermite;
      else if (method == "mixed") cfg.method = integen::Method::Mixed;
      else cfg.method = integen::Method::Auto;
      if (extension == "log") cfg.extension = integen::ExtChoice::Log;
      else if (extension == "exp") cfg.extension = integen::ExtChoice::Exp;
      else cfg.extension = integen::ExtChoice::Random;
      if (arctan == "on") cfg.arctan = integen::ArctanMode::On;
      else if (arctan == "off") cfg.arctan = integen::ArctanMode::Off;
      cfg.tower_height = tower_height;
      cfg.max_theta_degree = max_theta_degree;
      cfg.max_factor_count = max_factor_count;
      cfg.coeff_bound = coeff_bound;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "integen: " << e.what() << "\n";
        return kExitUsage;
      }
      return run_generate(count, cfg, threads, out_path);
    }
    if (ver->parsed()) return run_verify(verify_in);
    if (sta->parsed()) return run_stats(stats_in, threshold, csv_path);
  } catch (const std::exception& e) {
    std::cerr << "integen: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
