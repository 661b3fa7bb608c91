#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "ruleboost/analysis.hpp"
#include "ruleboost/error.hpp"
#include "ruleboost/pipeline.hpp"

namespace {

using ruleboost::cli::PipelineConfig;

struct Overrides {
  std::string config;
  std::string out;
  std::string cases;
  std::string tsh;
  std::string min_support;
  std::string min_confidence;
  std::string kappa;
  std::optional<double> pic_threshold;
  std::optional<double> acb_threshold;
  std::optional<std::size_t> swarm_cap;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> max_k;
};

void AddOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline config JSON");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--cases", o.cases, "Cases CSV (overrides the config)");
  cmd->add_option("--tsh", o.tsh, "TSH series CSV (overrides the config)");
  cmd->add_option("--min-support", o.min_support, "Count, fraction or a/b");
  cmd->add_option("--min-confidence", o.min_confidence, "Fraction or beta-squared");
  cmd->add_option("--kappa", o.kappa, "Number, 'printed' or 'log-inverse-0.95'");
  cmd->add_option("--pic-threshold", o.pic_threshold);
  cmd->add_option("--acb-threshold", o.acb_threshold);
  cmd->add_option("--swarm-cap", o.swarm_cap);
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
  cmd->add_option("--max-k", o.max_k, "Largest antecedent size");
}

PipelineConfig Build(const Overrides& o) {
  PipelineConfig config;
  if (!o.config.empty()) {
    const std::filesystem::path path(o.config);
    config = PipelineConfig::FromJson(ruleboost::io::ReadJson(o.config),
                                      path.parent_path().string());
  }
  if (!o.out.empty()) config.out_dir = o.out;
  if (!o.cases.empty()) config.cases_path = o.cases;
  if (!o.tsh.empty()) config.tsh_path = o.tsh;
  if (!o.min_support.empty()) {
    config.min_support = ruleboost::cli::MinSupport::Parse(o.min_support);
  }
  if (!o.min_confidence.empty()) {
    config.min_confidence = ruleboost::cli::ConfidenceSetting::Parse(o.min_confidence);
  }
  if (!o.kappa.empty()) config.analysis.kappa = ruleboost::analysis::ParseKappa(o.kappa);
  if (o.pic_threshold) config.analysis.pic_threshold = *o.pic_threshold;
  if (o.acb_threshold) config.analysis.acb_threshold = *o.acb_threshold;
  if (o.swarm_cap) config.analysis.swarm_cap = *o.swarm_cap;
  if (o.seed) config.seed = *o.seed;
  if (o.max_k) config.max_k = *o.max_k;
  if (o.jobs) {
    if (*o.jobs == 0) throw ruleboost::ConfigError("--jobs must be at least 1");
    config.jobs = *o.jobs;
  } else {
    config.jobs = std::max(1u, std::thread::hardware_concurrency());
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target-constrained association rules and indicator ranking"};
  app.require_subcommand(1);
  Overrides o;
  CLI::App* run = app.add_subcommand("run", "bin, mine and analyze");
  CLI::App* bin = app.add_subcommand("bin", "Discretize the cases into store.json");
  CLI::App* mine = app.add_subcommand("mine", "Mine frequent itemsets and rules");
  CLI::App* analyze = app.add_subcommand("analyze", "Rank indicators from rules.jsonl");
  CLI::App* report = app.add_subcommand("report", "Print the indicator table");
  for (CLI::App* cmd : {run, bin, mine, analyze, report}) AddOptions(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const PipelineConfig config = Build(o);
    if (run->parsed()) {
      ruleboost::cli::RunPipeline(config);
    } else if (bin->parsed()) {
      ruleboost::cli::RunBin(config);
    } else if (mine->parsed()) {
      ruleboost::cli::RunMine(config);
    } else if (analyze->parsed()) {
      ruleboost::cli::RunAnalyze(config);
    } else if (report->parsed()) {
      std::cout << ruleboost::cli::RunReport(config.out_dir);
    }
  } catch (const ruleboost::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ruleboost::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
