#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ruleboost/error.hpp"
#include "ruleboost/json_io.hpp"
#include "ruleboost/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic case cohort with a TSH series and binning config"};
  std::string out = "data/demo";
  std::uint64_t seed = 7;
  ruleboost::synthetic::CohortShape shape;
  app.add_option("--out", out, "Output directory");
  app.add_option("--seed", seed);
  app.add_option("--retained", shape.retained);
  app.add_option("--malignant", shape.malignant);
  app.add_option("--dropped-label", shape.dropped_label);
  app.add_option("--invalid", shape.invalid);
  CLI11_PARSE(app, argc, argv);

  try {
    namespace fs = std::filesystem;
    fs::create_directories(out);
    const auto cohort = ruleboost::synthetic::MakeCohort(shape, seed);
    ruleboost::io::WriteText((fs::path(out) / "cases.csv").string(), cohort.cases_csv);
    ruleboost::io::WriteText((fs::path(out) / "tsh.csv").string(), cohort.tsh_csv);
    ruleboost::io::Json config = {
        {"inputs", {{"cases", "cases.csv"}, {"tsh", "tsh.csv"}}},
        {"binning", cohort.binning_config},
        {"miner", {{"min_support", 10}, {"min_confidence", "beta-squared"}}},
        {"analysis", {{"kappa", 0.223}, {"pic_threshold", 0.75},
                      {"acb_threshold", 1.2}, {"swarm_cap", 100}}},
        {"seed", seed}};
    ruleboost::io::WriteText((fs::path(out) / "config.json").string(),
                             ruleboost::io::Dump(config) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
