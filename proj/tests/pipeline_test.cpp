#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ruleboost/analysis.hpp"
#include "ruleboost/error.hpp"
#include "ruleboost/json_io.hpp"
#include "ruleboost/pipeline.hpp"
#include "ruleboost/synthetic.hpp"

using namespace ruleboost;
using namespace ruleboost::cli;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kArtifacts = {kBinnedCsv,      kStoreJson,    kFrequentJsonl,
                                             kRulesJsonl,     kIndicatorsJson, kPlotDataJson,
                                             kManifestJson};

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("ruleboost_test_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// A small cohort on disk plus a config that points at it.
fs::path WriteCohort(const std::string& name, std::size_t retained = 300) {
  const fs::path dir = TempDir(name);
  synthetic::CohortShape shape;
  shape.retained = retained;
  shape.malignant = retained / 5;
  shape.dropped_label = 20;
  const auto cohort = synthetic::MakeCohort(shape, 11);
  io::WriteText((dir / "cases.csv").string(), cohort.cases_csv);
  io::WriteText((dir / "tsh.csv").string(), cohort.tsh_csv);
  const io::Json config = {{"inputs", {{"cases", "cases.csv"}, {"tsh", "tsh.csv"}}},
                           {"binning", cohort.binning_config},
                           {"miner", {{"min_support", 10}, {"max_k", 4}}},
                           {"seed", 3}};
  io::WriteText((dir / "config.json").string(), io::Dump(config));
  return dir;
}

PipelineConfig Load(const fs::path& dir, const std::string& out) {
  PipelineConfig c =
      PipelineConfig::FromJson(io::ReadJson((dir / "config.json").string()), dir.string());
  c.out_dir = (dir / out).string();
  return c;
}

std::string Read(const fs::path& p) { return io::ReadText(p.string()); }

int RunCli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string(RULEBOOST_CLI_PATH) + " " + args + " >" + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("min support parsing and resolution") {
  CHECK(MinSupport::Parse("10").Resolve(1673) == 10);
  CHECK(MinSupport::Parse("10/1673").Resolve(1673) == 10);
  CHECK(MinSupport::Parse("10/1673").Resolve(3346) == 20);
  CHECK(MinSupport::Parse("1/3").Resolve(10) == 4);
  CHECK(MinSupport::Parse("0.005977").Resolve(1673) == 10);
  CHECK(MinSupport::Parse("0.5").Resolve(10) == 5);
  CHECK(MinSupport::FromJson(io::Json(0.1)).Resolve(100) == 10);
  CHECK(MinSupport::FromJson(io::Json(7)).Resolve(100) == 7);
  CHECK_THROWS_AS(MinSupport::Parse("0"), ConfigError);
  CHECK_THROWS_AS(MinSupport::Parse("2/1"), ConfigError);
  CHECK_THROWS_AS(MinSupport::Parse("1.5"), ConfigError);
  CHECK_THROWS_AS(MinSupport::Parse("ten"), ConfigError);
}

TEST_CASE("confidence setting") {
  const auto beta = ConfidenceSetting::Parse("beta-squared").Resolve(259, 1673);
  CHECK(beta.exact->first == 259u * 259u);
  CHECK(beta.exact->second == 1673u * 1673u);
  CHECK(ConfidenceSetting::Parse("0.5").Resolve(1, 2).value == 0.5);
  CHECK_THROWS_AS(ConfidenceSetting::Parse("1.5"), ConfigError);
}

TEST_CASE("config sections are validated") {
  CHECK_THROWS_WITH_AS(PipelineConfig::FromJson(io::Json::parse(R"({"minner": {}})"), ""),
                       doctest::Contains("minner"), ConfigError);
  CHECK_THROWS_WITH_AS(
      PipelineConfig::FromJson(io::Json::parse(R"({"miner": {"min_support": "x"}})"), ""),
      doctest::Contains("miner"), ConfigError);
  const auto c = PipelineConfig::FromJson(
      io::Json::parse(R"({"inputs": {"cases": "a.csv"}, "analysis": {"kappa": "printed"}})"),
      "/data");
  CHECK(c.cases_path == "/data/a.csv");
  CHECK(c.analysis.kappa == 0.223);
}

TEST_CASE("pipeline writes seven deterministic artifacts") {
  const fs::path dir = WriteCohort("determinism");
  PipelineConfig a = Load(dir, "a");
  a.jobs = 1;
  RunPipeline(a);
  PipelineConfig b = Load(dir, "b");
  b.jobs = 4;
  RunPipeline(b);
  for (const auto& name : kArtifacts) {
    REQUIRE(fs::exists(fs::path(a.out_dir) / name));
    CHECK_MESSAGE(Read(fs::path(a.out_dir) / name) == Read(fs::path(b.out_dir) / name), name);
  }
  CHECK(fs::exists(fs::path(a.out_dir) / kTimingJson));

  SUBCASE("stages run one by one reproduce the pipeline") {
    PipelineConfig s = Load(dir, "staged");
    s.jobs = 2;
    RunBin(s);
    RunMine(s);
    RunAnalyze(s);
    for (const auto& name : kArtifacts) {
      CHECK_MESSAGE(Read(fs::path(a.out_dir) / name) == Read(fs::path(s.out_dir) / name), name);
    }
  }
  SUBCASE("manifest records rows, digests and parameters") {
    const auto m = io::ReadJson((fs::path(a.out_dir) / kManifestJson).string());
    const auto& rows = m.at("binning").at("rows");
    CHECK(rows.at("retained").get<int>() == 300);
    CHECK(rows.at("loaded").get<int>() ==
          rows.at("retained").get<int>() + rows.at("dropped_target").get<int>() +
              rows.at("dropped_invalid").get<int>());
    CHECK(m.at("binning").at("inputs").at("cases").at("sha256") ==
          io::Sha256Hex(Read(dir / "cases.csv")));
    CHECK(m.at("mining").at("params").at("min_support_count") == 10);
    CHECK(m.at("mining").at("outputs").at(kRulesJsonl) ==
          io::Sha256Hex(Read(fs::path(a.out_dir) / kRulesJsonl)));
    CHECK(m.at("tool").at("version") == kToolVersion);
    CHECK_FALSE(m.dump().find("seconds") != std::string::npos);
  }
  SUBCASE("frequent itemsets all meet the support count") {
    std::ifstream in(fs::path(a.out_dir) / kFrequentJsonl);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      const auto j = io::Json::parse(line);
      CHECK(j.at("joint_count").get<int>() >= 10);
      CHECK(j.at("itemset_size").get<int>() == j.at("antecedent_size").get<int>() + 1);
      ++n;
    }
    CHECK(n > 0);
  }
}

TEST_CASE("analyze with kappa zero gives the geometric mean of all ratios") {
  const fs::path dir = WriteCohort("kappa");
  PipelineConfig c = Load(dir, "out");
  c.analysis.kappa = 0;
  RunPipeline(c);
  const auto indicators = io::ReadJson((fs::path(c.out_dir) / kIndicatorsJson).string());
  // Recompute from rules.jsonl alone.
  std::map<std::vector<std::uint32_t>, double> conf;
  std::ifstream in(fs::path(c.out_dir) / kRulesJsonl);
  std::string line;
  while (std::getline(in, line)) {
    const auto j = io::Json::parse(line);
    conf[j.at("antecedent_ids").get<std::vector<std::uint32_t>>()] =
        static_cast<double>(j.at("joint_count").get<std::uint64_t>()) /
        static_cast<double>(j.at("antecedent_count").get<std::uint64_t>());
  }
  REQUIRE(indicators.size() > 0);
  for (const auto& ind : indicators) {
    const auto item = ind.at("item_id").get<std::uint32_t>();
    double sum = 0;
    std::size_t n = 0;
    for (const auto& [ids, cw] : conf) {
      auto it = std::find(ids.begin(), ids.end(), item);
      if (it == ids.end()) continue;
      std::vector<std::uint32_t> rest = ids;
      rest.erase(rest.begin() + (it - ids.begin()));
      const auto wo = conf.find(rest);
      if (wo == conf.end()) continue;
      sum += std::log(cw / wo->second);
      ++n;
    }
    CHECK(ind.at("n_pairs_total").get<std::size_t>() == n);
    CHECK(ind.at("n_pairs_kept").get<std::size_t>() == n);
    CHECK(ind.at("acb").get<double>() == doctest::Approx(std::exp(sum / n)).epsilon(1e-12));
  }
}

TEST_CASE("stage errors") {
  const fs::path dir = WriteCohort("errors");
  PipelineConfig c = Load(dir, "out");
  SUBCASE("missing upstream artifact") {
    CHECK_THROWS_WITH_AS(RunMine(c), doctest::Contains("store.json"), InputError);
    CHECK_THROWS_WITH_AS(RunReport(c.out_dir), doctest::Contains("indicators.json"), InputError);
  }
  SUBCASE("stale upstream artifact") {
    RunBin(c);
    RunMine(c);
    std::ofstream(fs::path(c.out_dir) / kRulesJsonl, std::ios::app) << "\n";
    CHECK_THROWS_WITH_AS(RunAnalyze(c), doctest::Contains("rules.jsonl"), InputError);
  }
  SUBCASE("a fresh binning invalidates downstream sections") {
    RunPipeline(c);
    RunBin(c);
    const auto m = io::ReadJson((fs::path(c.out_dir) / kManifestJson).string());
    CHECK_FALSE(m.contains("mining"));
    CHECK_FALSE(m.contains("analysis"));
  }
}

TEST_CASE("command line exit codes and report") {
  const fs::path dir = WriteCohort("cli");
  const fs::path log = dir / "log.txt";
  const std::string cfg = "--config " + (dir / "config.json").string();
  const std::string out = " --out " + (dir / "out").string();

  CHECK(RunCli("run " + cfg + out + " --jobs 2", log) == 0);
  CHECK(RunCli("report" + out, log) == 0);
  const std::string table = Read(log);
  CHECK(table.rfind("Indicator | ACB | PIC\n", 0) == 0);

  CHECK(RunCli("mine --out " + (dir / "nothing").string(), log) == 2);
  CHECK(Read(log).find("store.json") != std::string::npos);

  CHECK(RunCli("run " + cfg + out + " --min-support 0", log) == 2);
  CHECK(RunCli("run " + cfg + out + " --min-confidence 2", log) == 2);
  CHECK(RunCli("bogus", log) == 2);

  const std::string cases = Read(dir / "cases.csv");
  std::string header = cases.substr(0, cases.find('\n'));
  std::string rest = cases.substr(cases.find('\n'));
  const auto pos = header.find("Pathology");
  REQUIRE(pos != std::string::npos);
  header.replace(pos, 9, "Outcome");
  io::WriteText((dir / "renamed.csv").string(), header + rest);
  CHECK(RunCli("bin " + cfg + out + " --cases " + (dir / "renamed.csv").string(), log) == 2);
  CHECK(Read(log).find("Pathology") != std::string::npos);

  io::WriteText((dir / "ragged.csv").string(), header + rest + "x,y\n");
  CHECK(RunCli("bin " + cfg + out + " --cases " + (dir / "ragged.csv").string(), log) == 2);
  CHECK(Read(log).find("line") != std::string::npos);
}
