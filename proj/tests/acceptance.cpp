// Acceptance checks; prints one PASS/FAIL line per criterion and exits
// non-zero when any fails.
#include <sys/resource.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>

#include "ruleboost/analysis.hpp"
#include "ruleboost/binning.hpp"
#include "ruleboost/dataset.hpp"
#include "ruleboost/kmeans.hpp"
#include "ruleboost/miner.hpp"
#include "ruleboost/oracle.hpp"
#include "ruleboost/pipeline.hpp"
#include "ruleboost/synthetic.hpp"
#include "ruleboost/tsh.hpp"
#include "support/fixtures.hpp"

using namespace ruleboost;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string first_failure;

  void Expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

void Report(const std::string& name, const Check& c, const std::string& detail) {
  std::printf("%s  %s  (%s)\n", c.ok ? "PASS" : "FAIL", name.c_str(),
              c.ok ? detail.c_str() : c.first_failure.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

template <typename F>
void Guarded(const std::string& name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    Check c;
    c.Expect(false, std::string("exception: ") + e.what());
    Report(name, c, "");
  }
}

// ---------------------------------------------------------------------------

void OracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  Check c;
  testing::RandomStoreShape shape;
  shape.min_features = 3;
  shape.max_features = 8;
  shape.p_absent = 0.05;
  std::size_t stores = 0, itemsets = 0, rules = 0;
  for (; stores < 1000 && c.ok; ++stores) {
    const auto store = testing::RandomStore(rng, shape);
    const auto config = testing::RandomMinerConfig(rng, store);
    c.Expect(miner::EligibleItems(store, config).size() <= 12, "store exceeds 12 eligible items");
    c.Expect(store.size() <= 200, "store exceeds 200 transactions");
    const auto levels = miner::MineFrequent(store, config);
    const auto mined_rules = miner::GenerateRules(levels, config);
    c.Expect(levels == miner::BruteForceMine(store, config),
             "frequent itemsets differ on store " + std::to_string(stores));
    c.Expect(mined_rules == miner::BruteForceRules(store, config),
             "rules differ on store " + std::to_string(stores));
    itemsets += levels.total();
    rules += mined_rules.size();
  }
  const double secs = Seconds(start);
  c.Expect(secs < 60.0, Fmt("took %.1f s, limit 60 s", secs));
  Report("oracle equivalence", c,
         std::to_string(stores) + " stores, " + std::to_string(itemsets) + " itemsets, " +
             std::to_string(rules) + " rules identical; " + Fmt("%.2f s", secs));
}

// Counts by direct scan, independent of the store's bitsets.
std::uint64_t Scan(const TransactionStore& s, const Itemset& items) {
  std::uint64_t n = 0;
  for (const auto& t : s.transactions()) n += items.IsSubsetOf(t);
  return n;
}

void MetricFixtures() {
  const auto store = testing::ToyStore();
  const testing::Toy t;
  const Itemset M{t.M};
  auto hand_conf = [&](const Itemset& a) {
    return static_cast<double>(Scan(store, a.With(t.M))) / static_cast<double>(Scan(store, a));
  };
  Check c;
  auto close = [&](double got, double want, const std::string& what) {
    c.Expect(testing::RelClose(got, want, 1e-12),
             what + Fmt(": got %.17g want %.17g", got, want));
  };
  close(Support(store, Itemset{t.a, t.M}), 3.0 / 5.0, "supp({a,M})");
  close(Confidence(store, Itemset{t.a}, M), 3.0 / 4.0, "conf(a->M)");
  close(Confidence(store, Itemset{t.a, t.b}, M), 1.0, "conf(ab->M)");
  close(Lift(store, Itemset{t.a}, M), 1.25, "lift(a->M)");
  close(Lift(store, Itemset{t.b}, M), 10.0 / 9.0, "lift(b->M)");
  close(Confidence(store, Itemset{t.a}, M), hand_conf(Itemset{t.a}), "conf(a->M) vs scan");

  auto config = miner::DefaultMinerConfig(store, 1);
  config.min_confidence = miner::ConfidenceFloor::Exact(0, 1);
  const auto rules = miner::GenerateRules(miner::MineFrequent(store, config), config);
  std::map<std::pair<std::uint32_t, std::size_t>, double> crs;
  for (ItemId item : {t.a, t.b}) {
    for (const auto& p : analysis::FindRulePairs(rules, item)) {
      const auto& w = rules[p.rule_with].antecedent;
      const auto& wo = rules[p.rule_without].antecedent;
      close(p.cr, hand_conf(w) / hand_conf(wo), "cr vs scan");
      crs[{item.value, wo.size()}] = p.cr;
    }
  }
  c.Expect(crs.size() == 4, "expected four toy pairs");
  close(crs[{t.a.value, 1}], 1.5, "cr(ab vs b)");
  close(crs[{t.a.value, 0}], 1.25, "cr(a vs empty)");
  close(crs[{t.b.value, 0}], 10.0 / 9.0, "cr(b vs empty)");
  close(crs[{t.b.value, 1}], 4.0 / 3.0, "cr(ab vs a)");
  Report("metric fixtures", c, "toy store support, confidence, lift and 4 ratios within 1e-12");
}

// ---------------------------------------------------------------------------

void InvariantSuites() {
  constexpr int kCases = 250;
  Check c;
  std::mt19937_64 rng(99);

  // Anti-monotone counts and downward closure on mined output.
  for (int i = 0; i < kCases; ++i) {
    const auto store = testing::RandomStore(rng);
    const auto config = testing::RandomMinerConfig(rng, store);
    const auto levels = miner::MineFrequent(store, config);
    std::map<Itemset, std::uint64_t> joint;
    for (const auto& level : levels.levels) {
      for (const auto& e : level) joint[e.antecedent] = e.joint_count;
    }
    for (const auto& [a, count] : joint) {
      for (ItemId drop : a) {
        c.Expect(Scan(store, a.Without(drop)) >= Scan(store, a), "anti-monotonicity");
        if (a.size() < 2) continue;
        const auto it = joint.find(a.Without(drop));
        c.Expect(it != joint.end(), "downward closure");
        if (it != joint.end()) c.Expect(it->second >= count, "anti-monotone joint counts");
      }
    }
  }
  // Threshold monotonicity.
  for (int i = 0; i < kCases; ++i) {
    const auto store = testing::RandomStore(rng);
    auto lo = testing::RandomMinerConfig(rng, store);
    auto hi = lo;
    hi.min_support_count += rng() % 5;
    hi.min_confidence = miner::ConfidenceFloor::Exact(rng() % 11, 10);
    if (hi.min_confidence.value < lo.min_confidence.value) {
      std::swap(hi.min_confidence, lo.min_confidence);
    }
    std::set<Itemset> lo_rules, hi_rules;
    for (const auto& r : miner::GenerateRules(miner::MineFrequent(store, lo), lo)) {
      lo_rules.insert(r.antecedent);
    }
    for (const auto& r : miner::GenerateRules(miner::MineFrequent(store, hi), hi)) {
      hi_rules.insert(r.antecedent);
    }
    c.Expect(std::includes(lo_rules.begin(), lo_rules.end(), hi_rules.begin(), hi_rules.end()),
             "threshold monotonicity");
  }
  // ACB inversion symmetry, PIC range, kappa zero, tier monotonicity.
  for (int i = 0; i < kCases; ++i) {
    const auto crs = testing::RandomRatios(rng);
    std::vector<double> inv;
    for (double v : crs) inv.push_back(1.0 / v);
    const double kappa = std::uniform_real_distribution<double>(0, 0.5)(rng);
    const auto a = analysis::Acb(crs, kappa);
    const auto b = analysis::Acb(inv, kappa);
    c.Expect(a.n_kept == b.n_kept, "inversion keeps the same pairs");
    if (a.acb && b.acb) c.Expect(testing::RelClose(*b.acb, 1.0 / *a.acb), "ACB inversion symmetry");

    const double pic = analysis::Pic(crs);
    c.Expect(pic >= 0.0 && pic <= 1.0, "PIC range");

    long double log_sum = 0;
    for (double v : crs) log_sum += std::log(static_cast<long double>(v));
    const double geo = static_cast<double>(std::exp(log_sum / crs.size()));
    c.Expect(testing::RelClose(*analysis::Acb(crs, 0.0).acb, geo), "kappa zero geometric mean");

    analysis::AnalysisConfig cfg;
    cfg.acb_threshold = std::uniform_real_distribution<double>(0.5, 2.5)(rng);
    cfg.pic_threshold = std::uniform_real_distribution<double>(0, 1)(rng);
    auto rank = [](analysis::Tier t) {
      return t == analysis::Tier::kHigh ? 2 : t == analysis::Tier::kModerate ? 1 : 0;
    };
    const double x = std::uniform_real_distribution<double>(0.2, 3)(rng);
    const double y = std::uniform_real_distribution<double>(0, 1)(rng);
    const int base = rank(analysis::Classify(x, y, cfg));
    c.Expect(rank(analysis::Classify(x + 0.3, y, cfg)) >= base, "tier monotone in ACB");
    c.Expect(rank(analysis::Classify(x, std::min(1.0, y + 0.2), cfg)) >= base,
             "tier monotone in PIC");
  }
  Report("invariant suites", c,
         "anti-monotonicity, downward closure, threshold monotonicity, ACB inversion, "
         "PIC range, kappa=0 mean, tier monotonicity; " +
             std::to_string(kCases) + " cases each");
}

// ---------------------------------------------------------------------------

void BinningConformance() {
  using namespace binning;
  Check c;
  const Cutpoints bmi{{18.5, 24, 28}, {"underweight", "normal weight", "overweight", "obese"}};
  const std::vector<Cell> bmi_values = {23.9, 24.0, 18.5, 28.0};
  const auto b = BinCutpoints(bmi_values, bmi);
  c.Expect(b.LabelAt(0) == "normal weight", "BMI 23.9");
  c.Expect(b.LabelAt(1) == "overweight", "BMI 24.0");
  c.Expect(b.LabelAt(2) == "normal weight", "BMI 18.5");
  c.Expect(b.LabelAt(3) == "obese", "BMI 28.0");

  FixedWidth diagram;
  diagram.start = 1;
  diagram.width = 1;
  diagram.n_interior = 3;
  diagram.unit = "cm";
  const std::vector<Cell> cm = {0.5, 2.0, 4.0};
  const auto d = BinFixedWidth(cm, diagram);
  c.Expect(d.LabelAt(0) == "<1cm", "diagram 0.5");
  c.Expect(d.LabelAt(1) == "2-3cm", "diagram 2.0");
  c.Expect(d.LabelAt(2) == "≥4cm", "diagram 4.0");

  const std::vector<double> zero = {0.0};
  c.Expect(std::fabs(LogOffsetTransform(zero)[0] - std::log(1e-5)) <= 1e-12, "log offset at 0");

  const std::vector<double> pairs = {0, 1, 10, 11};
  constexpr std::uint64_t kSeeds = 10000;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    KMeansOptions opt;
    opt.k = 2;
    opt.seed = seed;
    c.Expect(FitKMeans1D(pairs, opt).labels == std::vector<int>{0, 0, 1, 1},
             "kmeans [0,1,10,11] seed " + std::to_string(seed));
  }

  std::mt19937_64 rng(17);
  constexpr int kDatasets = 1000;
  for (int i = 0; i < kDatasets; ++i) {
    const int n = std::uniform_int_distribution<int>(2, 80)(rng);
    std::vector<double> xs(n);
    std::lognormal_distribution<double> dist(0, 1.5);
    for (double& x : xs) x = std::round(dist(rng) * 50) / 50;
    const int distinct = static_cast<int>(std::set<double>(xs.begin(), xs.end()).size());
    KMeansOptions opt;
    opt.k = std::uniform_int_distribution<int>(1, std::min(6, distinct))(rng);
    opt.seed = rng();
    const auto r = FitKMeans1D(xs, opt);
    std::vector<std::pair<double, int>> sorted;
    for (int j = 0; j < n; ++j) sorted.emplace_back(xs[j], r.labels[j]);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j < sorted.size(); ++j) {
      c.Expect(sorted[j].second >= sorted[j - 1].second &&
                   (sorted[j].first != sorted[j - 1].first ||
                    sorted[j].second == sorted[j - 1].second),
               "kmeans cluster not contiguous on dataset " + std::to_string(i));
    }
  }
  Report("binning conformance", c,
         "BMI and diagram boundaries, ln(1e-5) at 0, kmeans pairs on " +
             std::to_string(kSeeds) + " seeds, contiguity on " + std::to_string(kDatasets) +
             " datasets");
}

void TshFeatures() {
  using namespace binning;
  Check c;
  const auto flat = TshSeries::FromLog({{0, 2}, {5, 2}, {9, 2}});
  c.Expect(*TshTrmssd(flat) == 0.0, "constant series tRMSSD");
  c.Expect(std::fabs(MeanTshScore(flat) - 2.0) <= 1e-12, "constant series mean");
  const auto s = TshSeries::FromLog({{0, 1}, {1, 3}, {3, 3}});
  c.Expect(std::fabs(MeanTshScore(s) - 8.0 / 3.0) <= 1e-12, "mean 8/3");
  c.Expect(std::fabs(*TshTrmssd(s) - std::sqrt(2.0)) <= 1e-12, "tRMSSD sqrt 2");
  Report("TSH features", c, "constant series and (0,1),(1,3),(3,3) fixtures within 1e-12");
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kArtifacts = {cli::kBinnedCsv,      cli::kStoreJson,
                                             cli::kFrequentJsonl,  cli::kRulesJsonl,
                                             cli::kIndicatorsJson, cli::kPlotDataJson,
                                             cli::kManifestJson};

struct ScaleRun {
  fs::path dir;
  double seconds = 0;
};

cli::PipelineConfig ScaleConfig(const fs::path& dir, const synthetic::Cohort& cohort,
                                const std::string& out, std::size_t jobs) {
  cli::PipelineConfig config;
  config.cases_path = (dir / "cases.csv").string();
  config.tsh_path = (dir / "tsh.csv").string();
  config.binning = binning::ParseBinningConfig(cohort.binning_config);
  config.min_support = cli::MinSupport::Count(10);
  config.min_confidence = cli::ConfidenceSetting::BetaSquared();
  config.seed = 7;
  config.jobs = jobs;
  config.out_dir = (dir / out).string();
  return config;
}

double PeakRssGb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
}

void ScaleAndDeterminism() {
  const fs::path dir = fs::temp_directory_path() /
                       ("ruleboost_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto cohort = synthetic::MakeCohort({}, 7);
  io::WriteText((dir / "cases.csv").string(), cohort.cases_csv);
  io::WriteText((dir / "tsh.csv").string(), cohort.tsh_csv);

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t jobs_a = hw;
  const std::size_t jobs_b = hw == 1 ? 4 : 1;

  Guarded("scale", [&] {
    const auto config = ScaleConfig(dir, cohort, "a", jobs_a);
    const auto start = Clock::now();
    cli::RunPipeline(config);
    const double secs = Seconds(start);
    const double gb = PeakRssGb();

    const auto m = io::ReadJson((fs::path(config.out_dir) / cli::kManifestJson).string());
    const auto& bin = m.at("binning");
    const auto& mining = m.at("mining");
    Check c;
    c.Expect(bin.at("rows").at("retained") == 1673, "retained rows != 1673");
    c.Expect(bin.at("n_items") == 102, "items != 102");
    c.Expect(bin.at("n_missing_items") == 19, "N/A bins != 19");
    c.Expect(mining.at("target").at("count") == 259, "target count != 259");
    c.Expect(mining.at("params").at("min_support_count") == 10, "min count != 10");
    c.Expect(mining.at("params").at("min_confidence") == "beta-squared", "gamma not beta^2");
    c.Expect(secs <= 300.0, Fmt("took %.1f s, limit 300 s", secs));
    c.Expect(gb <= 8.0, Fmt("peak RSS %.2f GB, limit 8 GB", gb));
    Report("scale", c,
           "1673 rows, 102 items, 19 N/A bins, " +
               std::to_string(mining.at("n_frequent").get<std::size_t>()) +
               " frequent itemsets, " + std::to_string(mining.at("n_rules").get<std::size_t>()) +
               " rules; " + Fmt("%.1f s, peak RSS %.2f GB, jobs=", secs, gb) +
               std::to_string(jobs_a));
  });

  Guarded("determinism", [&] {
    const auto config = ScaleConfig(dir, cohort, "b", jobs_b);
    cli::RunPipeline(config);
    Check c;
    for (const auto& name : kArtifacts) {
      const auto a = dir / "a" / name;
      const auto b = dir / "b" / name;
      c.Expect(fs::exists(a) && fs::exists(b), "missing " + name);
      if (fs::exists(a) && fs::exists(b)) {
        c.Expect(io::ReadText(a.string()) == io::ReadText(b.string()), name + " differs");
      }
    }
    Report("determinism", c,
           "7 artifacts byte-identical for jobs=" + std::to_string(jobs_a) +
               " and jobs=" + std::to_string(jobs_b));
  });
  fs::remove_all(dir);
}

}  // namespace

int main() {
  Guarded("oracle equivalence", OracleEquivalence);
  Guarded("metric fixtures", MetricFixtures);
  Guarded("invariant suites", InvariantSuites);
  Guarded("binning conformance", BinningConformance);
  Guarded("TSH features", TshFeatures);
  ScaleAndDeterminism();
  std::printf("%s\n", g_failures == 0 ? "ALL PASS" : "SOME CRITERIA FAILED");
  return g_failures == 0 ? 0 : 1;
}
