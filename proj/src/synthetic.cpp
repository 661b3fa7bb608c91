#include "ruleboost/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "ruleboost/csv.hpp"

namespace ruleboost::synthetic {

using io::Json;

namespace {

struct Categorical {
  std::string name;
  std::vector<std::string> levels;
  std::vector<double> benign;     // bin weights
  std::vector<double> malignant;
  double missing = 0.0;
};

// clang-format off
const std::vector<Categorical>& Indicators() {
  static const std::vector<Categorical> kIndicators = {
    {"Envelope invasion", {"Absent", "Present"}, {0.995, 0.005}, {0.86, 0.14}, 0.0},
    {"Vascular invasion", {"None", "≤4 vessels", ">4 vessels"}, {0.99, 0.007, 0.003}, {0.80, 0.13, 0.07}, 0.0},
    {"Tumor envelope", {"Complete", "Incomplete"}, {0.97, 0.03}, {0.78, 0.22}, 0.0},
    {"Composition", {"Solid", "Predominantly solid", "Predominantly cystic", "Cystic"}, {0.62, 0.24, 0.10, 0.04}, {0.86, 0.11, 0.02, 0.01}, 0.03},
    {"Echogenicity", {"Hyperechoic", "Isoechoic", "Hypoechoic", "Markedly hypoechoic"}, {0.10, 0.50, 0.36, 0.04}, {0.05, 0.35, 0.52, 0.08}, 0.04},
    {"Margin", {"Smooth", "Lobulated", "Irregular", "Ill-defined"}, {0.86, 0.05, 0.04, 0.05}, {0.70, 0.12, 0.09, 0.09}, 0.03},
    {"Echogenic foci", {"None", "Microcalcifications", "Macrocalcifications", "Peripheral calcifications"}, {0.86, 0.05, 0.07, 0.02}, {0.74, 0.07, 0.12, 0.07}, 0.05},
    {"Halo", {"Absent", "Thin even halo", "Uneven thickness halo"}, {0.46, 0.46, 0.08}, {0.38, 0.44, 0.18}, 0.08},
    {"Vascularity", {"None", "Mainly peripheral", "Mainly central", "Mixed"}, {0.12, 0.52, 0.12, 0.24}, {0.08, 0.40, 0.22, 0.30}, 0.06},
    {"Trabecular pattern", {"Absent", "Present"}, {0.96, 0.04}, {0.87, 0.13}, 0.10},
    {"Nodule-in-nodule pattern", {"Absent", "Present"}, {0.95, 0.05}, {0.86, 0.14}, 0.10},
    {"Hashimoto's thyroiditis", {"Absent", "Present"}, {0.84, 0.16}, {0.78, 0.22}, 0.12},
    {"Shape", {"Wider-than-tall", "Taller-than-wide"}, {0.95, 0.05}, {0.93, 0.07}, 0.02},
    {"Sex", {"Female", "Male"}, {0.78, 0.22}, {0.72, 0.28}, 0.01},
    {"Location", {"Left lobe", "Right lobe", "Isthmus", "Bilateral"}, {0.46, 0.47, 0.05, 0.02}, {0.45, 0.47, 0.05, 0.03}, 0.02},
    {"TI-RADS category", {"2", "3", "4a", "4b", "4c", "5"}, {0.08, 0.46, 0.30, 0.10, 0.05, 0.01}, {0.03, 0.32, 0.32, 0.18, 0.11, 0.04}, 0.07},
  };
  return kIndicators;
}
// clang-format on

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t Draw(const std::vector<double>& weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  double u = Uniform(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

double Normal(std::mt19937_64& rng) {
  // Box-Muller; one value per call keeps the stream position simple.
  const double u1 = std::max(Uniform(rng), 1e-300);
  const double u2 = Uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string Fmt(double v, int decimals) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(decimals);
  out << v;
  return out.str();
}

Json ColumnConfigs() {
  Json cols = Json::array();
  cols.push_back({{"name", "case_id"}, {"role", "id"}});
  for (const Categorical& c : Indicators()) {
    cols.push_back({{"name", c.name}, {"type", "categorical"}, {"levels", c.levels}});
  }
  cols.push_back({{"name", "Max diagram"}, {"type", "continuous"},
                  {"binspec", {{"kind", "fixed_width"}, {"start", 1}, {"width", 1},
                               {"n_interior", 3}, {"unit", "cm"}}}});
  cols.push_back({{"name", "Mean diagram"}, {"type", "continuous"},
                  {"binspec", {{"kind", "fixed_width"}, {"start", 1}, {"width", 1},
                               {"n_interior", 3}, {"unit", "cm"}}}});
  cols.push_back({{"name", "BMI"}, {"type", "continuous"},
                  {"binspec", {{"kind", "cutpoints"}, {"boundaries", {18.5, 24, 28}},
                               {"labels", {"Underweight", "Normal weight", "Overweight", "Obese"}}}}});
  cols.push_back({{"name", "Age"}, {"type", "continuous"},
                  {"binspec", {{"kind", "spread_grid"}, {"width", 10}, {"anchor_multiple", 5}}}});
  cols.push_back({{"name", "Mean TSH score"}, {"type", "continuous"}, {"derived", "tsh_mean_score"},
                  {"binspec", {{"kind", "kmeans"}, {"k", 5}, {"normalize", true}}}});
  cols.push_back({{"name", "TSH tRMSSD"}, {"type", "continuous"}, {"derived", "tsh_trmssd"},
                  {"binspec", {{"kind", "kmeans"}, {"k", 5}, {"log_offset", 1e-5}, {"normalize", true}}}});
  cols.push_back({{"name", "Pathology"}, {"role", "target"}, {"positive", "malignant"},
                  {"negative", "benign"}, {"drop", {"MPU"}}});
  return cols;
}

}  // namespace

Cohort MakeCohort(const CohortShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto& indicators = Indicators();

  // Label per row, shuffled: malignant / benign / MPU / invalid.
  enum class Kind { kBenign, kMalignant, kMpu, kInvalid };
  std::vector<Kind> kinds;
  kinds.insert(kinds.end(), shape.malignant, Kind::kMalignant);
  kinds.insert(kinds.end(), shape.retained - shape.malignant, Kind::kBenign);
  kinds.insert(kinds.end(), shape.dropped_label, Kind::kMpu);
  kinds.insert(kinds.end(), shape.invalid, Kind::kInvalid);
  for (std::size_t i = kinds.size(); i > 1; --i) {
    std::swap(kinds[i - 1], kinds[rng() % i]);
  }

  std::ostringstream cases;
  std::vector<std::string> header = {"case_id"};
  for (const Categorical& c : indicators) header.push_back(c.name);
  for (const char* h : {"Max diagram", "Mean diagram", "BMI", "Age", "Pathology"}) header.push_back(h);
  csv::WriteRow(cases, header);

  std::ostringstream tsh;
  csv::WriteRow(tsh, {"case_id", "timestamp", "tsh"});

  for (std::size_t r = 0; r < kinds.size(); ++r) {
    const Kind kind = kinds[r];
    const bool malignant = kind == Kind::kMalignant || (kind == Kind::kMpu && Uniform(rng) < 0.5);
    const std::string id = "P" + std::to_string(10000 + r);
    std::vector<std::string> row = {id};
    for (std::size_t f = 0; f < indicators.size(); ++f) {
      const Categorical& c = indicators[f];
      if (c.missing > 0.0 && Uniform(rng) < c.missing) {
        row.emplace_back("");
        continue;
      }
      row.push_back(c.levels[Draw(malignant ? c.malignant : c.benign, rng)]);
    }
    if (kind == Kind::kInvalid) row[3] = "Code 9";  // Tumor envelope out of range

    const double max_d = std::exp((malignant ? 1.05 : 0.72) + 0.55 * Normal(rng));
    const double mean_d = max_d * (0.6 + 0.35 * Uniform(rng));
    row.push_back(Uniform(rng) < 0.04 ? "" : Fmt(max_d, 2));
    row.push_back(Uniform(rng) < 0.06 ? "" : Fmt(mean_d, 2));
    const double bmi = (malignant ? 24.6 : 23.4) + 3.4 * Normal(rng);
    row.push_back(Uniform(rng) < 0.09 ? "" : Fmt(std::clamp(bmi, 15.0, 40.0), 1));
    const double age = std::clamp(std::round(46.0 + 13.0 * Normal(rng)), 18.0, 84.0);
    row.push_back(Uniform(rng) < 0.01 ? "" : Fmt(age, 0));
    row.emplace_back(kind == Kind::kMpu ? "MPU" : malignant ? "malignant" : "benign");
    csv::WriteRow(cases, row);

    // 0..7 TSH examinations; some readings are missing.
    const std::size_t visits = Draw({0.06, 0.14, 0.2, 0.2, 0.16, 0.12, 0.08, 0.04}, rng);
    const double level = (malignant ? 0.35 : 0.65) + 0.7 * Normal(rng);
    const double drift = 0.004 * Normal(rng);
    double day = 14000.0 + std::floor(2000.0 * Uniform(rng));
    for (std::size_t v = 0; v < visits; ++v) {
      const double log_tsh = level + drift * (day - 14000.0) * 0.1 + 0.25 * Normal(rng);
      const bool missing = Uniform(rng) < 0.05;
      csv::WriteRow(tsh, {id, Fmt(day, 0), missing ? "NA" : Fmt(std::exp(log_tsh), 3)});
      day += 20.0 + std::floor(400.0 * Uniform(rng));
    }
  }

  Cohort out;
  out.cases_csv = cases.str();
  out.tsh_csv = tsh.str();
  out.binning_config = {{"na_tokens", {"", "NA", "N/A"}}, {"columns", ColumnConfigs()}};
  return out;
}

}  // namespace ruleboost::synthetic
