#pragma once

#include <cstdint>
#include <string>

#include "ruleboost/json_io.hpp"

namespace ruleboost::synthetic {

// Row counts of a generated cohort. Loaded rows = retained + dropped + invalid.
struct CohortShape {
  std::size_t retained = 1673;
  std::size_t malignant = 259;
  std::size_t dropped_label = 417;  // rows labelled "MPU"
  std::size_t invalid = 1;          // rows with an out-of-range coded value
};

// A thyroid-nodule-like case table: 22 indicators (3 always recorded, 19 with
// missing values) plus the pathology label, a long-format TSH series file and
// the matching binning config. Binned with that config it yields 102 items of
// which 19 are missing-value bins.
struct Cohort {
  std::string cases_csv;
  std::string tsh_csv;
  io::Json binning_config;
};

Cohort MakeCohort(const CohortShape& shape, std::uint64_t seed);

}  // namespace ruleboost::synthetic
