#include "ruleboost/dataset.hpp"

#include <cmath>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <set>
#include <sstream>

#include "ruleboost/error.hpp"
#include "ruleboost/seed.hpp"

namespace ruleboost::binning {

using io::Json;

namespace {

template <typename T>
T Field(const Json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where + ": missing or malformed '" + key + "'");
  }
}

BinSpec ParseBinSpec(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": binspec must be an object");
  const auto kind = Field<std::string>(j, "kind", where);
  BinSpec spec;
  if (kind == "fixed_width") {
    FixedWidth s;
    s.start = Field<double>(j, "start", where);
    s.width = Field<double>(j, "width", where);
    s.n_interior = Field<int>(j, "n_interior", where);
    s.open_below = j.value("open_below", true);
    s.open_above = j.value("open_above", true);
    s.unit = j.value("unit", std::string{});
    const auto style = j.value("style", std::string("range"));
    if (style == "interval") {
      s.style = LabelStyle::kInterval;
    } else if (style != "range") {
      throw ConfigError(where + ": unknown label style '" + style + "'");
    }
    spec = s;
  } else if (kind == "cutpoints") {
    Cutpoints s;
    s.boundaries = Field<std::vector<double>>(j, "boundaries", where);
    s.labels = Field<std::vector<std::string>>(j, "labels", where);
    spec = s;
  } else if (kind == "kmeans") {
    KMeans1D s;
    s.k = Field<int>(j, "k", where);
    if (j.contains("log_offset") && !j.at("log_offset").is_null()) {
      s.log_offset = Field<double>(j, "log_offset", where);
    }
    s.normalize = j.value("normalize", true);
    spec = s;
  } else if (kind == "spread_grid") {
    SpreadGrid s;
    s.width = j.value("width", 10.0);
    s.anchor_multiple = j.value("anchor_multiple", 5.0);
    if (j.contains("anchor") && !j.at("anchor").is_null()) {
      s.anchor = Field<double>(j, "anchor", where);
    }
    spec = s;
  } else {
    throw ConfigError(where + ": unknown binspec kind '" + kind + "'");
  }
  try {
    Validate(spec);
  } catch (const ConfigError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return spec;
}

Json BinSpecToJson(const BinSpec& spec) {
  struct Visitor {
    Json operator()(const FixedWidth& s) const {
      return {{"kind", "fixed_width"}, {"start", s.start}, {"width", s.width},
              {"n_interior", s.n_interior}, {"open_below", s.open_below},
              {"open_above", s.open_above}, {"unit", s.unit},
              {"style", s.style == LabelStyle::kInterval ? "interval" : "range"}};
    }
    Json operator()(const Cutpoints& s) const {
      return {{"kind", "cutpoints"}, {"boundaries", s.boundaries}, {"labels", s.labels}};
    }
    Json operator()(const KMeans1D& s) const {
      return {{"kind", "kmeans"}, {"k", s.k},
              {"log_offset", s.log_offset ? Json(*s.log_offset) : Json(nullptr)},
              {"normalize", s.normalize}};
    }
    Json operator()(const SpreadGrid& s) const {
      return {{"kind", "spread_grid"}, {"width", s.width},
              {"anchor_multiple", s.anchor_multiple},
              {"anchor", s.anchor ? Json(*s.anchor) : Json(nullptr)}};
    }
  };
  return std::visit(Visitor{}, spec);
}

const char* RoleName(ColumnRole r) {
  switch (r) {
    case ColumnRole::kFeature: return "feature";
    case ColumnRole::kTarget: return "target";
    case ColumnRole::kId: return "id";
    case ColumnRole::kExcluded: return "excluded";
  }
  return "feature";
}

const char* TypeName(ColumnType t) {
  switch (t) {
    case ColumnType::kCategorical: return "categorical";
    case ColumnType::kContinuous: return "continuous";
    case ColumnType::kExcluded: return "excluded";
  }
  return "categorical";
}

bool IsNa(const std::string& s, const std::vector<std::string>& tokens) {
  return std::find(tokens.begin(), tokens.end(), s) != tokens.end();
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<double> ParseNumber(const std::string& text) {
  const std::string t = Trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty()) return std::nullopt;
  return v;
}

std::optional<double> ParseDay(const std::string& text) {
  if (auto v = ParseNumber(text)) return v;
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char dash1 = 0;
  char dash2 = 0;
  std::istringstream in(Trim(text));
  if (!(in >> y >> dash1 >> m >> dash2 >> d) || dash1 != '-' || dash2 != '-' ||
      in.peek() != std::char_traits<char>::eof()) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return static_cast<double>(
      std::chrono::sys_days(ymd).time_since_epoch().count());
}

// CSV line of retained-or-loaded row `row` (header is line 1).
std::string RowRef(std::size_t row) { return "row " + std::to_string(row + 2); }

}  // namespace

const ColumnConfig& BinningConfig::target() const {
  for (const auto& c : columns) {
    if (c.role == ColumnRole::kTarget) return c;
  }
  throw ConfigError("binning config declares no target column");
}

const ColumnConfig* BinningConfig::id() const {
  for (const auto& c : columns) {
    if (c.role == ColumnRole::kId) return &c;
  }
  return nullptr;
}

BinningConfig ParseBinningConfig(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("binning config must be an object");
  BinningConfig config;
  if (doc.contains("na_tokens")) {
    config.na_tokens = Field<std::vector<std::string>>(doc, "na_tokens", "binning");
  }
  if (!doc.contains("columns") || !doc.at("columns").is_array()) {
    throw ConfigError("binning config needs a 'columns' array");
  }
  std::set<std::string> names;
  std::set<std::string> features;
  int n_target = 0;
  int n_id = 0;
  for (const Json& j : doc.at("columns")) {
    const std::string where =
        "column " + (j.is_object() ? j.value("name", std::string("?")) : std::string("?"));
    ColumnConfig c;
    c.name = Field<std::string>(j, "name", where);
    c.feature = j.value("feature", c.name);
    const std::string role = j.value("role", std::string("feature"));
    if (role == "feature") {
      c.role = ColumnRole::kFeature;
    } else if (role == "target") {
      c.role = ColumnRole::kTarget;
    } else if (role == "id") {
      c.role = ColumnRole::kId;
    } else if (role == "excluded") {
      c.role = ColumnRole::kExcluded;
    } else {
      throw ConfigError(where + ": unknown role '" + role + "'");
    }
    const std::string type =
        j.value("type", std::string(j.contains("binspec") ? "continuous" : "categorical"));
    if (type == "categorical") {
      c.type = ColumnType::kCategorical;
    } else if (type == "continuous") {
      c.type = ColumnType::kContinuous;
    } else if (type == "excluded") {
      c.type = ColumnType::kExcluded;
      c.role = ColumnRole::kExcluded;
    } else {
      throw ConfigError(where + ": unknown type '" + type + "'");
    }
    if (j.contains("levels")) {
      c.levels = Field<std::vector<std::string>>(j, "levels", where);
    }
    if (j.contains("derived")) {
      const auto d = Field<std::string>(j, "derived", where);
      if (d == "tsh_mean_score") {
        c.derived = TshFeature::kMeanScore;
      } else if (d == "tsh_trmssd") {
        c.derived = TshFeature::kTrmssd;
      } else {
        throw ConfigError(where + ": unknown derived feature '" + d + "'");
      }
    }
    if (c.role == ColumnRole::kTarget) {
      ++n_target;
      c.positive = j.value("positive", c.positive);
      c.negative = j.value("negative", c.negative);
      if (j.contains("drop")) c.drop = Field<std::vector<std::string>>(j, "drop", where);
      if (c.positive == c.negative) {
        throw ConfigError(where + ": positive and negative labels coincide");
      }
    } else if (c.role == ColumnRole::kId) {
      ++n_id;
    } else if (c.role == ColumnRole::kFeature) {
      if (c.type == ColumnType::kContinuous) {
        if (!j.contains("binspec")) {
          throw ConfigError(where + ": continuous feature needs a binspec");
        }
        c.binspec = ParseBinSpec(j.at("binspec"), where);
      } else if (c.derived) {
        throw ConfigError(where + ": derived TSH features must be continuous");
      }
      if (!features.insert(c.feature).second) {
        throw ConfigError(where + ": duplicate feature name '" + c.feature + "'");
      }
    }
    if (!names.insert(c.name).second) {
      throw ConfigError(where + ": column listed twice");
    }
    config.columns.push_back(std::move(c));
  }
  if (n_target != 1) throw ConfigError("binning config needs exactly one target column");
  if (n_id > 1) throw ConfigError("binning config allows at most one id column");
  if (features.count(config.target().feature)) {
    throw ConfigError("target feature name clashes with a feature column");
  }
  return config;
}

Json ToJson(const BinningConfig& config) {
  Json cols = Json::array();
  for (const auto& c : config.columns) {
    Json j = {{"name", c.name}, {"feature", c.feature}, {"role", RoleName(c.role)},
              {"type", TypeName(c.type)}};
    if (c.binspec) j["binspec"] = BinSpecToJson(*c.binspec);
    if (!c.levels.empty()) j["levels"] = c.levels;
    if (c.derived) {
      j["derived"] = *c.derived == TshFeature::kMeanScore ? "tsh_mean_score" : "tsh_trmssd";
    }
    if (c.role == ColumnRole::kTarget) {
      j["positive"] = c.positive;
      j["negative"] = c.negative;
      j["drop"] = c.drop;
    }
    cols.push_back(std::move(j));
  }
  return {{"na_tokens", config.na_tokens}, {"columns", cols}};
}

RawTable RawTable::FromCsv(const csv::Table& table,
                           const std::vector<std::string>& na_tokens) {
  RawTable raw;
  raw.header = table.header;
  raw.rows.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::vector<std::optional<std::string>> cells;
    cells.reserve(row.size());
    for (const auto& cell : row) {
      const std::string t = Trim(cell);
      if (IsNa(t, na_tokens)) {
        cells.emplace_back(std::nullopt);
      } else {
        cells.emplace_back(t);
      }
    }
    raw.rows.push_back(std::move(cells));
  }
  return raw;
}

int RawTable::ColumnIndex(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::map<std::string, TshSeries> LoadTshSeries(
    const csv::Table& table, const std::vector<std::string>& na_tokens) {
  const int id_col = table.ColumnIndex("case_id");
  const int t_col = table.ColumnIndex("timestamp");
  const int v_col = table.ColumnIndex("tsh");
  if (id_col < 0 || t_col < 0 || v_col < 0) {
    throw InputError("TSH series file needs columns case_id, timestamp, tsh");
  }
  std::map<std::string, std::vector<TshPoint>> points;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::string value = Trim(row[static_cast<std::size_t>(v_col)]);
    if (IsNa(value, na_tokens)) continue;
    const auto day = ParseDay(row[static_cast<std::size_t>(t_col)]);
    const auto tsh = ParseNumber(value);
    if (!day) {
      throw InputError("TSH series " + RowRef(r) + ", column timestamp: cannot parse '" +
                       row[static_cast<std::size_t>(t_col)] + "'");
    }
    if (!tsh) {
      throw InputError("TSH series " + RowRef(r) + ", column tsh: cannot parse '" +
                       value + "'");
    }
    points[Trim(row[static_cast<std::size_t>(id_col)])].push_back({*day, *tsh});
  }
  std::map<std::string, TshSeries> out;
  for (auto& [id, pts] : points) {
    try {
      out.emplace(id, TshSeries::FromTsh(std::move(pts)));
    } catch (const InputError& e) {
      throw InputError("TSH series of case '" + id + "': " + e.what());
    }
  }
  return out;
}

BinnedDataset BinDataset(const RawTable& table,
                         const std::map<std::string, TshSeries>& tsh,
                         const BinningConfig& config, std::uint64_t seed) {
  const ColumnConfig& target = config.target();
  const int target_col = table.ColumnIndex(target.name);
  if (target_col < 0) {
    throw InputError("missing target column '" + target.name + "'");
  }
  const ColumnConfig* id = config.id();
  int id_col = -1;
  if (id) {
    id_col = table.ColumnIndex(id->name);
    if (id_col < 0) throw InputError("missing id column '" + id->name + "'");
  }

  std::vector<const ColumnConfig*> features;
  std::vector<int> feature_cols;
  for (const auto& c : config.columns) {
    if (c.role != ColumnRole::kFeature) continue;
    features.push_back(&c);
    if (c.derived) {
      if (id_col < 0) {
        throw ConfigError("column " + c.name + ": TSH-derived features need an id column");
      }
      feature_cols.push_back(-1);
    } else {
      const int idx = table.ColumnIndex(c.name);
      if (idx < 0) throw InputError("missing column '" + c.name + "'");
      feature_cols.push_back(idx);
    }
  }

  BinnedDataset out;
  out.counts.loaded = table.rows.size();
  std::vector<std::size_t> kept;
  std::vector<bool> positive;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto& label = row[static_cast<std::size_t>(target_col)];
    if (!label) {
      throw InputError(RowRef(r) + ", column " + target.name + ": missing target label");
    }
    if (std::find(target.drop.begin(), target.drop.end(), *label) != target.drop.end()) {
      ++out.counts.dropped_target;
      continue;
    }
    if (*label != target.positive && *label != target.negative) {
      throw InputError(RowRef(r) + ", column " + target.name + ": unexpected label '" +
                       *label + "'");
    }
    bool invalid = false;
    for (std::size_t f = 0; f < features.size(); ++f) {
      const ColumnConfig& c = *features[f];
      if (c.type != ColumnType::kCategorical || c.levels.empty()) continue;
      const auto& cell = row[static_cast<std::size_t>(feature_cols[f])];
      if (cell && std::find(c.levels.begin(), c.levels.end(), *cell) == c.levels.end()) {
        invalid = true;
      }
    }
    if (invalid) {
      ++out.counts.dropped_invalid;
      continue;
    }
    kept.push_back(r);
    positive.push_back(*label == target.positive);
    out.case_ids.push_back(id_col >= 0 && row[static_cast<std::size_t>(id_col)]
                               ? *row[static_cast<std::size_t>(id_col)]
                               : std::to_string(r + 1));
  }
  out.counts.retained = kept.size();

  for (const auto& c : config.columns) {
    if (c.role == ColumnRole::kTarget) {
      BinnedColumn col;
      col.feature = c.feature;
      col.is_target = true;
      col.values.bins = {c.negative, c.positive};
      col.negative_bin = 0;
      col.positive_bin = 1;
      for (bool p : positive) col.values.codes.emplace_back(p ? 1U : 0U);
      col.fitted = {{"kind", "target"}, {"positive", c.positive}, {"negative", c.negative}};
      out.columns.push_back(std::move(col));
      continue;
    }
    if (c.role != ColumnRole::kFeature) continue;
    const auto f = static_cast<std::size_t>(
        std::find(features.begin(), features.end(), &c) - features.begin());
    BinnedColumn col;
    col.feature = c.feature;

    if (c.type == ColumnType::kCategorical) {
      std::vector<std::string> bins = c.levels;
      if (bins.empty()) {
        std::set<std::string> seen;
        for (std::size_t r : kept) {
          const auto& cell = table.rows[r][static_cast<std::size_t>(feature_cols[f])];
          if (cell) seen.insert(*cell);
        }
        bins.assign(seen.begin(), seen.end());
      }
      col.values.bins = bins;
      for (std::size_t r : kept) {
        const auto& cell = table.rows[r][static_cast<std::size_t>(feature_cols[f])];
        if (!cell) {
          col.values.codes.emplace_back(std::nullopt);
        } else {
          col.values.codes.emplace_back(static_cast<std::uint32_t>(
              std::find(bins.begin(), bins.end(), *cell) - bins.begin()));
        }
      }
      col.fitted = {{"kind", "categorical"}, {"levels", bins}};
      out.columns.push_back(std::move(col));
      continue;
    }

    std::vector<Cell> cells;
    cells.reserve(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const std::size_t r = kept[i];
      if (c.derived) {
        auto it = tsh.find(out.case_ids[i]);
        if (it == tsh.end() || it->second.empty()) {
          cells.emplace_back(std::nullopt);
        } else if (*c.derived == TshFeature::kMeanScore) {
          cells.emplace_back(MeanTshScore(it->second));
        } else {
          cells.emplace_back(TshTrmssd(it->second));
        }
        continue;
      }
      const auto& cell = table.rows[r][static_cast<std::size_t>(feature_cols[f])];
      if (!cell) {
        cells.emplace_back(std::nullopt);
        continue;
      }
      const auto v = ParseNumber(*cell);
      if (!v || !std::isfinite(*v)) {
        throw InputError(RowRef(r) + ", column " + c.name + ": not a finite number '" +
                         *cell + "'");
      }
      cells.emplace_back(*v);
    }

    try {
      if (const auto* fw = std::get_if<FixedWidth>(&*c.binspec)) {
        col.values = BinFixedWidth(cells, *fw);
        col.fitted = BinSpecToJson(*fw);
      } else if (const auto* cp = std::get_if<Cutpoints>(&*c.binspec)) {
        col.values = BinCutpoints(cells, *cp);
        col.fitted = BinSpecToJson(*cp);
      } else if (const auto* sg = std::get_if<SpreadGrid>(&*c.binspec)) {
        const FixedWidth grid = ResolveSpreadGrid(cells, *sg);
        col.values = BinFixedWidth(cells, grid);
        col.fitted = BinSpecToJson(grid);
      } else {
        KMeans1D km = std::get<KMeans1D>(*c.binspec);
        km.seed = DeriveSeed(seed, "kmeans:" + c.name);
        const KMeansBinning fit = BinKMeans(cells, km);
        col.values = fit.binned;
        col.fitted = BinSpecToJson(km);
        col.fitted["boundaries"] = fit.fitted.boundaries;
        col.fitted["labels"] = fit.fitted.labels;
        col.fitted["centroids"] = fit.centroids;
        col.fitted["seed"] = km.seed;
      }
    } catch (const InputError& e) {
      throw InputError("column " + c.name + ": " + e.what());
    }
    out.columns.push_back(std::move(col));
  }
  return out;
}

TransactionStore EncodeDataset(const BinnedDataset& binned) {
  std::vector<ItemMeta> vocabulary;
  // item id per (column, bin); the N/A bin uses index bins.size().
  std::vector<std::vector<std::optional<std::uint32_t>>> ids(binned.columns.size());
  for (std::size_t c = 0; c < binned.columns.size(); ++c) {
    const BinnedColumn& col = binned.columns[c];
    if (col.values.codes.size() != binned.rows()) {
      throw InternalError("column " + col.feature + " has a wrong row count");
    }
    std::vector<std::uint64_t> occupancy(col.values.bins.size() + 1, 0);
    for (const auto& code : col.values.codes) {
      ++occupancy[code ? *code : col.values.bins.size()];
    }
    if (col.is_target && occupancy.back() > 0) {
      throw InputError("target column has missing labels");
    }
    ids[c].assign(occupancy.size(), std::nullopt);
    for (std::size_t b = 0; b < occupancy.size(); ++b) {
      if (occupancy[b] == 0) continue;
      ItemMeta m;
      m.feature = col.feature;
      const bool missing = b == col.values.bins.size();
      m.bin = missing ? kMissingLabel : col.values.bins[b];
      m.is_missing = missing;
      if (col.is_target) {
        m.target = b == col.positive_bin ? TargetClass::kPositive : TargetClass::kNegative;
      }
      ids[c][b] = static_cast<std::uint32_t>(vocabulary.size());
      vocabulary.push_back(std::move(m));
    }
  }
  std::vector<Itemset> transactions;
  transactions.reserve(binned.rows());
  for (std::size_t r = 0; r < binned.rows(); ++r) {
    std::vector<ItemId> items;
    items.reserve(binned.columns.size());
    for (std::size_t c = 0; c < binned.columns.size(); ++c) {
      const auto& code = binned.columns[c].values.codes[r];
      items.push_back(ItemId{*ids[c][code ? *code : binned.columns[c].values.bins.size()]});
    }
    transactions.emplace_back(std::move(items));
  }
  return TransactionStore(std::move(vocabulary), std::move(transactions));
}

std::vector<std::map<std::string, std::string>> DecodeStore(
    const TransactionStore& store) {
  std::vector<std::map<std::string, std::string>> out;
  out.reserve(store.size());
  for (const Itemset& t : store.transactions()) {
    std::map<std::string, std::string> row;
    for (ItemId id : t) row[store.meta(id).feature] = store.meta(id).bin;
    out.push_back(std::move(row));
  }
  return out;
}

std::string BinnedCsv(const BinnedDataset& binned) {
  std::ostringstream out;
  std::vector<std::string> header = {"case_id"};
  for (const auto& col : binned.columns) header.push_back(col.feature);
  csv::WriteRow(out, header);
  for (std::size_t r = 0; r < binned.rows(); ++r) {
    std::vector<std::string> fields = {binned.case_ids[r]};
    for (const auto& col : binned.columns) fields.push_back(col.values.LabelAt(r));
    csv::WriteRow(out, fields);
  }
  return out.str();
}

Json StoreToJson(const TransactionStore& store,
                 const std::vector<std::string>& case_ids) {
  Json vocab = Json::array();
  for (std::uint32_t i = 0; i < store.vocabulary_size(); ++i) {
    const ItemMeta& m = store.vocabulary()[i];
    const char* cls = m.target == TargetClass::kPositive   ? "positive"
                      : m.target == TargetClass::kNegative ? "negative"
                                                           : nullptr;
    vocab.push_back({{"id", i}, {"feature", m.feature}, {"bin", m.bin},
                     {"is_missing", m.is_missing}, {"is_target", m.is_target()},
                     {"target_class", cls ? Json(cls) : Json(nullptr)}});
  }
  Json txs = Json::array();
  for (const Itemset& t : store.transactions()) {
    Json row = Json::array();
    for (ItemId id : t) row.push_back(id.value);
    txs.push_back(std::move(row));
  }
  return {{"n", store.size()}, {"vocabulary", vocab}, {"transactions", txs},
          {"case_ids", case_ids}};
}

TransactionStore StoreFromJson(const Json& doc, std::vector<std::string>* case_ids) {
  try {
    std::vector<ItemMeta> vocab;
    for (const Json& v : doc.at("vocabulary")) {
      ItemMeta m;
      m.feature = v.at("feature").get<std::string>();
      m.bin = v.at("bin").get<std::string>();
      m.is_missing = v.at("is_missing").get<bool>();
      const Json& cls = v.at("target_class");
      if (!cls.is_null()) {
        m.target = cls.get<std::string>() == "positive" ? TargetClass::kPositive
                                                        : TargetClass::kNegative;
      }
      if (v.at("id").get<std::size_t>() != vocab.size()) {
        throw InputError("store vocabulary ids must be dense and ordered");
      }
      vocab.push_back(std::move(m));
    }
    std::vector<Itemset> txs;
    for (const Json& t : doc.at("transactions")) {
      std::vector<ItemId> items;
      for (const Json& id : t) items.push_back(ItemId{id.get<std::uint32_t>()});
      txs.emplace_back(std::move(items));
    }
    if (doc.at("n").get<std::size_t>() != txs.size()) {
      throw InputError("store 'n' disagrees with the transaction count");
    }
    if (case_ids) *case_ids = doc.at("case_ids").get<std::vector<std::string>>();
    return TransactionStore(std::move(vocab), std::move(txs));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed store document: ") + e.what());
  }
}

}  // namespace ruleboost::binning
