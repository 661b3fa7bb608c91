#include "ruleboost/core.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <utility>

#include "ruleboost/error.hpp"

namespace ruleboost {

Itemset::Itemset(std::initializer_list<ItemId> items)
    : Itemset(std::vector<ItemId>(items)) {}

Itemset::Itemset(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

Itemset Itemset::FromSorted(std::vector<ItemId> items) {
  Itemset s;
  s.items_ = std::move(items);
  return s;
}

bool Itemset::contains(ItemId item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Itemset::IsSubsetOf(const Itemset& other) const {
  return std::includes(other.items_.begin(), other.items_.end(),
                       items_.begin(), items_.end());
}

bool Itemset::Intersects(const Itemset& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

Itemset Itemset::With(ItemId item) const {
  std::vector<ItemId> out = items_;
  auto pos = std::lower_bound(out.begin(), out.end(), item);
  if (pos == out.end() || *pos != item) out.insert(pos, item);
  return FromSorted(std::move(out));
}

Itemset Itemset::Without(ItemId item) const {
  std::vector<ItemId> out;
  out.reserve(items_.size());
  for (ItemId i : items_) {
    if (i != item) out.push_back(i);
  }
  return FromSorted(std::move(out));
}

Itemset Itemset::Union(const Itemset& other) const {
  std::vector<ItemId> out;
  out.reserve(items_.size() + other.items_.size());
  std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                 other.items_.end(), std::back_inserter(out));
  return FromSorted(std::move(out));
}

std::string EncodeKey(std::span<const ItemId> items) {
  std::string key(items.size() * 4, '\0');
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::uint32_t v = items[i].value;
    key[4 * i + 0] = static_cast<char>(v & 0xFF);
    key[4 * i + 1] = static_cast<char>((v >> 8) & 0xFF);
    key[4 * i + 2] = static_cast<char>((v >> 16) & 0xFF);
    key[4 * i + 3] = static_cast<char>((v >> 24) & 0xFF);
  }
  return key;
}

std::size_t ItemsetHash::operator()(const Itemset& s) const {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ULL;
  for (ItemId id : s) {
    h ^= id.value;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Tidset::Tidset(std::size_t n_bits, bool filled)
    : n_bits_(n_bits), words_((n_bits + 63) / 64, 0) {
  if (filled) {
    for (std::size_t i = 0; i < n_bits; ++i) set(i);
  }
}

std::size_t Tidset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Tidset& Tidset::operator&=(const Tidset& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

std::size_t Tidset::IntersectInto(const Tidset& a, const Tidset& b,
                                  Tidset& out) {
  out.n_bits_ = a.n_bits_;
  out.words_.resize(a.words_.size());
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    const std::uint64_t w = a.words_[i] & b.words_[i];
    out.words_[i] = w;
    c += static_cast<std::size_t>(std::popcount(w));
  }
  return c;
}

std::size_t Tidset::IntersectionCount(const Tidset& a, const Tidset& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    c += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
  }
  return c;
}

TransactionStore::TransactionStore(std::vector<ItemMeta> vocabulary,
                                   std::vector<Itemset> transactions)
    : vocabulary_(std::move(vocabulary)),
      transactions_(std::move(transactions)) {
  std::set<std::pair<std::string, std::string>> seen;
  std::map<std::string, std::uint32_t> feature_index;
  std::vector<std::uint32_t> feature_of(vocabulary_.size());
  int n_positive = 0;
  int n_negative = 0;
  for (std::uint32_t i = 0; i < vocabulary_.size(); ++i) {
    const ItemMeta& m = vocabulary_[i];
    if (!seen.emplace(m.feature, m.bin).second) {
      throw InputError("duplicate vocabulary entry '" + m.label() + "'");
    }
    auto [it, _] = feature_index.emplace(
        m.feature, static_cast<std::uint32_t>(feature_index.size()));
    feature_of[i] = it->second;
    if (m.target == TargetClass::kPositive) {
      ++n_positive;
      positive_ = ItemId{i};
    } else if (m.target == TargetClass::kNegative) {
      ++n_negative;
      negative_ = ItemId{i};
    }
  }
  if (n_positive != 1 || n_negative != 1) {
    throw InputError(
        "vocabulary must hold exactly one positive and one negative target "
        "item");
  }

  vertical_.assign(vocabulary_.size(), Tidset(transactions_.size()));
  std::vector<std::uint32_t> last_row(feature_index.size(), UINT32_MAX);
  for (std::size_t row = 0; row < transactions_.size(); ++row) {
    const Itemset& t = transactions_[row];
    int n_target = 0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      const ItemId id = t[j];
      if (id.value >= vocabulary_.size()) {
        throw InputError("transaction " + std::to_string(row) +
                         " references unknown item " +
                         std::to_string(id.value));
      }
      if (j > 0 && !(t[j - 1] < id)) {
        throw InputError("transaction " + std::to_string(row) +
                         " is not in canonical order");
      }
      const std::uint32_t f = feature_of[id.value];
      if (last_row[f] == row) {
        throw InputError("transaction " + std::to_string(row) +
                         " holds two items of feature '" +
                         vocabulary_[id.value].feature + "'");
      }
      last_row[f] = static_cast<std::uint32_t>(row);
      if (vocabulary_[id.value].is_target()) ++n_target;
      vertical_[id.value].set(row);
    }
    if (n_target != 1) {
      throw InputError("transaction " + std::to_string(row) +
                       " must hold exactly one target item");
    }
  }
}

const ItemMeta& TransactionStore::meta(ItemId id) const {
  if (id.value >= vocabulary_.size()) {
    throw InputError("unknown item id " + std::to_string(id.value));
  }
  return vocabulary_[id.value];
}

std::optional<ItemId> TransactionStore::Find(const std::string& feature,
                                             const std::string& bin) const {
  for (std::uint32_t i = 0; i < vocabulary_.size(); ++i) {
    if (vocabulary_[i].feature == feature && vocabulary_[i].bin == bin) {
      return ItemId{i};
    }
  }
  return std::nullopt;
}

const Tidset& TransactionStore::tidset(ItemId item) const {
  CheckValid(Itemset{item});
  return vertical_[item.value];
}

void TransactionStore::CheckValid(const Itemset& s) const {
  for (ItemId id : s) {
    if (id.value >= vocabulary_.size()) {
      throw InputError("unknown item id " + std::to_string(id.value));
    }
  }
}

std::uint64_t TransactionStore::Count(const Itemset& s) const {
  CheckValid(s);
  if (s.empty()) return transactions_.size();
  if (s.size() == 1) return vertical_[s[0].value].count();
  Tidset acc = vertical_[s[0].value];
  for (std::size_t j = 1; j + 1 < s.size(); ++j) acc &= vertical_[s[j].value];
  return Tidset::IntersectionCount(acc, vertical_[s.back().value]);
}

double Support(const TransactionStore& store, const Itemset& s) {
  if (store.size() == 0) {
    throw UndefinedMeasureError("support on an empty store");
  }
  return static_cast<double>(store.Count(s)) /
         static_cast<double>(store.size());
}

double Confidence(const TransactionStore& store, const Itemset& antecedent,
                  const Itemset& consequent) {
  if (antecedent.Intersects(consequent)) {
    throw InputError("antecedent and consequent intersect");
  }
  const std::uint64_t a = store.Count(antecedent);
  if (a == 0) {
    throw UndefinedMeasureError("confidence undefined: antecedent support is 0");
  }
  return static_cast<double>(store.Count(antecedent.Union(consequent))) /
         static_cast<double>(a);
}

double Lift(const TransactionStore& store, const Itemset& antecedent,
            const Itemset& consequent) {
  const std::uint64_t c = store.Count(consequent);
  if (c == 0 || store.Count(antecedent) == 0) {
    throw UndefinedMeasureError("lift undefined: zero support");
  }
  return Confidence(store, antecedent, consequent) /
         (static_cast<double>(c) / static_cast<double>(store.size()));
}

Rule MakeRule(Itemset antecedent, ItemId consequent, std::uint64_t joint_count,
              std::uint64_t antecedent_count, std::uint64_t consequent_count,
              std::uint64_t n) {
  Rule r;
  r.antecedent = std::move(antecedent);
  r.consequent = consequent;
  r.joint_count = joint_count;
  r.antecedent_count = antecedent_count;
  const double nd = static_cast<double>(n);
  r.support = static_cast<double>(joint_count) / nd;
  r.confidence = static_cast<double>(joint_count) /
                 static_cast<double>(antecedent_count);
  r.lift = r.confidence / (static_cast<double>(consequent_count) / nd);
  return r;
}

}  // namespace ruleboost
