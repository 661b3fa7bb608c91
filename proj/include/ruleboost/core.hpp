#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ruleboost {

// Dense index into a store's item vocabulary. The numeric order of ids is the
// canonical item order.
struct ItemId {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(ItemId, ItemId) = default;
};

enum class TargetClass : std::uint8_t { kNone, kPositive, kNegative };

// One (feature, bin) pair of the vocabulary.
struct ItemMeta {
  std::string feature;
  std::string bin;
  bool is_missing = false;
  TargetClass target = TargetClass::kNone;

  bool is_target() const { return target != TargetClass::kNone; }
  std::string label() const { return feature + ": " + bin; }
};

// Duplicate-free ascending list of item ids.
class Itemset {
 public:
  Itemset() = default;
  Itemset(std::initializer_list<ItemId> items);
  // Sorts and removes duplicates.
  explicit Itemset(std::vector<ItemId> items);

  // Caller guarantees `items` is strictly ascending.
  static Itemset FromSorted(std::vector<ItemId> items);

  std::span<const ItemId> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  ItemId operator[](std::size_t i) const { return items_[i]; }
  ItemId back() const { return items_.back(); }

  bool contains(ItemId item) const;
  bool IsSubsetOf(const Itemset& other) const;
  bool Intersects(const Itemset& other) const;

  Itemset With(ItemId item) const;
  Itemset Without(ItemId item) const;
  Itemset Union(const Itemset& other) const;

  friend bool operator==(const Itemset&, const Itemset&) = default;
  // Lexicographic over ids.
  friend auto operator<=>(const Itemset& a, const Itemset& b) {
    return a.items_ <=> b.items_;
  }

 private:
  std::vector<ItemId> items_;
};

// Canonical byte encoding (little-endian 32-bit ids). Used as a hash key.
std::string EncodeKey(std::span<const ItemId> items);

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const;
};

// Fixed-width bitset over transaction indices.
class Tidset {
 public:
  Tidset() = default;
  explicit Tidset(std::size_t n_bits, bool filled = false);

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  std::size_t bits() const { return n_bits_; }
  std::size_t count() const;

  Tidset& operator&=(const Tidset& other);
  friend Tidset operator&(Tidset a, const Tidset& b) { return a &= b; }
  friend bool operator==(const Tidset&, const Tidset&) = default;

  // Writes `a & b` into `out` (which is resized) and returns its popcount.
  static std::size_t IntersectInto(const Tidset& a, const Tidset& b,
                                   Tidset& out);
  static std::size_t IntersectionCount(const Tidset& a, const Tidset& b);

 private:
  std::size_t n_bits_ = 0;
  std::vector<std::uint64_t> words_;
};

// The encoded case database. Immutable after construction; every accessor is
// a pure read and safe to share across threads.
class TransactionStore {
 public:
  // Validates: unique (feature, bin) pairs, exactly one positive and one
  // negative target item, transactions canonical with ids in range, one
  // target item and at most one item per feature in each transaction.
  TransactionStore(std::vector<ItemMeta> vocabulary,
                   std::vector<Itemset> transactions);

  const std::vector<ItemMeta>& vocabulary() const { return vocabulary_; }
  const ItemMeta& meta(ItemId id) const;
  const std::vector<Itemset>& transactions() const { return transactions_; }
  std::size_t size() const { return transactions_.size(); }
  std::size_t vocabulary_size() const { return vocabulary_.size(); }

  ItemId positive_target() const { return positive_; }
  ItemId negative_target() const { return negative_; }
  std::optional<ItemId> Find(const std::string& feature,
                             const std::string& bin) const;

  // Transactions containing `item`.
  const Tidset& tidset(ItemId item) const;

  // Number of transactions that contain every item of `s`.
  std::uint64_t Count(const Itemset& s) const;

  void CheckValid(const Itemset& s) const;

 private:
  std::vector<ItemMeta> vocabulary_;
  std::vector<Itemset> transactions_;
  std::vector<Tidset> vertical_;
  ItemId positive_{};
  ItemId negative_{};
};

// Support as a fraction of the store size, computed in double precision from
// the exact count. Throws InputError for ids outside the vocabulary.
double Support(const TransactionStore& store, const Itemset& s);

// Supp(A ∪ C) / Supp(A). Throws UndefinedMeasureError when Supp(A) = 0 and
// InputError when A and C intersect.
double Confidence(const TransactionStore& store, const Itemset& antecedent,
                  const Itemset& consequent);

// Conf(A → C) / Supp(C). Throws UndefinedMeasureError when either side has
// zero support.
double Lift(const TransactionStore& store, const Itemset& antecedent,
            const Itemset& consequent);

// antecedent → {consequent}; support, confidence and lift are derived from the
// two counts and the store size.
struct Rule {
  Itemset antecedent;
  ItemId consequent;
  std::uint64_t joint_count = 0;
  std::uint64_t antecedent_count = 0;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;

  friend bool operator==(const Rule&, const Rule&) = default;
};

Rule MakeRule(Itemset antecedent, ItemId consequent, std::uint64_t joint_count,
              std::uint64_t antecedent_count, std::uint64_t consequent_count,
              std::uint64_t n);

}  // namespace ruleboost

template <>
struct std::hash<ruleboost::ItemId> {
  std::size_t operator()(ruleboost::ItemId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
