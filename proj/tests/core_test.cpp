#include <random>
#include <sstream>

#include "doctest.h"
#include "ruleboost/core.hpp"
#include "ruleboost/csv.hpp"
#include "ruleboost/error.hpp"
#include "ruleboost/json_io.hpp"
#include "ruleboost/seed.hpp"
#include "support/fixtures.hpp"

using namespace ruleboost;
using testing::RelClose;
using testing::Toy;
using testing::ToyStore;

TEST_CASE("itemset canonicalization and set operations") {
  const Itemset s{ItemId{3}, ItemId{1}, ItemId{3}, ItemId{2}};
  REQUIRE(s.size() == 3);
  CHECK(s[0] == ItemId{1});
  CHECK(s.back() == ItemId{3});
  CHECK(s.contains(ItemId{2}));
  CHECK_FALSE(s.contains(ItemId{4}));
  CHECK(Itemset{ItemId{1}, ItemId{3}}.IsSubsetOf(s));
  CHECK_FALSE(Itemset{ItemId{0}}.IsSubsetOf(s));
  CHECK(Itemset{}.IsSubsetOf(s));
  CHECK(s.Intersects(Itemset{ItemId{2}, ItemId{9}}));
  CHECK_FALSE(s.Intersects(Itemset{ItemId{9}}));
  CHECK(s.Without(ItemId{2}) == Itemset{ItemId{1}, ItemId{3}});
  CHECK(s.With(ItemId{0}).size() == 4);
  CHECK(s.With(ItemId{1}) == s);
  CHECK(s.Union(Itemset{ItemId{7}}) == Itemset{ItemId{1}, ItemId{2}, ItemId{3}, ItemId{7}});
  CHECK(Itemset{ItemId{1}} < Itemset{ItemId{1}, ItemId{2}});
}

TEST_CASE("encode key is four little-endian bytes per item") {
  const std::vector<ItemId> ids = {ItemId{1}, ItemId{258}};
  const std::string key = EncodeKey(ids);
  REQUIRE(key.size() == 8);
  CHECK(static_cast<unsigned char>(key[0]) == 1);
  CHECK(static_cast<unsigned char>(key[4]) == 2);
  CHECK(static_cast<unsigned char>(key[5]) == 1);
}

TEST_CASE("tidset counting") {
  Tidset a(130), b(130);
  for (std::size_t i = 0; i < 130; i += 2) a.set(i);
  for (std::size_t i = 0; i < 130; i += 3) b.set(i);
  CHECK(a.count() == 65);
  CHECK(Tidset::IntersectionCount(a, b) == 22);
  Tidset out(130);
  CHECK(Tidset::IntersectInto(a, b, out) == 22);
  CHECK((a & b) == out);
  CHECK(Tidset(70, true).count() == 70);
}

TEST_CASE("toy store support") {
  const auto store = ToyStore();
  const Toy t;
  CHECK(Support(store, Itemset{t.a, t.M}) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(Support(store, Itemset{}) == 1.0);
  CHECK(store.Count(Itemset{t.a, t.b, t.M}) == 2);
  CHECK_THROWS_AS(Support(store, Itemset{ItemId{99}}), InputError);
}

TEST_CASE("support of a 600-of-1000 itemset") {
  std::vector<ItemMeta> vocab = {{"Composition", "solid", false, TargetClass::kNone},
                                 {"Label", "malignant", false, TargetClass::kPositive},
                                 {"Label", "benign", false, TargetClass::kNegative}};
  std::vector<Itemset> tx;
  for (int i = 0; i < 1000; ++i) {
    tx.push_back(i < 600 ? Itemset{ItemId{0}, ItemId{2}} : Itemset{ItemId{2}});
  }
  const TransactionStore store(vocab, tx);
  CHECK(Support(store, Itemset{ItemId{0}}) == 0.6);
}

TEST_CASE("toy store confidence and lift") {
  const auto store = ToyStore();
  const Toy t;
  const Itemset M{t.M};
  CHECK(RelClose(Confidence(store, Itemset{t.a}, M), 3.0 / 4.0));
  CHECK(RelClose(Confidence(store, Itemset{}, M), Support(store, M)));
  CHECK(Confidence(store, Itemset{t.a, t.b}, M) == 1.0);
  CHECK(RelClose(Lift(store, Itemset{t.a}, M), 1.25));
  CHECK(RelClose(Lift(store, Itemset{t.b}, M), 10.0 / 9.0));
  CHECK_THROWS_AS(Confidence(store, Itemset{t.a, t.B, t.M}, M), InputError);
}

TEST_CASE("undefined confidence and lift") {
  std::vector<ItemMeta> vocab = {{"X", "x", false, TargetClass::kNone},
                                 {"Label", "malignant", false, TargetClass::kPositive},
                                 {"Label", "benign", false, TargetClass::kNegative}};
  const TransactionStore store(vocab, {Itemset{ItemId{2}}, Itemset{ItemId{2}}});
  CHECK_THROWS_AS(Confidence(store, Itemset{ItemId{0}}, Itemset{ItemId{1}}),
                  UndefinedMeasureError);
  CHECK_THROWS_AS(Lift(store, Itemset{}, Itemset{ItemId{1}}), UndefinedMeasureError);
}

TEST_CASE("independent itemsets have lift 1") {
  std::vector<ItemMeta> vocab = {{"X", "x", false, TargetClass::kNone},
                                 {"Label", "malignant", false, TargetClass::kPositive},
                                 {"Label", "benign", false, TargetClass::kNegative}};
  std::vector<Itemset> tx = {Itemset{ItemId{0}, ItemId{1}}, Itemset{ItemId{0}, ItemId{2}},
                             Itemset{ItemId{1}}, Itemset{ItemId{2}}};
  const TransactionStore store(vocab, tx);
  CHECK(Lift(store, Itemset{ItemId{0}}, Itemset{ItemId{1}}) == 1.0);
}

TEST_CASE("store validation") {
  std::vector<ItemMeta> vocab = {{"X", "x", false, TargetClass::kNone},
                                 {"X", "y", false, TargetClass::kNone},
                                 {"Label", "malignant", false, TargetClass::kPositive},
                                 {"Label", "benign", false, TargetClass::kNegative}};
  SUBCASE("two items of one feature") {
    CHECK_THROWS_AS(TransactionStore(vocab, {Itemset{ItemId{0}, ItemId{1}, ItemId{2}}}),
                    InputError);
  }
  SUBCASE("no target item") {
    CHECK_THROWS_AS(TransactionStore(vocab, {Itemset{ItemId{0}}}), InputError);
  }
  SUBCASE("both target items") {
    CHECK_THROWS_AS(TransactionStore(vocab, {Itemset{ItemId{2}, ItemId{3}}}), InputError);
  }
  SUBCASE("id out of range") {
    CHECK_THROWS_AS(TransactionStore(vocab, {Itemset{ItemId{3}, ItemId{9}}}), InputError);
  }
  SUBCASE("duplicate vocabulary entry") {
    auto dup = vocab;
    dup[1].bin = "x";
    CHECK_THROWS_AS(TransactionStore(dup, {}), InputError);
  }
  SUBCASE("missing negative label") {
    auto bad = vocab;
    bad.pop_back();
    CHECK_THROWS_AS(TransactionStore(bad, {}), InputError);
  }
}

TEST_CASE("make rule derives the measures from counts") {
  const Rule r = MakeRule(Itemset{ItemId{0}}, ItemId{2}, 3, 4, 3, 5);
  CHECK(RelClose(r.support, 0.6));
  CHECK(RelClose(r.confidence, 0.75));
  CHECK(RelClose(r.lift, 1.25));
}

TEST_CASE("support is anti-monotone on random stores") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const auto store = testing::RandomStore(rng);
    const auto& vocab = store.vocabulary();
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(vocab.size() - 1));
    std::vector<ItemId> items;
    for (int i = 0; i < 4; ++i) items.push_back(ItemId{pick(rng)});
    const Itemset big(items);
    for (ItemId drop : big) {
      CHECK(store.Count(big.Without(drop)) >= store.Count(big));
    }
  }
}

TEST_CASE("csv parsing") {
  std::istringstream in("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"q\"\"t\"\r\n1,\n");
  const auto t = csv::Parse(in, "mem");
  REQUIRE(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][0] == "x, y");
  CHECK(t.rows[0][1] == "q\"t");
  CHECK(t.rows[1][1] == "");
  CHECK(t.ColumnIndex("b") == 1);
  CHECK(t.ColumnIndex("z") == -1);
  std::istringstream bad("a,b\n1,2,3\n");
  CHECK_THROWS_WITH_AS(csv::Parse(bad, "mem"), doctest::Contains("mem: line 2"), InputError);
  CHECK(csv::Quote("a,b") == "\"a,b\"");
  CHECK(csv::Quote("plain") == "plain");
}

TEST_CASE("json dump keeps full precision and integral floats") {
  io::Json doc = {{"b", 0.1}, {"a", 2.0}, {"n", 3}, {"x", std::nan("")}};
  CHECK(io::Dump(doc, -1) == R"({"a":2.0,"b":0.10000000000000001,"n":3,"x":null})");
  CHECK(io::Dump(io::Json::array({1, io::Json::array({2})}), 2, 1) == "[\n  1,\n  [2]\n]");
  CHECK(io::Sha256Hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("seed derivation separates purposes") {
  CHECK(DeriveSeed(1, "kmeans:Age") == DeriveSeed(1, "kmeans:Age"));
  CHECK(DeriveSeed(1, "kmeans:Age") != DeriveSeed(1, "kmeans:BMI"));
  CHECK(DeriveSeed(1, "kmeans:Age") != DeriveSeed(2, "kmeans:Age"));
}
