#include <algorithm>
#include <random>

#include "doctest.h"
#include "rogame/model.hpp"

using namespace rogame;

TEST_CASE("params validation") {
  CHECK_NOTHROW((Params{2, 3, 4}.validate()));
  CHECK_NOTHROW((Params{2, 1, 1}.validate()));
  CHECK_THROWS_AS((Params{1, 3, 4}.validate()), ModelError);
  CHECK_THROWS_AS((Params{2, 0, 4}.validate()), ModelError);
  CHECK_THROWS_AS((Params{2, 4, 3}.validate()), ModelError);
  CHECK_THROWS_AS((Params{kMaxBins + 1, 3, 4}.validate()), ModelError);
  CHECK(Params{4, 22, 31}.volume() == 88);
}

TEST_CASE("canonicalize sorts non-increasing") {
  CHECK(canonicalize(std::vector{0, 3, 1}, 3).to_string() == "[3,1,0]");
  CHECK(canonicalize(std::vector{2, 2}, 2).to_string() == "[2,2]");
  CHECK_THROWS_AS((canonicalize(std::vector{1, 2}, 3)), ModelError);
  CHECK_THROWS_AS((canonicalize(std::vector{1, -1}, 2)), ModelError);
}

TEST_CASE("canonicalize is idempotent and permutation invariant") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> level(0, 9);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = 2 + trial % 5;
    std::vector<int> raw(static_cast<std::size_t>(m));
    for (auto& v : raw) v = level(rng);
    const FillState once = canonicalize(raw, m);
    CHECK(canonicalize(once.levels(), m) == once);
    std::shuffle(raw.begin(), raw.end(), rng);
    const FillState shuffled = canonicalize(raw, m);
    CHECK(shuffled == once);
    CHECK(FillStateHash{}(shuffled) == FillStateHash{}(once));
    CHECK(std::is_sorted(once.levels().begin(), once.levels().end(), std::greater<>()));
  }
}

TEST_CASE("history is an order-insensitive multiset without class 0") {
  auto a = History::from_classes({1, 3, 2, 3});
  auto b = History{}.with(3).with(1).with(3).with(2).with(0);
  CHECK(a == b);
  CHECK(HistoryHash{}(a) == HistoryHash{}(b));
  CHECK(a.to_string() == "[3,3,2,1]");
  CHECK(a.sum() == 9);
  CHECK(History{}.with(0).empty());
  CHECK_THROWS_AS((History::from_classes({0, 1})), ModelError);
  CHECK_THROWS_AS((History::from_classes({4}).validate(Params{2, 4, 5})), ModelError);
  CHECK_NOTHROW((History::from_classes({3}).validate(Params{2, 4, 5})));
}

TEST_CASE("item rendering and overflow rank") {
  auto item = Item::from_rank(2, 0b10, 2);
  CHECK(item.overflows(0));
  CHECK_FALSE(item.overflows(1));
  CHECK(item.to_string() == "2|10");
  CHECK(item.overflow_rank() == 0b10);
  CHECK(parse_item("2|10", 2) == item);
  CHECK(parse_item("0|111", 3).overflow_mask == 0b111);
  CHECK_THROWS_AS(parse_item("2|1", 2), ModelError);
  CHECK_THROWS_AS(parse_item("2|12", 2), ModelError);
  CHECK_THROWS_AS(parse_item("02|10", 2), ModelError);
  CHECK_THROWS_AS(parse_item("|10", 2), ModelError);
}

TEST_CASE("place") {
  const Params p{2, 3, 4};
  const auto fill21 = canonicalize(std::vector{2, 1}, 2);

  SUBCASE("reaching s is an online loss") {
    CHECK_FALSE(place(p, fill21, Item::from_rank(1, 0b10, 2), 0).has_value());
  }
  SUBCASE("class 0 overflow adds one") {
    auto next = place(p, FillState::empty(2), Item::from_rank(0, 0b11, 2), 0);
    REQUIRE(next);
    CHECK(next->to_string() == "[1,0]");
  }
  SUBCASE("no overflow adds the class only") {
    auto next = place(p, fill21, Item::from_rank(1, 0b00, 2), 1);
    REQUIRE(next);
    CHECK(next->to_string() == "[2,2]");
  }
  SUBCASE("bin out of range") {
    CHECK_THROWS_AS(place(p, fill21, Item::from_rank(1, 0, 2), 2), ModelError);
    CHECK_THROWS_AS(place(p, fill21, Item::from_rank(1, 0, 2), -1), ModelError);
  }
}

TEST_CASE("place raises the sum by class or class+1 and never stores a level >= s") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m = 2 + trial % 3;
    const int k = 1 + trial % 6;
    const int s = k + trial % (k + 1);
    const Params p{m, k, s};
    std::uniform_int_distribution<int> level(0, s - 1);
    std::vector<int> raw(static_cast<std::size_t>(m));
    for (auto& v : raw) v = level(rng);
    const auto fill = canonicalize(raw, m);
    const int cls = std::uniform_int_distribution<int>(0, k - 1)(rng);
    const auto rank = std::uniform_int_distribution<std::uint32_t>(0, (1U << m) - 1)(rng);
    const auto item = Item::from_rank(cls, rank, m);
    const int bin = std::uniform_int_distribution<int>(0, m - 1)(rng);
    auto next = place(p, fill, item, bin);
    if (!next) {
      CHECK(fill[bin] + cls + (item.overflows(bin) ? 1 : 0) >= s);
      continue;
    }
    const int delta = next->sum() - fill.sum();
    CHECK((delta == cls || delta == cls + 1));
    CHECK(next->max() < s);
  }
}

TEST_CASE("state strings") {
  const Params p{3, 4, 6};
  GameState state{canonicalize(std::vector{1, 5, 0}, 3), History::from_classes({1, 3})};
  CHECK(state.to_string() == "L=[5,1,0];H=[3,1]");
  CHECK(GameState::initial(p).to_string() == "L=[0,0,0];H=[]");
  CHECK(parse_state("L=[5,1,0];H=[3,1]", p) == state);
  CHECK(parse_state("L=[0,0,0];H=[]", p) == GameState::initial(p));
  CHECK_THROWS_AS(parse_state("L=[1,5,0];H=[3,1]", p), ModelError);   // not canonical
  CHECK_THROWS_AS(parse_state("L=[6,1,0];H=[3,1]", p), ModelError);   // level >= s
  CHECK_THROWS_AS(parse_state("L=[5,1,0];H=[4]", p), ModelError);     // class >= k
  CHECK_THROWS_AS(parse_state("L=[5,1];H=[]", p), ModelError);        // wrong length
  CHECK_THROWS_AS(parse_state("L=[5,1,0] H=[]", p), ModelError);
  CHECK_THROWS_AS(parse_state("L=[05,1,0];H=[]", p), ModelError);
  CHECK_THROWS_AS(parse_state("L=[5,,0];H=[]", p), ModelError);
}
