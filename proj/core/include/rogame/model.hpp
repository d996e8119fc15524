#pragma once

// Integer abstraction of the online bin stretching game.
//
// Sizes are scaled by the granularity k: offline bins have size k, online
// bins have capacity s. An item of class c has real size in (c, c+1]; a bin
// with fill level l > 0 holds strictly more than l. Only integer levels and
// classes are ever stored.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rogame {

// Thrown whenever a value violates the game model (bad params, wrong length,
// out-of-range bin, ...).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Largest supported bin count. The item universe has (k-1) * 2^m + 1 members,
// so anything beyond this is far outside what the search can handle anyway.
inline constexpr int kMaxBins = 16;

struct Params {
  int m = 2;  // bins
  int k = 1;  // granularity, offline bin size
  int s = 1;  // online bin capacity; a level >= s is lost

  // Total offline volume budget.
  int volume() const noexcept { return m * k; }

  // Throws ModelError unless 2 <= m <= kMaxBins, k >= 1 and s >= k.
  void validate() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// Online bin fill levels, stored non-increasing so permutations of the same
// levels are one value.
class FillState {
 public:
  FillState() = default;

  // All-zero state for m bins.
  static FillState empty(int m);

  std::span<const int> levels() const noexcept { return levels_; }
  int size() const noexcept { return static_cast<int>(levels_.size()); }
  int operator[](int bin) const { return levels_.at(static_cast<std::size_t>(bin)); }

  int sum() const noexcept;
  // Level of the emptiest bin (the last one).
  int min() const noexcept { return levels_.empty() ? 0 : levels_.back(); }
  // Level of the fullest bin (the first one).
  int max() const noexcept { return levels_.empty() ? 0 : levels_.front(); }

  // "[3,1,0]"
  std::string to_string() const;

  auto operator<=>(const FillState&) const = default;

 private:
  friend FillState canonicalize(std::span<const int> levels, int m);
  explicit FillState(std::vector<int> sorted) : levels_(std::move(sorted)) {}

  std::vector<int> levels_;
};

// Sorts raw levels into canonical (non-increasing) order. Entries >= s are
// allowed here; callers decide about losses before storing a state.
// Throws ModelError on wrong length or negative entries.
FillState canonicalize(std::span<const int> levels, int m);

// Multiset of non-zero item classes seen so far, kept non-increasing.
class History {
 public:
  History() = default;

  // Any order; zeros are rejected (class-0 items are never recorded).
  static History from_classes(std::vector<int> classes);

  std::span<const int> classes() const noexcept { return classes_; }
  std::size_t size() const noexcept { return classes_.size(); }
  bool empty() const noexcept { return classes_.empty(); }
  int sum() const noexcept { return sum_; }
  int max() const noexcept { return classes_.empty() ? 0 : classes_.front(); }

  // Returns this history plus one item of class c. c == 0 leaves it unchanged.
  History with(int c) const;

  // Throws ModelError unless every class is in [1, k-1].
  void validate(const Params& params) const;

  // "[2,1,1]"
  std::string to_string() const;

  // Lexicographic over the non-increasing class list: the canonical
  // encoding order used for deterministic scans.
  bool operator==(const History& other) const noexcept { return classes_ == other.classes_; }
  auto operator<=>(const History& other) const noexcept { return classes_ <=> other.classes_; }

 private:
  std::vector<int> classes_;
  int sum_ = 0;
};

// An adversary item: a class plus the set of canonical bin positions on which
// it overflows. Only meaningful against the fill state it was generated for.
struct Item {
  int cls = 0;
  std::uint32_t overflow_mask = 0;  // bit i set: bin i gains cls + 1
  int bins = 0;

  bool overflows(int bin) const noexcept { return (overflow_mask >> bin) & 1U; }

  // Rank of the overflow vector read as a binary number, bin 0 most
  // significant. Matches the lexicographic order of the bit strings.
  std::uint32_t overflow_rank() const noexcept;

  // Builds an item from the rank above.
  static Item from_rank(int cls, std::uint32_t rank, int bins);

  // "2|10": class, then one overflow bit per bin.
  std::string to_string() const;

  friend bool operator==(const Item&, const Item&) = default;
};

// Parses "c|b1...bm". Throws ModelError on malformed text.
Item parse_item(std::string_view text, int bins);

// Result of putting an item into one bin: the new canonical fill, or nullopt
// when the bin would reach s (an online loss).
std::optional<FillState> place(const Params& params, const FillState& fill, const Item& item,
                               int bin);

struct GameState {
  FillState fill;
  History history;

  static GameState initial(const Params& params);

  // "L=[3,1,0];H=[2,1]"; the key used by certificates.
  std::string to_string() const;

  friend bool operator==(const GameState&, const GameState&) = default;
};

// Strict inverse of GameState::to_string. Throws ModelError unless the text
// is exactly a canonical rendering valid for params.
GameState parse_state(std::string_view text, const Params& params);

struct FillStateHash {
  std::size_t operator()(const FillState& fill) const noexcept;
};

struct HistoryHash {
  std::size_t operator()(const History& history) const noexcept;
};

}  // namespace rogame
