#pragma once

// Dominance cache for solved game states.
//
// For every fill state L the cache keeps a set of histories known to be won
// and a set known to be lost. A query for (L, H) is answered Won if some won
// H' satisfies history_leq(H', H), Lost if some lost H' satisfies
// history_leq(H, H'). With equal fill levels a larger history can only help
// the algorithm (more chances to prove a cheat), so both answers are sound.
//
// There is no eviction. An optional byte cap aborts the run instead.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "rogame/model.hpp"

namespace rogame {

enum class CacheAnswer { Won, Lost, Unknown };

// A history was inserted with both outcomes for the same fill state.
class CacheIntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The configured memory cap was exceeded.
class CacheMemoryExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CacheCounters {
  std::uint64_t queries = 0;
  std::uint64_t won_hits = 0;
  std::uint64_t lost_hits = 0;
  std::uint64_t insertions = 0;

  friend bool operator==(const CacheCounters&, const CacheCounters&) = default;
};

struct CacheOptions {
  // On insert, drop stored histories made redundant by the new one.
  bool prune_dominated = false;
  // Abort with CacheMemoryExceeded once the estimated footprint passes this.
  std::optional<std::size_t> max_bytes;
};

class DominanceCache {
 public:
  explicit DominanceCache(CacheOptions options = {}) : options_(options) {}

  CacheAnswer query(const FillState& fill, const History& history);

  // Records a recursively evaluated state. Throws CacheIntegrityError if the
  // history is already stored with the opposite outcome.
  void insert(const FillState& fill, const History& history, bool won);

  const CacheCounters& counters() const noexcept { return counters_; }
  std::size_t distinct_keys() const noexcept { return table_.size(); }
  std::size_t stored_histories() const noexcept { return stored_; }
  std::size_t peak_stored_histories() const noexcept { return peak_stored_; }
  std::size_t approx_bytes() const noexcept { return bytes_; }

 private:
  struct Entry {
    std::set<History> won;
    std::set<History> lost;
  };

  static std::size_t footprint(const History& history) noexcept;
  void erase_from(std::set<History>& set, const History& history, bool won);

  CacheOptions options_;
  std::unordered_map<FillState, Entry, FillStateHash> table_;
  CacheCounters counters_;
  std::size_t stored_ = 0;
  std::size_t peak_stored_ = 0;
  std::size_t bytes_ = 0;
};

}  // namespace rogame
