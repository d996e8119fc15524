#include "rogame/dominance_cache.hpp"

#include <string>

#include "rogame/packing.hpp"

namespace rogame {

namespace {

// Rough per-node overhead of std::set and std::unordered_map entries.
constexpr std::size_t kSetNodeBytes = 48;
constexpr std::size_t kMapEntryBytes = 96;

}  // namespace

std::size_t DominanceCache::footprint(const History& history) noexcept {
  return kSetNodeBytes + sizeof(History) + history.size() * sizeof(int);
}

CacheAnswer DominanceCache::query(const FillState& fill, const History& history) {
  ++counters_.queries;
  auto it = table_.find(fill);
  if (it == table_.end()) return CacheAnswer::Unknown;
  for (const auto& won : it->second.won) {
    if (history_leq(won, history)) {
      ++counters_.won_hits;
      return CacheAnswer::Won;
    }
  }
  for (const auto& lost : it->second.lost) {
    if (history_leq(history, lost)) {
      ++counters_.lost_hits;
      return CacheAnswer::Lost;
    }
  }
  return CacheAnswer::Unknown;
}

void DominanceCache::erase_from(std::set<History>& set, const History& history, bool won) {
  for (auto it = set.begin(); it != set.end();) {
    bool redundant = won ? history_leq(history, *it) : history_leq(*it, history);
    if (redundant && !(*it == history)) {
      bytes_ -= footprint(*it);
      --stored_;
      it = set.erase(it);
    } else {
      ++it;
    }
  }
}

void DominanceCache::insert(const FillState& fill, const History& history, bool won) {
  auto [it, fresh] = table_.try_emplace(fill);
  if (fresh) bytes_ += kMapEntryBytes + fill.levels().size() * sizeof(int);
  Entry& entry = it->second;
  auto& same = won ? entry.won : entry.lost;
  const auto& other = won ? entry.lost : entry.won;
  if (other.contains(history)) {
    throw CacheIntegrityError("history " + history.to_string() + " for fill " + fill.to_string() +
                              " stored as both won and lost");
  }
  ++counters_.insertions;
  if (options_.prune_dominated) erase_from(same, history, won);
  if (same.insert(history).second) {
    ++stored_;
    bytes_ += footprint(history);
    if (stored_ > peak_stored_) peak_stored_ = stored_;
  }
  if (options_.max_bytes && bytes_ > *options_.max_bytes) {
    throw CacheMemoryExceeded("dominance cache exceeded " + std::to_string(*options_.max_bytes) +
                              " bytes");
  }
}

}  // namespace rogame
