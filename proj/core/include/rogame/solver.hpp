#pragma once

// Minimax search over the integer game.
//
// solve(L, H) is true iff the algorithm wins from (L, H). The adversary picks
// items from a finite universe (class 0 overflowing everywhere, plus every
// class 1..k-1 with every overflow vector); the algorithm tries bins fullest
// first. When every placement loses, the algorithm still wins if the items
// seen so far cannot fit the offline bins (che).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "rogame/certificate.hpp"
#include "rogame/dominance_cache.hpp"
#include "rogame/model.hpp"

namespace rogame {

struct SolveConfig {
  bool cache_enabled = true;
  // Feed the rejected item into the cheat proof as well as the history.
  bool che_includes_current_item = true;
  // Abort as inconclusive after this many solve() calls.
  std::optional<std::uint64_t> node_limit;
  // Print solve() entries up to trace_depth to trace_sink.
  bool trace = false;
  int trace_depth = 0;
  std::ostream* trace_sink = nullptr;
  // Root items are split across this many threads, each with its own cache.
  int workers = 1;
  bool record_certificate = true;
  CacheOptions cache_options;

  // Throws ModelError on node_limit == 0 or workers < 1.
  void validate() const;
};

struct SolveStats {
  std::uint64_t solve_calls = 0;
  std::uint64_t search_calls = 0;
  std::uint64_t che_calls = 0;
  std::uint64_t che_wins = 0;
  std::uint64_t guard_volume = 0;
  std::uint64_t guard_emptiest = 0;
  std::uint64_t guard_no_items = 0;
  CacheCounters cache;
  std::uint64_t cache_keys = 0;
  std::uint64_t cache_histories = 0;
  std::uint64_t peak_stored_histories = 0;

  SolveStats& operator+=(const SolveStats& other);
  // One "key=value" per line, each prefixed with prefix.
  void write(std::ostream& out, std::string_view prefix = "") const;

  friend bool operator==(const SolveStats&, const SolveStats&) = default;
};

enum class Outcome { AlgorithmWins, AdversaryWins, Inconclusive };

std::string_view to_string(Outcome outcome);

// Thrown inside the search when the node limit is hit.
class NodeLimitReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adversary items for a fill state, ascending class then overflow rank.
// Only classes below min(m*k - sum(L) - 1, k) are offered.
std::vector<Item> generate_items(const Params& params, const FillState& fill);

class Solver {
 public:
  Solver(const Params& params, const SolveConfig& config);

  bool solve(const GameState& state, int depth = 0);
  bool search(const Item& item, const GameState& state, int depth = 0);

  // Cheat proof for a rejected item, memoized per history.
  bool che_for(const History& history, const Item& item);

  // Certificate extraction re-solves states and must not be cut short.
  void clear_node_limit() noexcept;

  const Params& params() const noexcept { return params_; }
  const SolveConfig& config() const noexcept { return config_; }
  const DominanceCache& cache() const noexcept { return cache_; }
  SolveStats stats() const;

 private:
  bool evaluate(const GameState& state, int depth);

  Params params_;
  SolveConfig config_;
  DominanceCache cache_;
  SolveStats stats_;
  std::unordered_map<History, bool, HistoryHash> che_memo_;
};

struct SolveResult {
  Outcome outcome = Outcome::Inconclusive;
  SolveStats stats;
  std::optional<Certificate> certificate;
};

// Solves from the all-empty state. Throws CacheMemoryExceeded if the cache cap
// is hit; a node limit yields Outcome::Inconclusive.
SolveResult solve_instance(const Params& params, const SolveConfig& config);

struct SweepResult {
  struct Step {
    int s = 0;
    SolveResult result;
  };
  std::vector<Step> steps;
  // Smallest winning capacity in [k, 2k], if any.
  std::optional<int> minimal_s;
  bool inconclusive = false;
};

// Ascending scan s = k, k+1, ..., 2k; stops at the first win.
SweepResult minimal_capacity(int m, int k, const SolveConfig& config);

}  // namespace rogame
