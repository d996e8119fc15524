#include "rogame/solver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "rogame/packing.hpp"

namespace rogame {

void SolveConfig::validate() const {
  if (node_limit && *node_limit == 0) throw ModelError("node limit must be >= 1");
  if (workers < 1) throw ModelError("worker count must be >= 1");
}

SolveStats& SolveStats::operator+=(const SolveStats& other) {
  solve_calls += other.solve_calls;
  search_calls += other.search_calls;
  che_calls += other.che_calls;
  che_wins += other.che_wins;
  guard_volume += other.guard_volume;
  guard_emptiest += other.guard_emptiest;
  guard_no_items += other.guard_no_items;
  cache.queries += other.cache.queries;
  cache.won_hits += other.cache.won_hits;
  cache.lost_hits += other.cache.lost_hits;
  cache.insertions += other.cache.insertions;
  cache_keys += other.cache_keys;
  cache_histories += other.cache_histories;
  peak_stored_histories += other.peak_stored_histories;
  return *this;
}

void SolveStats::write(std::ostream& out, std::string_view prefix) const {
  auto line = [&](std::string_view key, std::uint64_t value) {
    out << prefix << key << '=' << value << '\n';
  };
  line("solve_calls", solve_calls);
  line("search_calls", search_calls);
  line("che_calls", che_calls);
  line("che_wins", che_wins);
  line("guard_volume", guard_volume);
  line("guard_emptiest", guard_emptiest);
  line("guard_no_items", guard_no_items);
  line("cache_queries", cache.queries);
  line("cache_won_hits", cache.won_hits);
  line("cache_lost_hits", cache.lost_hits);
  line("cache_insertions", cache.insertions);
  line("cache_keys", cache_keys);
  line("cache_histories", cache_histories);
  line("peak_stored_histories", peak_stored_histories);
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::AlgorithmWins: return "AlgorithmWins";
    case Outcome::AdversaryWins: return "AdversaryWins";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<Item> generate_items(const Params& params, const FillState& fill) {
  const int remaining = params.volume() - fill.sum() - 1;
  const int limit = std::min(remaining, params.k);
  std::vector<Item> items;
  if (limit <= 0) return items;
  const std::uint32_t all_ones = (1U << params.m) - 1U;
  items.push_back(Item::from_rank(0, all_ones, params.m));
  for (int c = 1; c < limit; ++c) {
    for (std::uint32_t rank = 0; rank <= all_ones; ++rank) {
      items.push_back(Item::from_rank(c, rank, params.m));
    }
  }
  return items;
}

Solver::Solver(const Params& params, const SolveConfig& config)
    : params_(params), config_(config), cache_(config.cache_options) {
  params_.validate();
  config_.validate();
}

SolveStats Solver::stats() const {
  SolveStats out = stats_;
  out.cache = cache_.counters();
  out.cache_keys = cache_.distinct_keys();
  out.cache_histories = cache_.stored_histories();
  out.peak_stored_histories = cache_.peak_stored_histories();
  return out;
}

void Solver::clear_node_limit() noexcept { config_.node_limit.reset(); }

bool Solver::solve(const GameState& state, int depth) {
  ++stats_.solve_calls;
  if (config_.node_limit && stats_.solve_calls > *config_.node_limit) {
    throw NodeLimitReached("node limit of " + std::to_string(*config_.node_limit) + " reached");
  }
  if (config_.trace && config_.trace_sink && depth <= config_.trace_depth) {
    *config_.trace_sink << "trace: depth=" << depth << ' ' << state.to_string() << '\n';
  }

  const int sum = state.fill.sum();
  if (sum >= params_.volume()) {
    ++stats_.guard_volume;
    return true;
  }
  const int remaining = params_.volume() - sum - 1;
  if (remaining + state.fill.min() < params_.s) {
    ++stats_.guard_emptiest;
    return true;
  }

  if (config_.cache_enabled) {
    switch (cache_.query(state.fill, state.history)) {
      case CacheAnswer::Won: return true;
      case CacheAnswer::Lost: return false;
      case CacheAnswer::Unknown: break;
    }
  }

  const bool won = evaluate(state, depth);
  if (config_.cache_enabled) cache_.insert(state.fill, state.history, won);
  return won;
}

bool Solver::evaluate(const GameState& state, int depth) {
  const auto items = generate_items(params_, state.fill);
  if (items.empty()) ++stats_.guard_no_items;
  for (const auto& item : items) {
    if (!search(item, state, depth)) return false;
  }
  return true;
}

bool Solver::search(const Item& item, const GameState& state, int depth) {
  ++stats_.search_calls;
  const History next_history = state.history.with(item.cls);
  for (int bin = 0; bin < params_.m; ++bin) {
    // Same level and same overflow bit as the previous bin: same outcome.
    if (bin > 0 && state.fill[bin] == state.fill[bin - 1] &&
        item.overflows(bin) == item.overflows(bin - 1)) {
      continue;
    }
    auto next_fill = place(params_, state.fill, item, bin);
    if (!next_fill) continue;
    if (solve({std::move(*next_fill), next_history}, depth + 1)) return true;
  }
  return che_for(state.history, item);
}

bool Solver::che_for(const History& history, const Item& item) {
  ++stats_.che_calls;
  const History proof = config_.che_includes_current_item ? history.with(item.cls) : history;
  auto [it, fresh] = che_memo_.try_emplace(proof, false);
  if (fresh) it->second = che(proof, params_);
  if (it->second) ++stats_.che_wins;
  return it->second;
}

namespace {

SolveResult solve_parallel(const Params& params, const SolveConfig& config) {
  SolveResult result;
  const GameState root = GameState::initial(params);
  const auto root_sum = root.fill.sum();
  if (root_sum >= params.volume() || params.volume() - root_sum - 1 + root.fill.min() < params.s) {
    // The root is decided by a guard; nothing to split.
    Solver solver(params, config);
    solver.solve(root);
    result.outcome = Outcome::AlgorithmWins;
    result.stats = solver.stats();
    return result;
  }

  const auto items = generate_items(params, root.fill);
  const int workers = std::min<int>(config.workers, static_cast<int>(items.size()));
  std::atomic<bool> lost{false};
  std::atomic<bool> stop{false};
  std::atomic<bool> limited{false};
  std::mutex mutex;
  std::exception_ptr failure;
  std::vector<SolveStats> stats(static_cast<std::size_t>(workers));

  {
    std::vector<std::jthread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        SolveConfig local = config;
        local.workers = 1;
        Solver solver(params, local);
        try {
          for (std::size_t i = static_cast<std::size_t>(w); i < items.size() && !stop;
               i += static_cast<std::size_t>(workers)) {
            if (!solver.search(items[i], root, 0)) {
              lost = true;
              stop = true;
            }
          }
        } catch (const NodeLimitReached&) {
          limited = true;
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          stop = true;
        }
        stats[static_cast<std::size_t>(w)] = solver.stats();
      });
    }
  }
  if (failure && !lost) std::rethrow_exception(failure);

  ++result.stats.solve_calls;  // the root itself
  for (const auto& s : stats) result.stats += s;
  if (lost) {
    result.outcome = Outcome::AdversaryWins;
  } else if (limited) {
    result.outcome = Outcome::Inconclusive;
  } else {
    result.outcome = Outcome::AlgorithmWins;
  }
  return result;
}

}  // namespace

SolveResult solve_instance(const Params& params, const SolveConfig& config) {
  params.validate();
  config.validate();

  if (config.workers > 1) {
    SolveResult result = solve_parallel(params, config);
    if (result.outcome == Outcome::AlgorithmWins && config.record_certificate) {
      SolveConfig serial = config;
      serial.workers = 1;
      serial.node_limit.reset();
      serial.trace = false;
      Solver solver(params, serial);
      solver.solve(GameState::initial(params));
      result.certificate = extract_certificate(solver);
    }
    return result;
  }

  SolveResult result;
  Solver solver(params, config);
  bool won = false;
  try {
    won = solver.solve(GameState::initial(params));
  } catch (const NodeLimitReached&) {
    result.outcome = Outcome::Inconclusive;
    result.stats = solver.stats();
    return result;
  }
  result.outcome = won ? Outcome::AlgorithmWins : Outcome::AdversaryWins;
  result.stats = solver.stats();
  if (won && config.record_certificate) {
    solver.clear_node_limit();
    result.certificate = extract_certificate(solver);
  }
  return result;
}

SweepResult minimal_capacity(int m, int k, const SolveConfig& config) {
  SweepResult sweep;
  for (int s = k; s <= 2 * k; ++s) {
    auto result = solve_instance(Params{m, k, s}, config);
    const auto outcome = result.outcome;
    sweep.steps.push_back({s, std::move(result)});
    if (outcome == Outcome::Inconclusive) {
      sweep.inconclusive = true;
      break;
    }
    if (outcome == Outcome::AlgorithmWins) {
      sweep.minimal_s = s;
      break;
    }
  }
  return sweep;
}

}  // namespace rogame
