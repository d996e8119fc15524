#pragma once

// Multiset packing decisions: exact feasibility, first-fit-decreasing, and a
// brute-force reference. Also the two game-level uses of them: the cheat
// proof and the history comparison used by the dominance cache.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rogame/model.hpp"

namespace rogame {

struct PackingInstance {
  std::vector<int> items;       // sizes >= 1
  std::vector<int> capacities;  // capacities >= 1

  // Throws ModelError on a size or capacity below 1.
  void validate() const;
};

// True iff every item can be assigned to a bin without exceeding any
// capacity. Depth-first branch and bound, exact.
bool fits_exact(const PackingInstance& instance);

// First-fit-decreasing: items largest first, bins largest capacity first.
// True implies fits_exact; false proves nothing.
bool ffd_fits(const PackingInstance& instance);

inline constexpr std::size_t kBruteForceMaxItems = 10;

// Plain enumeration of every item -> bin assignment. Reference oracle for
// tests. Throws std::logic_error above max_items.
bool fits_bruteforce(const PackingInstance& instance,
                     std::size_t max_items = kBruteForceMaxItems);

// Cheat proof. True when the classes in history, taken at their infimal
// sizes, cannot be packed into m bins of size k-1: the real items are each
// strictly larger than their class, so they could not fit m bins of size k
// and the adversary has broken its promise.
bool che(const History& history, const Params& params);

// h1 is a sub-multiset of h2.
bool is_submultiset(const History& h1, const History& h2);

// Under-approximation of "the items of h1 fit into bins sized by the items
// of h2": sub-multiset, or first-fit-decreasing succeeds. Reflexive.
bool history_leq(const History& h1, const History& h2);

// "{4,3,3}" (sorted non-increasing).
std::string render_multiset(std::span<const int> values);

}  // namespace rogame
