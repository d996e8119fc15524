#include "rogame/packing.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_set>

namespace rogame {

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Items are placed largest first. Residual capacities are kept sorted
// non-increasing, so bins with equal residual are interchangeable and only
// the first of each run is tried. Failed (index, residuals) pairs are
// remembered for the duration of one call.
class ExactPacker {
 public:
  explicit ExactPacker(const PackingInstance& instance)
      : items_(instance.items), residual_(instance.capacities) {
    std::sort(items_.begin(), items_.end(), std::greater<>());
    std::sort(residual_.begin(), residual_.end(), std::greater<>());
    suffix_.assign(items_.size() + 1, 0);
    for (std::size_t i = items_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + items_[i];
  }

  bool run() {
    if (items_.empty()) return true;
    if (residual_.empty() || items_.front() > residual_.front()) return false;
    return place(0, residual_);
  }

 private:
  bool place(std::size_t index, const std::vector<int>& residual) {
    if (index == items_.size()) return true;

    const int smallest = items_.back();
    int usable = 0;
    for (int r : residual) {
      if (r >= smallest) usable += r;
    }
    if (suffix_[index] > usable) return false;

    std::vector<int> key;
    key.reserve(residual.size() + 1);
    key.push_back(static_cast<int>(index));
    key.insert(key.end(), residual.begin(), residual.end());
    if (failed_.contains(key)) return false;

    const int item = items_[index];
    int previous = -1;
    for (std::size_t j = 0; j < residual.size() && residual[j] >= item; ++j) {
      if (residual[j] == previous) continue;
      previous = residual[j];
      std::vector<int> next = residual;
      next[j] -= item;
      std::sort(next.begin(), next.end(), std::greater<>());
      if (place(index + 1, next)) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  std::vector<int> items_;
  std::vector<int> residual_;
  std::vector<int> suffix_;
  std::unordered_set<std::vector<int>, VectorHash> failed_;
};

}  // namespace

void PackingInstance::validate() const {
  if (std::any_of(items.begin(), items.end(), [](int x) { return x < 1; })) {
    throw ModelError("packing item sizes must be >= 1");
  }
  if (std::any_of(capacities.begin(), capacities.end(), [](int x) { return x < 1; })) {
    throw ModelError("packing capacities must be >= 1");
  }
}

bool fits_exact(const PackingInstance& instance) {
  instance.validate();
  return ExactPacker(instance).run();
}

bool ffd_fits(const PackingInstance& instance) {
  instance.validate();
  std::vector<int> items = instance.items;
  std::vector<int> residual = instance.capacities;
  std::sort(items.begin(), items.end(), std::greater<>());
  std::sort(residual.begin(), residual.end(), std::greater<>());
  for (int item : items) {
    auto bin = std::find_if(residual.begin(), residual.end(), [item](int r) { return r >= item; });
    if (bin == residual.end()) return false;
    *bin -= item;
  }
  return true;
}

bool fits_bruteforce(const PackingInstance& instance, std::size_t max_items) {
  instance.validate();
  const std::size_t n = instance.items.size();
  if (n > max_items) {
    throw std::logic_error("fits_bruteforce: " + std::to_string(n) + " items exceeds bound " +
                           std::to_string(max_items));
  }
  if (n == 0) return true;
  const std::size_t bins = instance.capacities.size();
  if (bins == 0) return false;

  // Odometer over bins^n assignments.
  std::vector<std::size_t> assignment(n, 0);
  std::vector<int> load(bins);
  while (true) {
    std::fill(load.begin(), load.end(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      load[assignment[i]] += instance.items[i];
      ok = load[assignment[i]] <= instance.capacities[assignment[i]];
    }
    if (ok) return true;
    std::size_t digit = 0;
    while (digit < n && ++assignment[digit] == bins) assignment[digit++] = 0;
    if (digit == n) return false;
  }
}

bool che(const History& history, const Params& params) {
  if (history.empty()) return false;
  // Bins of size 0 hold nothing.
  if (params.k == 1) return true;
  PackingInstance instance{{history.classes().begin(), history.classes().end()},
                           std::vector<int>(static_cast<std::size_t>(params.m), params.k - 1)};
  return !fits_exact(instance);
}

bool is_submultiset(const History& h1, const History& h2) {
  // Both sorted non-increasing.
  return std::includes(h2.classes().begin(), h2.classes().end(), h1.classes().begin(),
                       h1.classes().end(), std::greater<>());
}

bool history_leq(const History& h1, const History& h2) {
  // Both alternatives need the volume and the largest item to fit.
  if (h1.sum() > h2.sum() || h1.max() > h2.max()) return false;
  if (is_submultiset(h1, h2)) return true;
  return ffd_fits({{h1.classes().begin(), h1.classes().end()},
                   {h2.classes().begin(), h2.classes().end()}});
}

std::string render_multiset(std::span<const int> values) {
  std::vector<int> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::string out = "{";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(sorted[i]);
  }
  out += '}';
  return out;
}

}  // namespace rogame
