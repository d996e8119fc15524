#include "rogame/model.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

namespace rogame {

namespace {

std::string render_list(std::span<const int> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(values[i]);
  }
  out += ']';
  return out;
}

// Parses "[a,b,c]" (possibly "[]") of non-negative integers.
std::vector<int> parse_list(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ModelError("expected bracketed list, got '" + std::string(text) + "'");
  }
  text = text.substr(1, text.size() - 2);
  std::vector<int> values;
  if (text.empty()) return values;
  while (true) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() || value < 0) {
      throw ModelError("bad number in list near '" + std::string(text) + "'");
    }
    text.remove_prefix(static_cast<std::size_t>(ptr - text.data()));
    values.push_back(value);
    if (text.empty()) break;
    if (text.front() != ',') throw ModelError("expected ',' in list");
    text.remove_prefix(1);
  }
  return values;
}

std::size_t hash_ints(std::span<const int> values) noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int v : values) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

void Params::validate() const {
  if (m < 2 || m > kMaxBins) {
    throw ModelError("bin count must be in [2, " + std::to_string(kMaxBins) + "], got " +
                     std::to_string(m));
  }
  if (k < 1) throw ModelError("granularity must be >= 1, got " + std::to_string(k));
  if (s < k) {
    throw ModelError("capacity must be >= granularity, got s=" + std::to_string(s) +
                     " k=" + std::to_string(k));
  }
}

FillState FillState::empty(int m) {
  return FillState(std::vector<int>(static_cast<std::size_t>(m), 0));
}

int FillState::sum() const noexcept { return std::accumulate(levels_.begin(), levels_.end(), 0); }

std::string FillState::to_string() const { return render_list(levels_); }

FillState canonicalize(std::span<const int> levels, int m) {
  if (static_cast<int>(levels.size()) != m) {
    throw ModelError("expected " + std::to_string(m) + " levels, got " +
                     std::to_string(levels.size()));
  }
  std::vector<int> sorted(levels.begin(), levels.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](int v) { return v < 0; })) {
    throw ModelError("fill levels must be non-negative");
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return FillState(std::move(sorted));
}

History History::from_classes(std::vector<int> classes) {
  if (std::any_of(classes.begin(), classes.end(), [](int c) { return c < 1; })) {
    throw ModelError("history classes must be >= 1");
  }
  std::sort(classes.begin(), classes.end(), std::greater<>());
  History h;
  h.sum_ = std::accumulate(classes.begin(), classes.end(), 0);
  h.classes_ = std::move(classes);
  return h;
}

History History::with(int c) const {
  if (c < 0) throw ModelError("negative item class");
  History h = *this;
  if (c == 0) return h;
  auto pos = std::upper_bound(h.classes_.begin(), h.classes_.end(), c, std::greater<>());
  h.classes_.insert(pos, c);
  h.sum_ += c;
  return h;
}

void History::validate(const Params& params) const {
  for (int c : classes_) {
    if (c < 1 || c > params.k - 1) {
      throw ModelError("history class " + std::to_string(c) + " outside [1, " +
                       std::to_string(params.k - 1) + "]");
    }
  }
}

std::string History::to_string() const { return render_list(classes_); }

std::uint32_t Item::overflow_rank() const noexcept {
  std::uint32_t rank = 0;
  for (int i = 0; i < bins; ++i) rank = (rank << 1) | (overflows(i) ? 1U : 0U);
  return rank;
}

Item Item::from_rank(int cls, std::uint32_t rank, int bins) {
  Item item{cls, 0, bins};
  for (int i = 0; i < bins; ++i) {
    if ((rank >> (bins - 1 - i)) & 1U) item.overflow_mask |= 1U << i;
  }
  return item;
}

std::string Item::to_string() const {
  std::string out = std::to_string(cls) + '|';
  for (int i = 0; i < bins; ++i) out += overflows(i) ? '1' : '0';
  return out;
}

Item parse_item(std::string_view text, int bins) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos || bar == 0) {
    throw ModelError("bad item '" + std::string(text) + "'");
  }
  int cls = 0;
  auto head = text.substr(0, bar);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), cls);
  if (ec != std::errc() || ptr != head.data() + head.size() || cls < 0) {
    throw ModelError("bad item class in '" + std::string(text) + "'");
  }
  auto bits = text.substr(bar + 1);
  if (static_cast<int>(bits.size()) != bins) {
    throw ModelError("item '" + std::string(text) + "' has wrong overflow width");
  }
  Item item{cls, 0, bins};
  for (int i = 0; i < bins; ++i) {
    if (bits[static_cast<std::size_t>(i)] == '1') {
      item.overflow_mask |= 1U << i;
    } else if (bits[static_cast<std::size_t>(i)] != '0') {
      throw ModelError("bad overflow bit in '" + std::string(text) + "'");
    }
  }
  if (item.to_string() != text) throw ModelError("non-canonical item '" + std::string(text) + "'");
  return item;
}

std::optional<FillState> place(const Params& params, const FillState& fill, const Item& item,
                               int bin) {
  if (bin < 0 || bin >= fill.size()) {
    throw ModelError("bin index " + std::to_string(bin) + " out of range");
  }
  if (item.cls < 0) throw ModelError("negative item class");
  std::vector<int> raw(fill.levels().begin(), fill.levels().end());
  auto& level = raw[static_cast<std::size_t>(bin)];
  level += item.cls + (item.overflows(bin) ? 1 : 0);
  if (level >= params.s) return std::nullopt;
  return canonicalize(raw, fill.size());
}

GameState GameState::initial(const Params& params) { return {FillState::empty(params.m), {}}; }

std::string GameState::to_string() const {
  return "L=" + fill.to_string() + ";H=" + history.to_string();
}

GameState parse_state(std::string_view text, const Params& params) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos || text.substr(0, 2) != "L=" ||
      text.substr(semi + 1, 2) != "H=") {
    throw ModelError("bad state string '" + std::string(text) + "'");
  }
  auto levels = parse_list(text.substr(2, semi - 2));
  auto classes = parse_list(text.substr(semi + 3));
  for (int l : levels) {
    if (l >= params.s) throw ModelError("fill level >= capacity in '" + std::string(text) + "'");
  }
  GameState state{canonicalize(levels, params.m), History::from_classes(std::move(classes))};
  state.history.validate(params);
  if (state.to_string() != text) {
    throw ModelError("non-canonical state string '" + std::string(text) + "'");
  }
  return state;
}

std::size_t FillStateHash::operator()(const FillState& fill) const noexcept {
  return hash_ints(fill.levels());
}

std::size_t HistoryHash::operator()(const History& history) const noexcept {
  return hash_ints(history.classes());
}

}  // namespace rogame
