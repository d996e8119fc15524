#include "rogame/certificate.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"
#include "rogame/packing.hpp"
#include "rogame/solver.hpp"

namespace rogame {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::optional<TerminalReason> parse_reason(std::string_view text) {
  for (auto reason :
       {TerminalReason::VolumeExceeded, TerminalReason::EmptiestBin, TerminalReason::NoItems}) {
    if (to_string(reason) == text) return reason;
  }
  return std::nullopt;
}

// Guard that ends the game at this fill state, if any, checked in the order
// volume, emptiest bin, no items.
std::optional<TerminalReason> terminal_for(const Params& params, const FillState& fill) {
  const int sum = fill.sum();
  if (sum >= params.volume()) return TerminalReason::VolumeExceeded;
  const int remaining = params.volume() - sum - 1;
  if (remaining + fill.min() < params.s) return TerminalReason::EmptiestBin;
  if (std::min(remaining, params.k) <= 0) return TerminalReason::NoItems;
  return std::nullopt;
}

// The adversary's options at a non-terminal fill state, enumerated from the
// game rules for the verifier.
std::vector<Item> adversary_items(const Params& params, const FillState& fill) {
  const int limit = std::min(params.volume() - fill.sum() - 1, params.k);
  const std::uint32_t all_ones = (1U << params.m) - 1U;
  std::vector<Item> items;
  for (int c = 0; c < limit; ++c) {
    if (c == 0) {
      items.push_back(Item::from_rank(0, all_ones, params.m));
      continue;
    }
    for (std::uint32_t rank = 0; rank <= all_ones; ++rank) {
      items.push_back(Item::from_rank(c, rank, params.m));
    }
  }
  return items;
}

bool cheat_is_infeasible(const Params& params, const std::vector<int>& classes) {
  if (classes.empty()) return false;
  if (params.k == 1) return true;
  return !fits_exact({classes, std::vector<int>(static_cast<std::size_t>(params.m), params.k - 1)});
}

template <typename T>
T require(const json& object, const char* key, json::value_t type) {
  auto it = object.find(key);
  if (it == object.end()) throw CertificateFormatError(std::string("missing field '") + key + "'");
  const bool ok = it->type() == type ||
                  (type == json::value_t::number_integer && it->is_number_unsigned());
  if (!ok) throw CertificateFormatError(std::string("field '") + key + "' has the wrong type");
  return it->get<T>();
}

void require_keys(const json& object, std::initializer_list<std::string_view> keys,
                  std::string_view where) {
  if (!object.is_object()) throw CertificateFormatError(std::string(where) + " is not an object");
  for (const auto& [key, _] : object.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw CertificateFormatError("unexpected field '" + key + "' in " + std::string(where));
    }
  }
  if (object.size() != keys.size()) {
    throw CertificateFormatError("missing field in " + std::string(where));
  }
}

VerifyResult fail(VerifyFailure failure, std::string state, std::string detail) {
  return {failure, std::move(state), std::move(detail)};
}

}  // namespace

std::string_view to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::VolumeExceeded: return "VolumeExceeded";
    case TerminalReason::EmptiestBin: return "EmptiestBin";
    case TerminalReason::NoItems: return "NoItems";
  }
  return "?";
}

std::string_view to_string(VerifyFailure failure) {
  switch (failure) {
    case VerifyFailure::None: return "None";
    case VerifyFailure::BadParams: return "BadParams";
    case VerifyFailure::BadRoot: return "BadRoot";
    case VerifyFailure::BadStateKey: return "BadStateKey";
    case VerifyFailure::MissingNode: return "MissingNode";
    case VerifyFailure::UnreachableNode: return "UnreachableNode";
    case VerifyFailure::WrongTerminal: return "WrongTerminal";
    case VerifyFailure::UnexpectedBranch: return "UnexpectedBranch";
    case VerifyFailure::MissingItem: return "MissingItem";
    case VerifyFailure::UnknownItem: return "UnknownItem";
    case VerifyFailure::IllegalPlacement: return "IllegalPlacement";
    case VerifyFailure::NonCanonicalBin: return "NonCanonicalBin";
    case VerifyFailure::ChildMismatch: return "ChildMismatch";
    case VerifyFailure::CheatMismatch: return "CheatMismatch";
    case VerifyFailure::CheatProofRejected: return "CheatProofRejected";
  }
  return "?";
}

Certificate extract_certificate(Solver& solver) {
  const Params& params = solver.params();
  const GameState root = GameState::initial(params);
  if (!solver.solve(root)) throw std::logic_error("extract_certificate: root is not won");

  Certificate cert;
  cert.params = params;
  cert.root = root.to_string();

  std::vector<GameState> pending{root};
  while (!pending.empty()) {
    GameState state = std::move(pending.back());
    pending.pop_back();
    auto key = state.to_string();
    if (cert.nodes.contains(key)) continue;

    StrategyNode node;
    node.terminal = terminal_for(params, state.fill);
    if (!node.terminal) {
      for (const auto& item : generate_items(params, state.fill)) {
        const History next_history = state.history.with(item.cls);
        Decision decision;
        for (int bin = 0; bin < params.m && decision.is_cheat(); ++bin) {
          if (bin > 0 && state.fill[bin] == state.fill[bin - 1] &&
              item.overflows(bin) == item.overflows(bin - 1)) {
            continue;
          }
          auto next_fill = place(params, state.fill, item, bin);
          if (!next_fill) continue;
          GameState child{std::move(*next_fill), next_history};
          if (solver.solve(child)) {
            decision.bin = bin;
            decision.child = child.to_string();
            if (!cert.nodes.contains(decision.child)) pending.push_back(std::move(child));
          }
        }
        if (decision.is_cheat()) {
          decision.cheat.assign(next_history.classes().begin(), next_history.classes().end());
          if (!cheat_is_infeasible(params, decision.cheat)) {
            throw std::logic_error("extract_certificate: no winning move for item " +
                                   item.to_string() + " at " + key);
          }
        }
        node.branches.emplace(item.to_string(), std::move(decision));
      }
    }
    cert.nodes.emplace(std::move(key), std::move(node));
  }
  return cert;
}

std::string serialize(const Certificate& certificate) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["params"] = {{"m", certificate.params.m},
                   {"k", certificate.params.k},
                   {"s", certificate.params.s}};
  doc["root"] = certificate.root;
  json nodes = json::object();
  for (const auto& [key, node] : certificate.nodes) {
    json entry;
    if (node.terminal) {
      entry["terminal"] = std::string(to_string(*node.terminal));
    } else {
      json branches = json::object();
      for (const auto& [item, decision] : node.branches) {
        if (decision.is_cheat()) {
          branches[item] = {{"cheat", decision.cheat}};
        } else {
          branches[item] = {{"bin", decision.bin}, {"child", decision.child}};
        }
      }
      entry["branches"] = std::move(branches);
    }
    nodes[key] = std::move(entry);
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(1) + '\n';
}

Certificate parse_certificate(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw CertificateFormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                                 e.what());
  }

  try {
    require_keys(doc, {"format_version", "params", "root", "nodes"}, "document");
    if (require<int>(doc, "format_version", json::value_t::number_integer) != kFormatVersion) {
      throw CertificateFormatError("unsupported format_version");
    }
    Certificate cert;
    const json& params = doc.at("params");
    require_keys(params, {"m", "k", "s"}, "params");
    cert.params.m = require<int>(params, "m", json::value_t::number_integer);
    cert.params.k = require<int>(params, "k", json::value_t::number_integer);
    cert.params.s = require<int>(params, "s", json::value_t::number_integer);
    cert.root = require<std::string>(doc, "root", json::value_t::string);

    const json& nodes = doc.at("nodes");
    if (!nodes.is_object()) throw CertificateFormatError("nodes is not an object");
    for (const auto& [key, entry] : nodes.items()) {
      StrategyNode node;
      if (entry.is_object() && entry.contains("terminal")) {
        require_keys(entry, {"terminal"}, "node " + key);
        auto reason = parse_reason(require<std::string>(entry, "terminal", json::value_t::string));
        if (!reason) throw CertificateFormatError("unknown terminal reason in node " + key);
        node.terminal = reason;
      } else {
        require_keys(entry, {"branches"}, "node " + key);
        const json& branches = entry.at("branches");
        if (!branches.is_object()) throw CertificateFormatError("branches of " + key);
        for (const auto& [item, body] : branches.items()) {
          Decision decision;
          if (body.is_object() && body.contains("cheat")) {
            require_keys(body, {"cheat"}, "branch " + item);
            const json& cheat = body.at("cheat");
            if (!cheat.is_array()) throw CertificateFormatError("cheat of " + item);
            for (const auto& c : cheat) {
              if (!c.is_number_integer()) throw CertificateFormatError("cheat entry of " + item);
              decision.cheat.push_back(c.get<int>());
            }
          } else {
            require_keys(body, {"bin", "child"}, "branch " + item);
            decision.bin = require<int>(body, "bin", json::value_t::number_integer);
            if (decision.bin < 0) throw CertificateFormatError("negative bin in " + item);
            decision.child = require<std::string>(body, "child", json::value_t::string);
          }
          node.branches.emplace(item, std::move(decision));
        }
      }
      cert.nodes.emplace(key, std::move(node));
    }
    return cert;
  } catch (const json::exception& e) {
    throw CertificateFormatError(std::string("bad certificate structure: ") + e.what());
  }
}

VerifyResult verify(const Certificate& certificate) {
  const Params& params = certificate.params;
  try {
    params.validate();
  } catch (const ModelError& e) {
    return fail(VerifyFailure::BadParams, "", e.what());
  }
  const auto expected_root = GameState::initial(params).to_string();
  if (certificate.root != expected_root) {
    return fail(VerifyFailure::BadRoot, certificate.root, "root must be " + expected_root);
  }

  std::set<std::string> visited{certificate.root};
  std::deque<std::string> queue{certificate.root};
  while (!queue.empty()) {
    const std::string key = std::move(queue.front());
    queue.pop_front();
    auto found = certificate.nodes.find(key);
    if (found == certificate.nodes.end()) {
      return fail(VerifyFailure::MissingNode, key, "no node for reachable state");
    }
    const StrategyNode& node = found->second;

    GameState state;
    try {
      state = parse_state(key, params);
    } catch (const ModelError& e) {
      return fail(VerifyFailure::BadStateKey, key, e.what());
    }

    const auto terminal = terminal_for(params, state.fill);
    if (node.terminal) {
      if (terminal != node.terminal) {
        return fail(VerifyFailure::WrongTerminal, key,
                    "recorded " + std::string(to_string(*node.terminal)) + " does not hold");
      }
      continue;
    }
    if (terminal) {
      return fail(VerifyFailure::UnexpectedBranch, key,
                  "state is terminal by " + std::string(to_string(*terminal)));
    }

    const auto items = adversary_items(params, state.fill);
    for (const auto& item : items) {
      if (!node.branches.contains(item.to_string())) {
        return fail(VerifyFailure::MissingItem, key, "no decision for item " + item.to_string());
      }
    }
    if (node.branches.size() != items.size()) {
      for (const auto& [text, _] : node.branches) {
        bool known = std::any_of(items.begin(), items.end(),
                                 [&](const Item& item) { return item.to_string() == text; });
        if (!known) return fail(VerifyFailure::UnknownItem, key, "unexpected item " + text);
      }
    }

    for (const auto& item : items) {
      const Decision& decision = node.branches.at(item.to_string());
      const History next_history = state.history.with(item.cls);
      if (decision.is_cheat()) {
        std::vector<int> expected(next_history.classes().begin(), next_history.classes().end());
        if (decision.cheat != expected) {
          return fail(VerifyFailure::CheatMismatch, key,
                      "cheat for " + item.to_string() + " must be " + render_multiset(expected));
        }
        if (!cheat_is_infeasible(params, expected)) {
          return fail(VerifyFailure::CheatProofRejected, key,
                      render_multiset(expected) + " fits the offline bins");
        }
        continue;
      }

      if (decision.bin >= params.m) {
        return fail(VerifyFailure::IllegalPlacement, key, "bin out of range for " + item.to_string());
      }
      auto next_fill = place(params, state.fill, item, decision.bin);
      if (!next_fill) {
        return fail(VerifyFailure::IllegalPlacement, key,
                    "item " + item.to_string() + " overflows bin " + std::to_string(decision.bin));
      }
      for (int lower = 0; lower < decision.bin; ++lower) {
        if (place(params, state.fill, item, lower) == next_fill) {
          return fail(VerifyFailure::NonCanonicalBin, key,
                      "bin " + std::to_string(lower) + " gives the same state for " +
                          item.to_string());
        }
      }
      const auto child = GameState{std::move(*next_fill), next_history}.to_string();
      if (child != decision.child) {
        return fail(VerifyFailure::ChildMismatch, key,
                    "item " + item.to_string() + " leads to " + child);
      }
      if (visited.insert(child).second) queue.push_back(child);
    }
  }

  for (const auto& [key, _] : certificate.nodes) {
    if (!visited.contains(key)) return fail(VerifyFailure::UnreachableNode, key, "orphan node");
  }
  return {};
}

}  // namespace rogame
