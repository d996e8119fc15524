#pragma once

// Strategy certificates for algorithm wins.
//
// A certificate is a DAG of game states keyed by their canonical rendering
// ("L=[..];H=[..]"). Each node is either terminal, with the guard that ends
// the game, or maps every adversary item to a decision: a bin to place the
// item in, or a cheat proof (the classes that cannot fit m bins of size k-1).
//
// Serialized form (JSON, keys sorted, format_version 1):
//
//   {"format_version": 1,
//    "params": {"k": K, "m": M, "s": S},
//    "root": "L=[0,...,0];H=[]",
//    "nodes": {
//      "<state>": {"terminal": "VolumeExceeded" | "EmptiestBin" | "NoItems"},
//      "<state>": {"branches": {
//          "<item>": {"bin": B, "child": "<state>"},
//          "<item>": {"cheat": [c1, c2, ...]}}}}}
//
// <item> is "c|b1...bm": the class, then one overflow bit per canonical bin
// position (position 0 is the fullest bin). Cheat lists are non-increasing
// and equal the node history plus the item class (class 0 is not recorded).
//
// Class-0 items that do not overflow everywhere never appear: the strategy
// puts them into any bin where they do not overflow, which changes nothing.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rogame/model.hpp"

namespace rogame {

class Solver;

enum class TerminalReason { VolumeExceeded, EmptiestBin, NoItems };

std::string_view to_string(TerminalReason reason);

struct Decision {
  // Placement: bin >= 0 and child set. Cheat proof: bin < 0 and cheat set.
  int bin = -1;
  std::string child;
  std::vector<int> cheat;

  bool is_cheat() const noexcept { return bin < 0; }

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct StrategyNode {
  std::optional<TerminalReason> terminal;
  std::map<std::string, Decision> branches;

  friend bool operator==(const StrategyNode&, const StrategyNode&) = default;
};

struct Certificate {
  Params params;
  std::string root;
  std::map<std::string, StrategyNode> nodes;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Malformed certificate text or structure.
class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds a certificate from a solver that has just proven the root won.
// Cache hits are expanded by solving the child again so the certificate
// never relies on dominance reasoning. Throws std::logic_error if the
// root is not won.
Certificate extract_certificate(Solver& solver);

std::string serialize(const Certificate& certificate);

// Throws CertificateFormatError; JSON syntax errors carry the byte offset.
Certificate parse_certificate(std::string_view text);

enum class VerifyFailure {
  None,
  BadParams,
  BadRoot,
  BadStateKey,
  MissingNode,
  UnreachableNode,
  WrongTerminal,
  UnexpectedBranch,
  MissingItem,
  UnknownItem,
  IllegalPlacement,
  NonCanonicalBin,
  ChildMismatch,
  CheatMismatch,
  CheatProofRejected,
};

std::string_view to_string(VerifyFailure failure);

struct VerifyResult {
  VerifyFailure failure = VerifyFailure::None;
  std::string state;  // offending state key
  std::string detail;

  bool valid() const noexcept { return failure == VerifyFailure::None; }
};

// Checks the certificate against the game rules alone: item enumeration,
// guard arithmetic, placements via place(), cheat proofs via fits_exact().
VerifyResult verify(const Certificate& certificate);

}  // namespace rogame
