#pragma once

// Command-line front end. Exit codes are the machine contract:
//   0  algorithm wins / certificate valid
//   1  adversary wins / certificate invalid / no winning capacity in sweep
//   2  usage, model or certificate format error
//   3  inconclusive (node limit)
//   4  cache memory cap exceeded

#include <iosfwd>
#include <string>
#include <vector>

namespace rogame::cli {

inline constexpr int kExitWin = 0;
inline constexpr int kExitLoss = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitMemory = 4;

// Environment variable holding the dominance cache cap in bytes.
inline constexpr const char* kCacheCapEnv = "ROGAME_CACHE_MAX_BYTES";

// Instances with m * k above this need --i-have-days.
inline constexpr int kDeskScaleVolume = 48;

// "s/k (d.dddd)", the decimal rounded up so it is an upper bound.
std::string format_alpha(int s, int k);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rogame::cli
