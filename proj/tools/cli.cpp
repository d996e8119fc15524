#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "rogame/certificate.hpp"
#include "rogame/solver.hpp"

namespace rogame::cli {

namespace {

struct SolveFlags {
  int bins = 0;
  int granularity = 0;
  int capacity = 0;
  bool no_cache = false;
  bool che_literal = false;
  bool prune_cache = false;
  bool stats = false;
  bool long_run = false;
  std::string cert_path;
  int trace_depth = -1;
  std::uint64_t node_limit = 0;
  int workers = 1;
};

void add_common_flags(CLI::App& cmd, SolveFlags& flags) {
  cmd.add_option("--bins", flags.bins, "Number of bins m")->required();
  cmd.add_option("--granularity", flags.granularity, "Granularity k")->required();
  cmd.add_flag("--no-cache", flags.no_cache, "Disable the dominance cache");
  cmd.add_flag("--che-literal", flags.che_literal,
               "Cheat proofs use the history without the rejected item");
  cmd.add_flag("--prune-cache", flags.prune_cache, "Drop dominated histories on insert");
  cmd.add_flag("--stats", flags.stats, "Print search counters as stat:key=value");
  cmd.add_option("--trace-depth", flags.trace_depth, "Trace solve() entries up to this depth");
  cmd.add_option("--node-limit", flags.node_limit, "Give up after this many solve() calls")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--workers", flags.workers, "Threads for the root split")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--i-have-days", flags.long_run, "Allow instances beyond desk scale");
}

SolveConfig make_config(const SolveFlags& flags, std::ostream& err) {
  SolveConfig config;
  config.cache_enabled = !flags.no_cache;
  config.che_includes_current_item = !flags.che_literal;
  config.cache_options.prune_dominated = flags.prune_cache;
  if (flags.node_limit > 0) config.node_limit = flags.node_limit;
  if (flags.trace_depth >= 0) {
    config.trace = true;
    config.trace_depth = flags.trace_depth;
    config.trace_sink = &err;
  }
  config.workers = flags.workers;
  if (const char* cap = std::getenv(kCacheCapEnv); cap != nullptr && *cap != '\0') {
    char* end = nullptr;
    const unsigned long long bytes = std::strtoull(cap, &end, 10);
    if (end == cap || *end != '\0' || bytes == 0) {
      throw ModelError(std::string(kCacheCapEnv) + " must be a positive byte count");
    }
    config.cache_options.max_bytes = static_cast<std::size_t>(bytes);
  }
  return config;
}

void check_scale(const Params& params, bool long_run) {
  if (!long_run && params.m * params.k > kDeskScaleVolume) {
    throw ModelError("m*k = " + std::to_string(params.m * params.k) +
                     " is beyond desk scale; pass --i-have-days to run it anyway");
  }
}

int exit_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::AlgorithmWins: return kExitWin;
    case Outcome::AdversaryWins: return kExitLoss;
    case Outcome::Inconclusive: return kExitInconclusive;
  }
  return kExitUsage;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_solve(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  const Params params{flags.bins, flags.granularity, flags.capacity};
  params.validate();
  check_scale(params, flags.long_run);
  SolveConfig config = make_config(flags, err);
  config.record_certificate = !flags.cert_path.empty();

  const auto start = std::chrono::steady_clock::now();
  const SolveResult result = solve_instance(params, config);
  const double elapsed = seconds_since(start);

  out << "params: m=" << params.m << " k=" << params.k << " s=" << params.s << '\n';
  out << "outcome: " << to_string(result.outcome) << '\n';
  out << "alpha: " << format_alpha(params.s, params.k) << '\n';
  out << "wall_time_s: " << std::fixed << std::setprecision(3) << elapsed << '\n';
  if (result.certificate) {
    std::ofstream file(flags.cert_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write certificate to " << flags.cert_path << '\n';
      return kExitUsage;
    }
    file << serialize(*result.certificate);
    out << "certificate: " << flags.cert_path << " (" << result.certificate->nodes.size()
        << " nodes)\n";
  }
  if (flags.stats) result.stats.write(out, "stat:");
  return exit_code(result.outcome);
}

int cmd_sweep(const SolveFlags& flags, std::ostream& out, std::ostream& err) {
  Params probe{flags.bins, flags.granularity, flags.granularity};
  probe.validate();
  check_scale(probe, flags.long_run);
  SolveConfig config = make_config(flags, err);
  config.record_certificate = false;

  const auto start = std::chrono::steady_clock::now();
  const SweepResult sweep = minimal_capacity(flags.bins, flags.granularity, config);
  out << "params: m=" << flags.bins << " k=" << flags.granularity << '\n';
  out << std::left << std::setw(6) << "s" << std::setw(16) << "alpha" << "outcome\n";
  SolveStats total;
  for (const auto& step : sweep.steps) {
    out << std::left << std::setw(6) << step.s << std::setw(16)
        << format_alpha(step.s, flags.granularity) << to_string(step.result.outcome) << '\n';
    total += step.result.stats;
  }
  out << "wall_time_s: " << std::fixed << std::setprecision(3) << seconds_since(start) << '\n';
  if (flags.stats) total.write(out, "stat:");
  if (sweep.inconclusive) {
    out << "minimal capacity: inconclusive\n";
    return kExitInconclusive;
  }
  if (!sweep.minimal_s) {
    out << "minimal capacity: none <= " << 2 * flags.granularity << '\n';
    return kExitLoss;
  }
  out << "minimal capacity: s*=" << *sweep.minimal_s
      << " alpha=" << format_alpha(*sweep.minimal_s, flags.granularity) << '\n';
  return kExitWin;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << path << '\n';
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  Certificate cert;
  try {
    cert = parse_certificate(buffer.str());
  } catch (const CertificateFormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitUsage;
  }
  const VerifyResult result = verify(cert);
  if (result.valid()) {
    out << "valid: m=" << cert.params.m << " k=" << cert.params.k << " s=" << cert.params.s
        << " nodes=" << cert.nodes.size() << '\n';
    return kExitWin;
  }
  out << "invalid: " << to_string(result.failure) << " at " << result.state << ": "
      << result.detail << '\n';
  return kExitLoss;
}

}  // namespace

std::string format_alpha(int s, int k) {
  const long long scaled = (static_cast<long long>(s) * 10000 + k - 1) / k;
  std::ostringstream text;
  text << s << '/' << k << " (" << scaled / 10000 << '.' << std::setw(4) << std::setfill('0')
       << scaled % 10000 << ')';
  return text.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decides the integer online bin stretching game and checks strategy certificates"};
  app.name("rogame");
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve one (m, k, s) instance");
  add_common_flags(*solve, solve_flags);
  solve->add_option("--capacity", solve_flags.capacity, "Online bin capacity s")->required();
  solve->add_option("--cert", solve_flags.cert_path, "Write a certificate here on a win");

  SolveFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "Find the smallest winning s in [k, 2k]");
  add_common_flags(*sweep, sweep_flags);

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate against the game rules");
  verify_cmd->add_option("--cert", verify_path, "Certificate file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_flags, out, err);
    if (*sweep) return cmd_sweep(sweep_flags, out, err);
    return cmd_verify(verify_path, out, err);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CacheMemoryExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitMemory;
  }
}

}  // namespace rogame::cli
