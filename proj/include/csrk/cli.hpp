#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csrk/bench.hpp"

namespace csrk {

inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitError = 2;

/// Where the command line tool writes and how it times kernels.
struct CliHooks {
  std::ostream *out = nullptr; // default std::cout
  std::ostream *err = nullptr; // default std::cerr
  Clock clock = steady_seconds;
  KernelObserver observer;
};

/// Runs the `csrk` tool; args[0] is the program name. Returns the exit code:
/// 0 success, 1 verification failure, 2 usage or input error.
int run_cli(const std::vector<std::string> &args, const CliHooks &hooks = {});

} // namespace csrk
