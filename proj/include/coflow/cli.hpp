#pragma once
// Command-line front end: topo, offline, online, sweep and verify.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "coflow/scheduler.hpp"

namespace coflow::cli {

/// "1..20", "3,5,8" or mixtures such as "1..4,10".
std::vector<std::uint64_t> parse_seeds(std::string_view text);
/// Comma-separated algorithm names.
std::vector<Algorithm> parse_algorithms(std::string_view text);

struct SweepSpec {
    std::string key;
    std::vector<std::string> values;
};
/// "key=lo..hi:step" (step defaults to 1). Integer bounds give integer values.
SweepSpec parse_sweep(std::string_view text);

/// Runs the tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coflow::cli
