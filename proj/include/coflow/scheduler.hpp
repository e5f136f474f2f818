#pragma once
// Single entry point over the coflow schedulers.

#include <string_view>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/network.hpp"

namespace coflow {

enum class Algorithm { kCorba, kCorbaFast, kMinCctS, kMinCctM, kMinCctSM };

std::string_view algorithm_name(Algorithm algo);
/// Accepts corba, corba-fast, mincct-s, mincct-m, mincct-sm.
Algorithm parse_algorithm(std::string_view name);
std::vector<Algorithm> all_algorithms();

struct SchedulerOptions {
    int candidates = 5;  // K for the MinCCT variants
};

/// Schedules the coflow's active flows on `net`'s available bandwidth.
/// Throws Unschedulable when some flow cannot get bandwidth.
Schedule schedule_coflow(Algorithm algo, const Network& net, const Coflow& coflow, const SchedulerOptions& options = {});

}  // namespace coflow
