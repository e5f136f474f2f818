#include "coflow/scheduler.hpp"

#include <string>

#include "coflow/baselines.hpp"
#include "coflow/corba.hpp"

namespace coflow {

std::string_view algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::kCorba: return "corba";
        case Algorithm::kCorbaFast: return "corba-fast";
        case Algorithm::kMinCctS: return "mincct-s";
        case Algorithm::kMinCctM: return "mincct-m";
        case Algorithm::kMinCctSM: return "mincct-sm";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : all_algorithms()) {
        if (algorithm_name(a) == name) return a;
    }
    throw Error("unknown algorithm '" + std::string(name) + "'");
}

std::vector<Algorithm> all_algorithms() {
    return {Algorithm::kCorba, Algorithm::kCorbaFast, Algorithm::kMinCctS, Algorithm::kMinCctM, Algorithm::kMinCctSM};
}

Schedule schedule_coflow(Algorithm algo, const Network& net, const Coflow& coflow, const SchedulerOptions& options) {
    switch (algo) {
        case Algorithm::kCorba: return corba(net, coflow);
        case Algorithm::kCorbaFast: return corba_fast(net, coflow);
        case Algorithm::kMinCctS: return mincct(net, coflow, CandidateRule::kShortest, options.candidates);
        case Algorithm::kMinCctM: return mincct(net, coflow, CandidateRule::kMaxCapacity, options.candidates);
        case Algorithm::kMinCctSM: return mincct(net, coflow, CandidateRule::kShortestMaxCapacity, options.candidates);
    }
    throw Error("schedule_coflow: bad algorithm");
}

}  // namespace coflow
