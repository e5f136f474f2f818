#pragma once
// Brute-force reference implementations. They share no code with the
// production algorithms beyond the data types and are only meant for small
// instances.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/lp.hpp"
#include "coflow/network.hpp"
#include "coflow/optba.hpp"

namespace coflow::oracle {

/// Every simple src->dst path whose links all have width > kRateTolerance.
/// An empty width span means "all links usable". Stops after `limit` paths.
std::vector<Path> all_simple_paths(const Network& net, NodeId src, NodeId dst, std::span<const double> width = {},
                                   std::size_t limit = 1'000'000);

/// The best path under key (-bottleneck, hops, node sequence), by enumeration.
std::optional<Path> widest_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width);

/// Per-link loads divided by availability, maximised: the CCT of the
/// proportional allocation, computed independently of optba_allocate.
double optba_cct_direct(const RoutingPlan& plan, std::span<const double> volumes, const Network& net);

/// Optimal CCT for fixed routes as an LP in (T, q_i):
///   min T  s.t.  q_i >= V_i,  sum_{i on l} q_i <= T * B_l.
double optba_lp(const RoutingPlan& plan, std::span<const double> volumes, const Network& net);

/// Optimum of a small LP by enumerating every basic solution (all choices
/// of n tight constraints/bounds). nullopt when infeasible. The LP must be
/// bounded with at most ~8 variables.
std::optional<double> vertex_enumeration(const lp::LinearProgram& lp, double tolerance = 1e-7);

struct ExhaustiveResult {
    double cct = 0.0;
    RoutingPlan plan;
    Schedule schedule;
    std::size_t assignments = 0;
};

/// Minimum CCT over every assignment of simple paths (each allocated with
/// the proportional rule). nullopt if some flow has no usable path.
std::optional<ExhaustiveResult> exhaustive_schedule(const Network& net, const Coflow& coflow,
                                                    std::size_t path_limit = 2000);

/// Connected random graph: a random spanning tree plus each remaining pair
/// with probability `extra`. Every node is a host. Capacities ~ U[cap_lo, cap_hi].
Network random_graph(int nodes, double extra, double cap_lo, double cap_hi, Rng& rng);

/// n flows between distinct random nodes of `net`, volumes ~ U[v_lo, v_hi].
Coflow random_small_coflow(const Network& net, int n, double v_lo, double v_hi, Rng& rng);

/// Three hosts and five routers: the two widest routes into the third host
/// share a link while a slightly narrower disjoint route exists.
struct DisjointExample {
    Network net;
    Coflow coflow;
};
DisjointExample disjoint_route_example();

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::size_t cases = 0;
    std::string detail;
};

/// The oracle-equivalence suites behind `coflowctl verify`.
std::vector<SuiteResult> run_suites(std::uint64_t seed, int instances);

}  // namespace coflow::oracle
