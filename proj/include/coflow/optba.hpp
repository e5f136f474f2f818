#pragma once
// Optimal bandwidth allocation for fixed routes.
//
// Each link's available bandwidth is split among the flows crossing it in
// proportion to their volumes; a flow then receives the smallest of its
// per-link shares. Every flow crossing the most loaded link finishes at the
// same time, which is the minimum achievable completion time for the routes.

#include <span>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/network.hpp"

namespace coflow {

struct RoutingPlan {
    std::vector<Path> routes;  // one per flow, in flow order

    /// Whether flow i's route crosses link l.
    bool crosses(std::size_t flow, LinkId l) const { return routes.at(flow).uses(l); }
};

/// For every flow, the proportional share it gets on each link of its route
/// (aligned with routes[i].links()). Zero-volume flows get empty rows.
std::vector<std::vector<double>> proportional_share(const RoutingPlan& plan, std::span<const double> volumes,
                                                    const Network& net);

/// Per-flow optimal rate: the minimum proportional share along the route.
/// Zero-volume flows get rate 0. Throws coflow::Error naming the link when a
/// flow is routed through a link without available bandwidth.
std::vector<double> optba_allocate(const RoutingPlan& plan, std::span<const double> volumes, const Network& net);

/// optba_allocate packaged as a Schedule over the coflow's residual volumes.
Schedule optba_schedule(const Coflow& coflow, const RoutingPlan& plan, const Network& net);

}  // namespace coflow
