#include "coflow/optba.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace coflow {
namespace {

void check_shapes(const RoutingPlan& plan, std::span<const double> volumes) {
    if (plan.routes.size() != volumes.size()) throw Error("routing plan and volume list differ in length");
    for (double v : volumes) {
        if (!(v >= 0.0)) throw Error("flow volumes must be nonnegative");
    }
}

// Sum of volumes crossing each link.
std::vector<double> link_demand(const RoutingPlan& plan, std::span<const double> volumes, const Network& net) {
    std::vector<double> demand(net.link_count(), 0.0);
    for (std::size_t i = 0; i < plan.routes.size(); ++i) {
        if (volumes[i] <= 0.0) continue;
        for (LinkId l : plan.routes[i].links()) demand[static_cast<std::size_t>(l.value)] += volumes[i];
    }
    return demand;
}

void require_available(const Network& net, std::size_t flow, LinkId l) {
    if (net.available(l) <= kRateTolerance) {
        std::ostringstream msg;
        const Link& link = net.link(l);
        msg << "infeasible allocation: flow " << flow << " is routed through link " << l.value << " (" << link.u.value
            << "-" << link.v.value << ") which has no available bandwidth";
        throw Error(msg.str());
    }
}

}  // namespace

std::vector<std::vector<double>> proportional_share(const RoutingPlan& plan, std::span<const double> volumes,
                                                    const Network& net) {
    check_shapes(plan, volumes);
    const std::vector<double> demand = link_demand(plan, volumes, net);
    std::vector<std::vector<double>> share(plan.routes.size());
    for (std::size_t i = 0; i < plan.routes.size(); ++i) {
        if (volumes[i] <= 0.0) continue;
        for (LinkId l : plan.routes[i].links()) {
            share[i].push_back(volumes[i] / demand[static_cast<std::size_t>(l.value)] * net.available(l));
        }
    }
    return share;
}

std::vector<double> optba_allocate(const RoutingPlan& plan, std::span<const double> volumes, const Network& net) {
    check_shapes(plan, volumes);
    const std::vector<double> demand = link_demand(plan, volumes, net);
    std::vector<double> rate(plan.routes.size(), 0.0);
    for (std::size_t i = 0; i < plan.routes.size(); ++i) {
        if (volumes[i] <= 0.0) continue;
        double b = std::numeric_limits<double>::infinity();
        for (LinkId l : plan.routes[i].links()) {
            require_available(net, i, l);
            b = std::min(b, volumes[i] / demand[static_cast<std::size_t>(l.value)] * net.available(l));
        }
        rate[i] = b;
    }
    return rate;
}

Schedule optba_schedule(const Coflow& coflow, const RoutingPlan& plan, const Network& net) {
    const std::vector<double> volumes = coflow.residuals();
    const std::vector<double> rate = optba_allocate(plan, volumes, net);
    Schedule s;
    for (std::size_t i = 0; i < coflow.flows.size(); ++i) {
        if (volumes[i] <= 0.0) continue;
        s.flows.push_back(ScheduledFlow{coflow.flows[i].id, volumes[i], plan.routes[i], rate[i]});
    }
    return s;
}

}  // namespace coflow
