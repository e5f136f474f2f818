#include "coflow/coflow.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coflow {

Coflow Coflow::active() const {
    Coflow out{id, {}, arrival_time};
    for (const Flow& f : flows) {
        if (f.residual > 0.0) out.flows.push_back(f);
    }
    return out;
}

std::vector<double> Coflow::residuals() const {
    std::vector<double> out;
    out.reserve(flows.size());
    for (const Flow& f : flows) out.push_back(f.residual);
    return out;
}

void Coflow::validate(const Network& net) const {
    if (flows.empty()) throw Error("coflow " + std::to_string(id) + " has no flows");
    std::set<int> ids;
    for (const Flow& f : flows) {
        const std::string tag = "flow " + std::to_string(f.id) + ": ";
        if (!ids.insert(f.id).second) throw Error(tag + "duplicate flow id");
        if (!net.contains(f.src) || !net.contains(f.dst)) throw Error(tag + "endpoint not in network");
        if (f.src == f.dst) throw Error(tag + "source equals destination");
        if (net.role(f.src) != Role::kHost || net.role(f.dst) != Role::kHost) throw Error(tag + "endpoints must be hosts");
        if (!(f.volume > 0.0)) throw Error(tag + "volume must be positive");
        if (f.residual < 0.0 || f.residual > f.volume) throw Error(tag + "residual outside [0, volume]");
    }
}

Flow make_flow(int id, NodeId src, NodeId dst, double volume) { return Flow{id, src, dst, volume, volume}; }

Coflow random_coflow(const Network& net, int n, double beta, double v_max, Rng& rng) {
    if (n < 1) throw Error("random_coflow: N must be >= 1");
    if (beta < 0.0 || beta > 1.0) throw Error("random_coflow: beta must lie in [0, 1]");
    if (!(v_max > 0.0)) throw Error("random_coflow: v_max must be positive");
    const std::vector<NodeId> hosts = net.hosts();
    if (hosts.size() < 2) throw Error("random_coflow: network needs at least two hosts");
    std::uniform_int_distribution<std::size_t> pick(0, hosts.size() - 1);
    std::uniform_real_distribution<double> vol(beta * v_max, v_max);
    Coflow cf;
    for (int i = 0; i < n; ++i) {
        const NodeId src = hosts[pick(rng)];
        NodeId dst = src;
        while (dst == src) dst = hosts[pick(rng)];
        const double v = beta == 1.0 ? v_max : vol(rng);
        cf.flows.push_back(make_flow(i, src, dst, v));
    }
    return cf;
}

double Schedule::cct() const {
    double worst = 0.0;
    for (const ScheduledFlow& f : flows) worst = std::max(worst, f.completion_time());
    return worst;
}

double Schedule::allocated_bandwidth() const {
    double total = 0.0;
    for (const ScheduledFlow& f : flows) total += f.rate;
    return total;
}

double Schedule::avg_route_length() const {
    if (flows.empty()) return 0.0;
    double hops = 0.0;
    for (const ScheduledFlow& f : flows) hops += static_cast<double>(f.route.hops());
    return hops / static_cast<double>(flows.size());
}

void validate_schedule(const Schedule& schedule, const Coflow& coflow, const Network& net) {
    std::vector<double> load(net.link_count(), 0.0);
    std::set<int> seen;
    for (const ScheduledFlow& sf : schedule.flows) {
        const std::string tag = "flow " + std::to_string(sf.flow_id) + ": ";
        auto it = std::find_if(coflow.flows.begin(), coflow.flows.end(),
                               [&](const Flow& f) { return f.id == sf.flow_id; });
        if (it == coflow.flows.end()) throw Error(tag + "not part of the coflow");
        if (!seen.insert(sf.flow_id).second) throw Error(tag + "scheduled twice");
        if (!(sf.rate > 0.0)) throw Error(tag + "rate must be positive");
        if (sf.route.empty() || sf.route.source() != it->src || sf.route.destination() != it->dst) {
            throw Error(tag + "route endpoints do not match the flow");
        }
        // Re-derive links from nodes so a route built against another network is caught.
        const Path check = Path::from_nodes(net, sf.route.nodes());
        for (LinkId l : check.links()) load[static_cast<std::size_t>(l.value)] += sf.rate;
    }
    for (const Flow& f : coflow.flows) {
        if (f.residual > 0.0 && !seen.count(f.id)) throw Error("flow " + std::to_string(f.id) + ": not scheduled");
    }
    for (std::size_t l = 0; l < load.size(); ++l) {
        const double avail = net.available(LinkId{static_cast<std::int32_t>(l)});
        if (load[l] > avail + kRateTolerance) {
            std::ostringstream msg;
            msg << "link " << l << " over capacity: " << load[l] << " Gb/s scheduled, " << avail << " available";
            throw Error(msg.str());
        }
    }
}

bool is_feasible(const Schedule& schedule, const Coflow& coflow, const Network& net) {
    try {
        validate_schedule(schedule, coflow, net);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void allocate_schedule(Network& net, const Schedule& schedule) {
    std::size_t done = 0;
    try {
        for (; done < schedule.flows.size(); ++done) {
            net.allocate_along(schedule.flows[done].route, schedule.flows[done].rate);
        }
    } catch (...) {
        for (std::size_t i = 0; i < done; ++i) net.release_along(schedule.flows[i].route, schedule.flows[i].rate);
        throw;
    }
}

void release_schedule(Network& net, const Schedule& schedule) {
    for (const ScheduledFlow& f : schedule.flows) net.release_along(f.route, f.rate);
}

}  // namespace coflow
