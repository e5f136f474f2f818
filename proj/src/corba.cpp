#include "coflow/corba.hpp"

#include <cmath>

#include "coflow/log.hpp"
#include "coflow/paths.hpp"

namespace coflow {

RoutingPlan round_routes(const RelaxedSolution& relaxed, const Network& net, const Coflow& coflow) {
    if (relaxed.x.size() != coflow.flows.size()) throw Error("round_routes: relaxed solution does not match coflow");
    RoutingPlan plan;
    std::vector<double> width(net.link_count());
    for (std::size_t i = 0; i < coflow.flows.size(); ++i) {
        for (std::size_t l = 0; l < width.size(); ++l) width[l] = std::fabs(relaxed.x[i][l]);
        auto path = max_capacity_path(net, coflow.flows[i].src, coflow.flows[i].dst, width);
        if (!path) {
            throw Error("round_routes: relaxation carries no flow for flow " + std::to_string(coflow.flows[i].id) +
                        " (instance corrupt)");
        }
        plan.routes.push_back(std::move(*path));
    }
    return plan;
}

Schedule initial_allocation(const RoutingPlan& plan, const Coflow& coflow, const Network& net) {
    return optba_schedule(coflow, plan, net);
}

LocalSearch::LocalSearch(const Network& base, const Coflow& coflow, const Schedule& initial)
    : base_(base), schedule_(initial), residual_(base) {
    (void)coflow;
    for (const ScheduledFlow& f : schedule_.flows) volumes_.push_back(f.volume);
    allocate_schedule(residual_, schedule_);
}

std::vector<std::size_t> LocalSearch::critical_flows() const {
    const double cct = schedule_.cct();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < schedule_.flows.size(); ++i) {
        if (schedule_.flows[i].completion_time() >= cct * (1.0 - kCctRelativeTolerance)) out.push_back(i);
    }
    return out;
}

bool LocalSearch::try_move(std::size_t index) {
    // Undo record: the whole mutable state.
    const Schedule saved_schedule = schedule_;
    const Network saved_residual = residual_;
    auto revert = [&] {
        schedule_ = saved_schedule;
        residual_ = saved_residual;
        return false;
    };

    ScheduledFlow& flow = schedule_.flows.at(index);
    const double old_ct = flow.completion_time();

    std::vector<LinkId> congested;
    for (LinkId l : flow.route.links()) {
        if (residual_.available(l) <= kRateTolerance) congested.push_back(l);
    }
    residual_.release_along(flow.route, flow.rate);
    std::vector<double> width = residual_.available_all();
    for (LinkId l : congested) width[static_cast<std::size_t>(l.value)] = 0.0;

    auto candidate = max_capacity_path(residual_, flow.route.source(), flow.route.destination(), width);
    if (!candidate) return revert();
    flow.route = std::move(*candidate);

    // Moving one flow changes the shares on every link it enters or leaves.
    RoutingPlan plan;
    for (const ScheduledFlow& f : schedule_.flows) plan.routes.push_back(f.route);
    const std::vector<double> rates = optba_allocate(plan, volumes_, base_);
    for (std::size_t i = 0; i < schedule_.flows.size(); ++i) schedule_.flows[i].rate = rates[i];

    if (!(flow.completion_time() < old_ct * (1.0 - kCctRelativeTolerance))) return revert();

    residual_ = base_;
    allocate_schedule(residual_, schedule_);
    return true;
}

void LocalSearch::run(const LocalSearchOptions& options, LocalSearchStats* stats) {
    LocalSearchStats local;
    LocalSearchStats& st = stats ? *stats : local;
    const std::size_t cap =
        options.max_iterations ? options.max_iterations : kIterationsPerFlow * std::max<std::size_t>(1, schedule_.flows.size());
    st.cct_history.push_back(schedule_.cct());
    while (true) {
        if (st.iterations >= cap) {
            st.hit_iteration_cap = true;
            log_warn("local search hit its iteration cap of " + std::to_string(cap) + " (CCT " +
                     std::to_string(schedule_.cct()) + ")");
            break;
        }
        bool improved = false;
        for (std::size_t i : critical_flows()) {
            ++st.attempts;
            if (try_move(i)) {
                improved = true;
                ++st.accepted;
                break;
            }
        }
        if (!improved) break;
        ++st.iterations;
        st.cct_history.push_back(schedule_.cct());
        if (options.on_iteration) options.on_iteration(schedule_);
    }
}

Schedule local_search(const Schedule& schedule, const Network& net, const Coflow& coflow,
                      const LocalSearchOptions& options, LocalSearchStats* stats) {
    LocalSearch search(net, coflow, schedule);
    search.run(options, stats);
    return search.schedule();
}

namespace {

void require_routable(const Network& net, const Coflow& coflow) {
    for (const Flow& f : coflow.flows) {
        if (!shortest_max_capacity_path(net, f.src, f.dst)) {
            throw Unschedulable("flow " + std::to_string(f.id) + " has no route with available bandwidth");
        }
    }
}

}  // namespace

Schedule corba(const Network& net, const Coflow& coflow, CorbaTrace* trace, const CorbaOptions& options) {
    const Coflow active = coflow.active();
    if (active.flows.empty()) return {};
    require_routable(net, active);
    const RelaxedSolution relaxed = solve_cos_relax(net, active, nullptr, options.tie_break);
    const RoutingPlan plan = round_routes(relaxed, net, active);
    const Schedule initial = initial_allocation(plan, active, net);
    LocalSearchStats stats;
    Schedule result = local_search(initial, net, active, options.search, &stats);
    if (trace) {
        trace->relaxed_t = relaxed.t;
        trace->initial_cct = initial.cct();
        trace->initial = initial;
        trace->search = std::move(stats);
    }
    return result;
}

Schedule corba_fast(const Network& net, const Coflow& coflow, CorbaTrace* trace, const CorbaOptions& options) {
    const Coflow active = coflow.active();
    if (active.flows.empty()) return {};
    RoutingPlan plan;
    for (const Flow& f : active.flows) {
        auto path = shortest_max_capacity_path(net, f.src, f.dst);
        if (!path) throw Unschedulable("flow " + std::to_string(f.id) + " has no route with available bandwidth");
        plan.routes.push_back(std::move(*path));
    }
    const Schedule initial = initial_allocation(plan, active, net);
    LocalSearchStats stats;
    Schedule result = local_search(initial, net, active, options.search, &stats);
    if (trace) {
        trace->relaxed_t.reset();
        trace->initial_cct = initial.cct();
        trace->initial = initial;
        trace->search = std::move(stats);
    }
    return result;
}

}  // namespace coflow
