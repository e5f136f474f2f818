#include "coflow/baselines.hpp"

#include <limits>

#include "coflow/lp.hpp"
#include "coflow/optba.hpp"
#include "coflow/paths.hpp"

namespace coflow {

std::string_view candidate_rule_name(CandidateRule rule) {
    switch (rule) {
        case CandidateRule::kShortest: return "shortest";
        case CandidateRule::kMaxCapacity: return "max-capacity";
        case CandidateRule::kShortestMaxCapacity: return "shortest-max-capacity";
    }
    return "?";
}

std::size_t CandidateSet::assignment_count() const {
    std::size_t total = 1;
    for (const auto& p : paths) {
        if (p.empty()) return 0;
        if (total > std::numeric_limits<std::size_t>::max() / p.size()) return std::numeric_limits<std::size_t>::max();
        total *= p.size();
    }
    return total;
}

CandidateSet generate_candidates(const Network& net, const Coflow& coflow, CandidateRule rule, int k) {
    if (k < 1) throw Error("generate_candidates: K must be positive");
    CandidateSet set;
    set.rule = rule;
    for (const Flow& f : coflow.active().flows) {
        switch (rule) {
            case CandidateRule::kShortest: set.paths.push_back(k_shortest_paths(net, f.src, f.dst, k)); break;
            case CandidateRule::kMaxCapacity: set.paths.push_back(k_max_capacity_paths(net, f.src, f.dst, k)); break;
            case CandidateRule::kShortestMaxCapacity:
                set.paths.push_back(k_shortest_max_capacity_paths(net, f.src, f.dst, k));
                break;
        }
    }
    return set;
}

namespace {

Schedule exhaustive(const Network& net, const Coflow& active, const CandidateSet& cands,
                    std::vector<std::size_t>& chosen) {
    const std::size_t n = active.flows.size();
    std::vector<std::size_t> pick(n, 0);
    RoutingPlan plan;
    plan.routes.resize(n);
    Schedule best;
    double best_cct = std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t i = 0; i < n; ++i) plan.routes[i] = cands.paths[i][pick[i]];
        Schedule s = optba_schedule(active, plan, net);
        const double c = s.cct();
        if (c < best_cct) {
            best_cct = c;
            best = std::move(s);
            chosen = pick;
        }
        // Odometer over the candidate lists, last flow fastest.
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++pick[i] < cands.paths[i].size()) break;
            pick[i] = 0;
            if (i == 0) return best;
        }
    }
}

Schedule fractional(const Network& net, const Coflow& active, const CandidateSet& cands,
                    std::vector<std::size_t>& chosen, double& relaxed_t) {
    const std::size_t n = active.flows.size();
    lp::LinearProgram prog;
    const int t = prog.add_variable("T", 0.0, lp::kInfinity, 1.0);
    std::vector<std::vector<int>> q(n);
    std::vector<std::vector<lp::Term>> link_terms(net.link_count());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<lp::Term> vol;
        for (std::size_t j = 0; j < cands.paths[i].size(); ++j) {
            const int v = prog.add_variable("q_" + std::to_string(i) + "_" + std::to_string(j));
            q[i].push_back(v);
            vol.push_back({v, 1.0});
            for (LinkId l : cands.paths[i][j].links()) link_terms[static_cast<std::size_t>(l.value)].push_back({v, 1.0});
        }
        prog.add_constraint("vol_" + std::to_string(i), std::move(vol), lp::Relation::kGreaterEqual,
                            active.flows[i].residual);
    }
    for (std::size_t l = 0; l < link_terms.size(); ++l) {
        if (link_terms[l].empty()) continue;
        auto terms = std::move(link_terms[l]);
        terms.push_back({t, -net.available(LinkId{static_cast<std::int32_t>(l)})});
        prog.add_constraint("cap_" + std::to_string(l), std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
    const lp::LpSolution sol = lp::solve_lp(prog);
    if (!sol.optimal()) {
        throw Error(std::string("mincct: candidate relaxation failed (") + lp::status_name(sol.status) + ")");
    }
    relaxed_t = sol.values[static_cast<std::size_t>(t)];

    RoutingPlan plan;
    chosen.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double best = -1.0;
        for (std::size_t j = 0; j < q[i].size(); ++j) {
            const double v = sol.values[static_cast<std::size_t>(q[i][j])];
            if (v > best) {
                best = v;
                chosen[i] = j;
            }
        }
        plan.routes.push_back(cands.paths[i][chosen[i]]);
    }
    return optba_schedule(active, plan, net);
}

}  // namespace

Schedule mincct(const Network& net, const Coflow& coflow, const CandidateSet& candidates, MinCctTrace* trace) {
    const Coflow active = coflow.active();
    if (candidates.paths.size() != active.flows.size()) {
        throw Error("mincct: candidate set does not match the coflow's active flows");
    }
    if (active.flows.empty()) return {};
    for (std::size_t i = 0; i < active.flows.size(); ++i) {
        if (candidates.paths[i].empty()) {
            throw Unschedulable("mincct: flow " + std::to_string(active.flows[i].id) + " has no candidate route");
        }
    }
    MinCctTrace local;
    MinCctTrace& tr = trace ? *trace : local;
    if (candidates.assignment_count() <= kExhaustiveAssignmentLimit) {
        tr.exhaustive = true;
        return exhaustive(net, active, candidates, tr.chosen);
    }
    tr.exhaustive = false;
    return fractional(net, active, candidates, tr.chosen, tr.relaxed_t);
}

Schedule mincct(const Network& net, const Coflow& coflow, CandidateRule rule, int k, MinCctTrace* trace) {
    return mincct(net, coflow, generate_candidates(net, coflow, rule, k), trace);
}

}  // namespace coflow
