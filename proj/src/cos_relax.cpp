#include "coflow/cos_relax.hpp"

#include <algorithm>
#include <cmath>

#include "coflow/log.hpp"

namespace coflow {

CosRelaxModel build_cos_relax_cvx(const Network& net, const Coflow& coflow) {
    if (coflow.flows.empty()) throw Error("build_cos_relax_cvx: coflow has no flows");
    for (const Flow& f : coflow.flows) {
        if (!net.contains(f.src) || !net.contains(f.dst)) {
            throw Error("build_cos_relax_cvx: flow " + std::to_string(f.id) + " has an endpoint outside the network");
        }
        if (!(f.residual > 0.0)) {
            throw Error("build_cos_relax_cvx: flow " + std::to_string(f.id) + " has no residual volume");
        }
        if (f.src == f.dst) throw Error("build_cos_relax_cvx: flow " + std::to_string(f.id) + " is a self-loop");
    }
    const std::size_t n = coflow.flows.size();
    const std::size_t links = net.link_count();
    CosRelaxModel m;
    lp::LinearProgram& lp = m.program;

    m.t_var = lp.add_variable("T", 0.0, lp::kInfinity, 1.0);
    for (std::size_t i = 0; i < n; ++i) m.q_var.push_back(lp.add_variable("q_" + std::to_string(i)));
    m.p_plus.assign(n, std::vector<int>(links));
    m.p_minus.assign(n, std::vector<int>(links));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < links; ++l) {
            const std::string suffix = std::to_string(i) + "_" + std::to_string(l);
            m.p_plus[i][l] = lp.add_variable("pp_" + suffix);
            m.p_minus[i][l] = lp.add_variable("pm_" + suffix);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        lp.add_constraint("vol_" + std::to_string(i), {{m.q_var[i], 1.0}}, lp::Relation::kGreaterEqual,
                          coflow.flows[i].residual);
    }
    m.volume_rows = n;

    // Net inflow of flow i at `node`: +p on links oriented into the node, -p otherwise.
    auto inflow_terms = [&](std::size_t i, NodeId node) {
        std::vector<lp::Term> terms;
        for (const Adjacent& adj : net.neighbors(node)) {
            const auto l = static_cast<std::size_t>(adj.link.value);
            const double inc = net.link(adj.link).v == node ? 1.0 : -1.0;
            terms.push_back({m.p_plus[i][l], inc});
            terms.push_back({m.p_minus[i][l], -inc});
        }
        return terms;
    };
    for (std::size_t i = 0; i < n; ++i) {
        auto terms = inflow_terms(i, coflow.flows[i].src);
        terms.push_back({m.q_var[i], 1.0});
        lp.add_constraint("src_" + std::to_string(i), std::move(terms), lp::Relation::kEqual, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto terms = inflow_terms(i, coflow.flows[i].dst);
        terms.push_back({m.q_var[i], -1.0});
        lp.add_constraint("dst_" + std::to_string(i), std::move(terms), lp::Relation::kEqual, 0.0);
    }
    m.endpoint_rows = 2 * n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t v = 0; v < net.node_count(); ++v) {
            const NodeId node{static_cast<std::int32_t>(v)};
            if (node == coflow.flows[i].src || node == coflow.flows[i].dst) continue;
            lp.add_constraint("cons_" + std::to_string(i) + "_" + std::to_string(v), inflow_terms(i, node),
                              lp::Relation::kEqual, 0.0);
            ++m.conservation_rows;
        }
    }
    for (std::size_t l = 0; l < links; ++l) {
        std::vector<lp::Term> terms;
        terms.reserve(2 * n + 1);
        for (std::size_t i = 0; i < n; ++i) {
            terms.push_back({m.p_plus[i][l], 1.0});
            terms.push_back({m.p_minus[i][l], 1.0});
        }
        // Links the path search treats as absent carry nothing here either.
        double b = net.available(LinkId{static_cast<std::int32_t>(l)});
        if (b <= kRateTolerance) b = 0.0;
        terms.push_back({m.t_var, -b});
        lp.add_constraint("cap_" + std::to_string(l), std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
    m.capacity_rows = links;
    return m;
}

RelaxedSolution recover_relaxed(const CosRelaxModel& model, const lp::LpSolution& solution, const Coflow& coflow) {
    if (!solution.optimal()) {
        throw Error(std::string("recover_relaxed: relaxation not solved to optimality (") +
                    lp::status_name(solution.status) + ")");
    }
    RelaxedSolution out;
    out.t = solution.values.at(static_cast<std::size_t>(model.t_var));
    if (!(out.t > 0.0)) throw Error("recover_relaxed: degenerate instance, relaxed completion time is zero");
    const std::size_t n = coflow.flows.size();
    out.rate.resize(n);
    out.x.assign(n, std::vector<double>(model.p_plus.empty() ? 0 : model.p_plus[0].size(), 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const double q = solution.values[static_cast<std::size_t>(model.q_var[i])];
        if (!(q > 0.0)) throw Error("recover_relaxed: flow " + std::to_string(i) + " has zero relaxed volume");
        out.rate[i] = q / out.t;
        for (std::size_t l = 0; l < out.x[i].size(); ++l) {
            const double p = solution.values[static_cast<std::size_t>(model.p_plus[i][l])] -
                             solution.values[static_cast<std::size_t>(model.p_minus[i][l])];
            out.x[i][l] = p / q;
        }
    }
    return out;
}

namespace {

// Both halves of a split pair can be basic at a vertex when the capacity row
// is slack. Cancelling the common part keeps every balance row and only
// loosens the capacity rows.
void cancel_opposed(const CosRelaxModel& model, lp::LpSolution& sol) {
    if (!sol.optimal()) return;
    for (std::size_t i = 0; i < model.p_plus.size(); ++i) {
        for (std::size_t l = 0; l < model.p_plus[i].size(); ++l) {
            double& pp = sol.values[static_cast<std::size_t>(model.p_plus[i][l])];
            double& pm = sol.values[static_cast<std::size_t>(model.p_minus[i][l])];
            const double common = std::min(pp, pm);
            if (common > 0.0) {
                pp -= common;
                pm -= common;
            }
        }
    }
}

}  // namespace

RelaxedSolution solve_cos_relax(const Network& net, const Coflow& coflow, lp::LpSolution* raw, RelaxTieBreak tie_break) {
    const CosRelaxModel model = build_cos_relax_cvx(net, coflow);
    lp::LpSolution sol = lp::solve_lp(model.program);
    cancel_opposed(model, sol);
    if (sol.status == lp::Status::kInfeasible) {
        throw Unschedulable("relaxation infeasible: some flow has no route with available bandwidth");
    }
    RelaxedSolution relaxed = recover_relaxed(model, sol, coflow);
    if (tie_break == RelaxTieBreak::kLightRoutes) {
        // Among the optimal points, pick one that moves the least flow, with
        // links weighted by how little of them is free.
        lp::LinearProgram second = model.program;
        second.add_constraint("t_opt", {{model.t_var, 1.0}}, lp::Relation::kLessEqual,
                              relaxed.t * (1.0 + kTieBreakSlack));
        second.set_cost(model.t_var, 0.0);
        for (std::size_t l = 0; l < net.link_count(); ++l) {
            const LinkId id{static_cast<std::int32_t>(l)};
            const double w = 1.0 / std::max(net.available(id) / net.capacity(id), 1e-3);
            for (std::size_t i = 0; i < model.p_plus.size(); ++i) {
                second.set_cost(model.p_plus[i][l], w);
                second.set_cost(model.p_minus[i][l], w);
            }
        }
        lp::LpSolution refined = lp::solve_lp(second);
        cancel_opposed(model, refined);
        if (refined.optimal()) {
            const double t = relaxed.t;
            relaxed = recover_relaxed(model, refined, coflow);
            relaxed.t = t;
            sol = std::move(refined);
        } else {
            log_warn(std::string("relaxation tie-break failed (") + lp::status_name(refined.status) +
                     "), keeping the first optimal point");
        }
    }
    if (raw) *raw = std::move(sol);
    return relaxed;
}

}  // namespace coflow
