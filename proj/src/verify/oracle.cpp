#include "coflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "coflow/cos_relax.hpp"
#include "coflow/paths.hpp"

namespace coflow::oracle {
namespace {

bool usable(std::span<const double> width, LinkId l) {
    return width.empty() || width[static_cast<std::size_t>(l.value)] > kRateTolerance;
}

void dfs(const Network& net, NodeId at, NodeId dst, std::span<const double> width, std::vector<char>& seen,
         std::vector<NodeId>& stack, std::vector<Path>& out, std::size_t limit) {
    if (out.size() >= limit) return;
    if (at == dst) {
        out.push_back(Path::from_nodes(net, stack));
        return;
    }
    for (const Adjacent& adj : net.neighbors(at)) {
        const auto n = static_cast<std::size_t>(adj.node.value);
        if (seen[n] || !usable(width, adj.link)) continue;
        seen[n] = 1;
        stack.push_back(adj.node);
        dfs(net, adj.node, dst, width, seen, stack, out, limit);
        stack.pop_back();
        seen[n] = 0;
    }
}

double path_bottleneck(const Path& p, std::span<const double> width) {
    double b = std::numeric_limits<double>::infinity();
    for (LinkId l : p.links()) b = std::min(b, width[static_cast<std::size_t>(l.value)]);
    return b;
}

// Dense Gaussian elimination with partial pivoting; false when singular.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        }
        if (std::fabs(a[piv][c]) < 1e-10) return false;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

}  // namespace

std::vector<Path> all_simple_paths(const Network& net, NodeId src, NodeId dst, std::span<const double> width,
                                   std::size_t limit) {
    std::vector<Path> out;
    if (src == dst) return out;
    std::vector<char> seen(net.node_count(), 0);
    std::vector<NodeId> stack{src};
    seen[static_cast<std::size_t>(src.value)] = 1;
    dfs(net, src, dst, width, seen, stack, out, limit);
    return out;
}

std::optional<Path> widest_path(const Network& net, NodeId src, NodeId dst, std::span<const double> width) {
    std::optional<Path> best;
    double best_b = 0.0;
    for (Path& p : all_simple_paths(net, src, dst, width)) {
        const double b = path_bottleneck(p, width);
        if (!best || std::make_tuple(-b, p.hops()) < std::make_tuple(-best_b, best->hops()) ||
            (b == best_b && p.hops() == best->hops() && p.nodes() < best->nodes())) {
            best_b = b;
            best = std::move(p);
        }
    }
    return best;
}

double optba_cct_direct(const RoutingPlan& plan, std::span<const double> volumes, const Network& net) {
    std::vector<double> load(net.link_count(), 0.0);
    for (std::size_t i = 0; i < plan.routes.size(); ++i) {
        for (LinkId l : plan.routes[i].links()) load[static_cast<std::size_t>(l.value)] += volumes[i];
    }
    double cct = 0.0;
    for (std::size_t l = 0; l < load.size(); ++l) {
        if (load[l] == 0.0) continue;
        const double b = net.available(LinkId{static_cast<std::int32_t>(l)});
        if (b <= kRateTolerance) return std::numeric_limits<double>::infinity();
        cct = std::max(cct, load[l] / b);
    }
    return cct;
}

double optba_lp(const RoutingPlan& plan, std::span<const double> volumes, const Network& net) {
    lp::LinearProgram prog;
    const int t = prog.add_variable("T", 0.0, lp::kInfinity, 1.0);
    std::vector<int> q;
    for (std::size_t i = 0; i < plan.routes.size(); ++i) {
        q.push_back(prog.add_variable("q" + std::to_string(i)));
        prog.add_constraint("vol" + std::to_string(i), {{q.back(), 1.0}}, lp::Relation::kGreaterEqual, volumes[i]);
    }
    for (std::size_t l = 0; l < net.link_count(); ++l) {
        const LinkId id{static_cast<std::int32_t>(l)};
        std::vector<lp::Term> terms;
        for (std::size_t i = 0; i < plan.routes.size(); ++i) {
            if (plan.routes[i].uses(id)) terms.push_back({q[i], 1.0});
        }
        if (terms.empty()) continue;
        terms.push_back({t, -net.available(id)});
        prog.add_constraint("cap" + std::to_string(l), std::move(terms), lp::Relation::kLessEqual, 0.0);
    }
    const lp::LpSolution sol = lp::solve_lp(prog);
    if (!sol.optimal()) throw Error(std::string("optba_lp: ") + lp::status_name(sol.status));
    return sol.objective;
}

std::optional<double> vertex_enumeration(const lp::LinearProgram& prog, double tolerance) {
    const std::size_t n = prog.variable_count();
    // Rows as (a, b, is_equality) meaning a.x <= b or a.x == b.
    struct Row {
        std::vector<double> a;
        double b;
        bool eq;
    };
    std::vector<Row> rows;
    for (const lp::Constraint& c : prog.constraints()) {
        Row r{std::vector<double>(n, 0.0), c.rhs, c.relation == lp::Relation::kEqual};
        for (const lp::Term& t : c.terms) r.a[static_cast<std::size_t>(t.var)] += t.coef;
        if (c.relation == lp::Relation::kGreaterEqual) {
            for (double& v : r.a) v = -v;
            r.b = -r.b;
        }
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const lp::Variable& v = prog.variables()[j];
        if (std::isfinite(v.upper)) {
            Row r{std::vector<double>(n, 0.0), v.upper, false};
            r.a[j] = 1.0;
            rows.push_back(std::move(r));
        }
        if (std::isfinite(v.lower)) {
            Row r{std::vector<double>(n, 0.0), -v.lower, false};
            r.a[j] = -1.0;
            rows.push_back(std::move(r));
        }
    }
    std::vector<std::size_t> eqs, ineqs;
    for (std::size_t r = 0; r < rows.size(); ++r) (rows[r].eq ? eqs : ineqs).push_back(r);
    if (eqs.size() > n) return std::nullopt;
    const std::size_t pick = n - eqs.size();
    if (pick > ineqs.size()) return std::nullopt;

    std::optional<double> best;
    std::vector<char> mask(ineqs.size(), 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(pick), 1);
    do {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t r : eqs) {
            a.push_back(rows[r].a);
            b.push_back(rows[r].b);
        }
        for (std::size_t k = 0; k < ineqs.size(); ++k) {
            if (!mask[k]) continue;
            a.push_back(rows[ineqs[k]].a);
            b.push_back(rows[ineqs[k]].b);
        }
        std::vector<double> x;
        if (!solve_dense(a, b, x)) continue;
        bool feasible = true;
        for (const Row& r : rows) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < n; ++j) lhs += r.a[j] * x[j];
            const double scale = 1.0 + std::fabs(r.b);
            if (r.eq ? std::fabs(lhs - r.b) > tolerance * scale : lhs > r.b + tolerance * scale) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        double obj = 0.0;
        for (std::size_t j = 0; j < n; ++j) obj += prog.variables()[j].cost * x[j];
        if (!best || obj < *best) best = obj;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

std::optional<ExhaustiveResult> exhaustive_schedule(const Network& net, const Coflow& coflow, std::size_t path_limit) {
    const Coflow active = coflow.active();
    const std::vector<double> avail = net.available_all();
    std::vector<std::vector<Path>> options;
    for (const Flow& f : active.flows) {
        options.push_back(all_simple_paths(net, f.src, f.dst, avail, path_limit));
        if (options.back().empty()) return std::nullopt;
    }
    const std::vector<double> volumes = active.residuals();
    ExhaustiveResult best;
    best.cct = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(options.size(), 0);
    RoutingPlan plan;
    plan.routes.resize(options.size());
    while (true) {
        for (std::size_t i = 0; i < pick.size(); ++i) plan.routes[i] = options[i][pick[i]];
        ++best.assignments;
        const double c = optba_cct_direct(plan, volumes, net);
        if (c < best.cct) {
            best.cct = c;
            best.plan = plan;
        }
        std::size_t i = pick.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++pick[i] < options[i].size()) {
                done = false;
                break;
            }
            pick[i] = 0;
        }
        if (done) break;
    }
    best.schedule = optba_schedule(active, best.plan, net);
    return best;
}

Network random_graph(int nodes, double extra, double cap_lo, double cap_hi, Rng& rng) {
    if (nodes < 2) throw Error("random_graph: need at least two nodes");
    Network net;
    for (int i = 0; i < nodes; ++i) net.add_node(Role::kHost);
    std::uniform_real_distribution<double> cap(cap_lo, cap_hi);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int i = 1; i < nodes; ++i) {
        const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
        net.add_link(NodeId{j}, NodeId{i}, cap(rng));
    }
    for (int i = 0; i < nodes; ++i) {
        for (int j = i + 1; j < nodes; ++j) {
            if (net.find_link(NodeId{i}, NodeId{j})) continue;
            if (coin(rng) < extra) net.add_link(NodeId{i}, NodeId{j}, cap(rng));
        }
    }
    return net;
}

Coflow random_small_coflow(const Network& net, int n, double v_lo, double v_hi, Rng& rng) {
    Coflow c;
    std::uniform_int_distribution<int> node(0, static_cast<int>(net.node_count()) - 1);
    std::uniform_real_distribution<double> vol(v_lo, v_hi);
    for (int i = 0; i < n; ++i) {
        const int s = node(rng);
        int d = node(rng);
        while (d == s) d = node(rng);
        c.flows.push_back(make_flow(i, NodeId{s}, NodeId{d}, vol(rng)));
    }
    return c;
}

DisjointExample disjoint_route_example() {
    DisjointExample ex;
    Network& net = ex.net;
    const NodeId a = net.add_node(Role::kHost);
    const NodeId b = net.add_node(Role::kHost);
    const NodeId c = net.add_node(Role::kHost);
    const NodeId r3 = net.add_node(Role::kTor);
    const NodeId r4 = net.add_node(Role::kTor);
    const NodeId r5 = net.add_node(Role::kAggregation);
    const NodeId r6 = net.add_node(Role::kCore);
    const NodeId r7 = net.add_node(Role::kCore);
    net.add_link(a, r3, 10);
    net.add_link(b, r4, 10);
    net.add_link(r3, r5, 10);
    net.add_link(r4, r5, 10);
    net.add_link(r5, r6, 10);
    net.add_link(r6, c, 10);
    net.add_link(r3, r7, 8);
    net.add_link(r4, r7, 8);
    net.add_link(r7, c, 10);
    ex.coflow.flows = {make_flow(0, a, c, 100), make_flow(1, b, c, 100), make_flow(2, a, b, 20)};
    return ex;
}

// ------------------------------------------------------------------ suites

namespace {

Path random_route(const Network& net, NodeId s, NodeId d, Rng& rng) {
    const auto paths = all_simple_paths(net, s, d, {}, 200);
    return paths[std::uniform_int_distribution<std::size_t>(0, paths.size() - 1)(rng)];
}

double rel_gap(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

SuiteResult suite_optba(Rng& rng, int instances) {
    SuiteResult r{"optba-vs-lp", true, 0, {}};
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        const int nodes = std::uniform_int_distribution<int>(3, 10)(rng);
        Network net = random_graph(nodes, 0.3, 1.0, 20.0, rng);
        const Coflow cf = random_small_coflow(net, std::uniform_int_distribution<int>(1, 6)(rng), 1.0, 100.0, rng);
        RoutingPlan plan;
        for (const Flow& f : cf.flows) plan.routes.push_back(random_route(net, f.src, f.dst, rng));
        const Schedule s = optba_schedule(cf, plan, net);
        const double want = optba_lp(plan, cf.residuals(), net);
        worst = std::max(worst, rel_gap(s.cct(), want));
        ++r.cases;
    }
    r.pass = worst <= 1e-6;
    r.detail = "max relative gap " + std::to_string(worst);
    return r;
}

SuiteResult suite_widest(Rng& rng, int instances) {
    SuiteResult r{"widest-path-vs-enumeration", true, 0, {}};
    std::size_t mismatches = 0;
    for (int t = 0; t < instances; ++t) {
        const int nodes = std::uniform_int_distribution<int>(2, 9)(rng);
        Network net = random_graph(nodes, 0.35, 1.0, 5.0, rng);
        std::vector<double> width(net.link_count());
        // Integer widths make ties common, exercising the tie-break.
        for (double& w : width) w = std::uniform_int_distribution<int>(0, 4)(rng);
        const NodeId s{std::uniform_int_distribution<int>(0, nodes - 1)(rng)};
        NodeId d{std::uniform_int_distribution<int>(0, nodes - 1)(rng)};
        if (s == d) d = NodeId{(s.value + 1) % nodes};
        const auto got = max_capacity_path(net, s, d, width);
        const auto want = widest_path(net, s, d, width);
        if (got.has_value() != want.has_value() || (got && *got != *want)) ++mismatches;
        ++r.cases;
    }
    r.pass = mismatches == 0;
    r.detail = std::to_string(mismatches) + " mismatches";
    return r;
}

SuiteResult suite_lower_bound(Rng& rng, int instances) {
    SuiteResult r{"relaxation-lower-bound", true, 0, {}};
    double worst = 0.0;
    for (int t = 0; t < instances; ++t) {
        const int nodes = std::uniform_int_distribution<int>(3, 8)(rng);
        Network net = random_graph(nodes, 0.3, 1.0, 20.0, rng);
        const Coflow cf = random_small_coflow(net, std::uniform_int_distribution<int>(1, 3)(rng), 1.0, 100.0, rng);
        const auto best = exhaustive_schedule(net, cf);
        if (!best) continue;
        const RelaxedSolution rel = solve_cos_relax(net, cf);
        worst = std::max(worst, (rel.t - best->cct) / best->cct);
        ++r.cases;
    }
    r.pass = worst <= 1e-6;
    r.detail = "max relative excess of T' over the integral optimum " + std::to_string(std::max(0.0, worst));
    return r;
}

SuiteResult suite_simplex(Rng& rng, int instances) {
    SuiteResult r{"simplex-vs-vertex-enumeration", true, 0, {}};
    std::size_t mismatches = 0;
    for (int t = 0; t < instances; ++t) {
        lp::LinearProgram prog;
        const int n = std::uniform_int_distribution<int>(1, 5)(rng);
        const int m = std::uniform_int_distribution<int>(1, 5)(rng);
        std::uniform_int_distribution<int> coef(-5, 5);
        for (int j = 0; j < n; ++j) prog.add_variable("x" + std::to_string(j), -10.0, 10.0, coef(rng));
        for (int i = 0; i < m; ++i) {
            std::vector<lp::Term> terms;
            for (int j = 0; j < n; ++j) terms.push_back({j, static_cast<double>(coef(rng))});
            const auto rel = static_cast<lp::Relation>(std::uniform_int_distribution<int>(0, 2)(rng));
            prog.add_constraint("c" + std::to_string(i), std::move(terms), rel, coef(rng));
        }
        const lp::LpSolution sol = lp::solve_lp(prog);
        const auto want = vertex_enumeration(prog);
        bool ok;
        if (!want) {
            ok = sol.status == lp::Status::kInfeasible;
        } else {
            ok = sol.optimal() && rel_gap(sol.objective, *want) <= 1e-6;
        }
        if (!ok) ++mismatches;
        ++r.cases;
    }
    r.pass = mismatches == 0;
    r.detail = std::to_string(mismatches) + " mismatches";
    return r;
}

}  // namespace

std::vector<SuiteResult> run_suites(std::uint64_t seed, int instances) {
    Rng rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(suite_optba(rng, instances));
    out.push_back(suite_widest(rng, instances));
    out.push_back(suite_lower_bound(rng, instances));
    out.push_back(suite_simplex(rng, instances));
    return out;
}

}  // namespace coflow::oracle
