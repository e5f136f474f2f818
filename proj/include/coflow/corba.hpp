#pragma once
// Coflow routing and bandwidth allocation: relax, round each flow onto its
// widest path under the relaxed flow fractions, allocate optimally for the
// rounded routes, then improve with a local search that reroutes the
// slowest flows around saturated links.
//
// corba_fast skips the relaxation and starts from the shortest widest path of
// every flow.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/cos_relax.hpp"
#include "coflow/network.hpp"
#include "coflow/optba.hpp"

namespace coflow {

/// Relative slack for "ct_i == CCT" membership tests.
inline constexpr double kCctRelativeTolerance = 1e-9;
/// Local-search iterations allowed per flow.
inline constexpr std::size_t kIterationsPerFlow = 50;

/// For each flow, its widest path under width(l) = |x'_i,l|.
/// Throws coflow::Error if the relaxation routes nothing for some flow.
RoutingPlan round_routes(const RelaxedSolution& relaxed, const Network& net, const Coflow& coflow);

/// Optimal rates for the rounded routes on `net`'s available bandwidth.
Schedule initial_allocation(const RoutingPlan& plan, const Coflow& coflow, const Network& net);

struct LocalSearchStats {
    std::size_t iterations = 0;
    std::size_t attempts = 0;
    std::size_t accepted = 0;
    bool hit_iteration_cap = false;
    std::vector<double> cct_history;  // CCT after each iteration, starting with the input
};

struct LocalSearchOptions {
    /// 0 means kIterationsPerFlow * N.
    std::size_t max_iterations = 0;
    /// Called with the committed schedule after every iteration.
    std::function<void(const Schedule&)> on_iteration;
};

/// One local-search session over a fixed base network (availability before
/// the coflow is placed). The residual availability with the coflow's
/// allocation applied is kept alongside the schedule.
class LocalSearch {
  public:
    LocalSearch(const Network& base, const Coflow& coflow, const Schedule& initial);

    /// Tries to reroute flow `index` (position in the schedule). Commits and
    /// returns true iff its completion time strictly decreases; otherwise the
    /// state is restored exactly.
    bool try_move(std::size_t index);

    /// Indices of the flows whose completion time equals the CCT.
    std::vector<std::size_t> critical_flows() const;

    /// Runs iterations until no critical flow improves or the cap is hit.
    void run(const LocalSearchOptions& options, LocalSearchStats* stats);

    const Schedule& schedule() const { return schedule_; }
    const Network& residual() const { return residual_; }

  private:
    const Network& base_;
    std::vector<double> volumes_;
    Schedule schedule_;
    Network residual_;
};

/// Runs the local search from `schedule`, which must be feasible on `net`
/// (availability before the schedule is applied).
Schedule local_search(const Schedule& schedule, const Network& net, const Coflow& coflow,
                      const LocalSearchOptions& options = {}, LocalSearchStats* stats = nullptr);

struct CorbaTrace {
    std::optional<double> relaxed_t;  // unset for corba_fast
    double initial_cct = 0.0;
    Schedule initial;
    LocalSearchStats search;
};

struct CorbaOptions {
    RelaxTieBreak tie_break = RelaxTieBreak::kLightRoutes;  // unused by corba_fast
    LocalSearchOptions search;
};

/// Throws Unschedulable when some flow has no route with bandwidth.
Schedule corba(const Network& net, const Coflow& coflow, CorbaTrace* trace = nullptr, const CorbaOptions& options = {});
Schedule corba_fast(const Network& net, const Coflow& coflow, CorbaTrace* trace = nullptr,
                    const CorbaOptions& options = {});

}  // namespace coflow
