#pragma once
// Flows, coflows and schedules.

#include <random>
#include <span>
#include <vector>

#include "coflow/network.hpp"

namespace coflow {

using Rng = std::mt19937_64;

/// A coflow cannot be given positive bandwidth on the current network state.
class Unschedulable : public Error {
  public:
    using Error::Error;
};

struct Flow {
    int id = 0;
    NodeId src;
    NodeId dst;
    double volume = 0.0;    // Gb
    double residual = 0.0;  // Gb still to transfer
};

struct Coflow {
    int id = 0;
    std::vector<Flow> flows;
    double arrival_time = 0.0;

    /// The flows that still have data to send.
    Coflow active() const;
    /// Residual volume of every flow, in flow order.
    std::vector<double> residuals() const;
    /// Checks the Flow/Coflow invariants against `net`; throws coflow::Error.
    void validate(const Network& net) const;
};

Flow make_flow(int id, NodeId src, NodeId dst, double volume);

/// N flows between distinct uniformly drawn hosts with volumes ~ U[beta*v_max, v_max].
Coflow random_coflow(const Network& net, int n, double beta, double v_max, Rng& rng);

struct ScheduledFlow {
    int flow_id = 0;
    double volume = 0.0;  // data this assignment must carry (the residual)
    Path route;
    double rate = 0.0;  // Gb/s

    double completion_time() const { return volume / rate; }
};

/// Route and rate per flow. Flows with nothing left to send are not listed.
struct Schedule {
    std::vector<ScheduledFlow> flows;

    /// max_i V_i / b_i (0 for an empty schedule).
    double cct() const;
    /// sum_i b_i
    double allocated_bandwidth() const;
    /// Mean hop count of the routes.
    double avg_route_length() const;
};

/// Throws coflow::Error unless every rate is positive, every route joins the
/// right endpoints, and per-link rate sums fit in `net`'s available bandwidth
/// (within kRateTolerance).
void validate_schedule(const Schedule& schedule, const Coflow& coflow, const Network& net);
bool is_feasible(const Schedule& schedule, const Coflow& coflow, const Network& net);

/// Takes every scheduled rate out of `net` (used to update availability).
void allocate_schedule(Network& net, const Schedule& schedule);
void release_schedule(Network& net, const Schedule& schedule);

}  // namespace coflow
