#pragma once
// Seeded experiment engines.
//
// Offline: a FatTree loaded with static background (noise) flows receives one
// random coflow, which the selected algorithm schedules.
//
// Online: coflows and noise flows arrive as Poisson processes. Whenever a
// coflow arrives, every active coflow is torn down and rescheduled from its
// residual volumes in ascending order of recomputed CCT; coflows that cannot
// be scheduled wait. A coflow that has waited past the threshold is
// scheduled ahead of everything else. When a coflow finishes, each running
// coflow may move onto the released bandwidth if that does not slow it down,
// and waiting coflows retry.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "coflow/coflow.hpp"
#include "coflow/metrics.hpp"
#include "coflow/network.hpp"
#include "coflow/scheduler.hpp"

namespace coflow {

/// Independent random stream `stream` of experiment seed `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

struct NoiseParams {
    double rate_min = 0.5;   // Gb/s
    double rate_max = 2.0;   // Gb/s
    /// Noise never pushes a link's utilisation above this fraction of its
    /// capacity; a draw is clamped to the remaining headroom.
    double max_utilization = 0.8;
    double duration_min = 1.0;    // s
    double duration_max = 150.0;  // s

    void validate() const;
};

struct NoiseFlow {
    NodeId src;
    NodeId dst;
    Path route;
    double rate = 0.0;
    double start = 0.0;
    double duration = 0.0;
};

/// Raw draws for one noise flow, independent of network state so that every
/// algorithm sees the same background traffic.
struct NoiseDraw {
    double start = 0.0;
    NodeId src;
    NodeId dst;
    double route_fraction = 0.0;  // in [0, 1): picks among the shortest paths
    double rate = 0.0;
    double duration = 0.0;
};

/// Noise draw stream. Static mode emits draws with start 0; Poisson mode
/// spaces them with exponential gaps of mean 1/arrival_rate.
class NoiseProcess {
  public:
    NoiseProcess(const Network& net, const NoiseParams& params, double arrival_rate, Rng rng);
    NoiseDraw next();

  private:
    std::vector<NodeId> hosts_;
    NoiseParams params_;
    double arrival_rate_;
    double clock_ = 0.0;
    Rng rng_;
};

/// Places a draw on a random shortest path, clamped to the route's noise
/// headroom, and allocates it. Returns nullopt (nothing allocated) when the
/// route has no headroom left.
std::optional<NoiseFlow> place_noise(Network& net, const NoiseDraw& draw, const NoiseParams& params);

struct OfflineConfig {
    int k = 4;
    int alpha_over = 2;
    double link_capacity = 10.0;
    int n_flows = 10;
    double beta = 0.7;
    double v_max = 1000.0;
    /// Negative means alpha_over * k^3.
    long noise_count = -1;
    NoiseParams noise;
    int candidates = 5;
    Algorithm algorithm = Algorithm::kCorba;
    std::uint64_t seed = 1;

    long resolved_noise_count() const;
    void validate() const;
};

struct OfflineInstance {
    Network net;  // availability already reduced by the noise
    Coflow coflow;
    std::vector<NoiseFlow> noise;
};

/// The algorithm-independent part of an offline run.
OfflineInstance make_offline_instance(const OfflineConfig& config);

struct OfflineResult {
    MetricsRecord metrics;
    Schedule schedule;
    double runtime_s = 0.0;  // wall clock of the scheduling call
};

/// Builds the instance, schedules it, validates the schedule. The metrics
/// record carries the measured runtime.
OfflineResult run_offline(const OfflineConfig& config);
/// Same, on a prepared instance.
OfflineResult run_offline(const OfflineConfig& config, const OfflineInstance& instance);

struct OnlineConfig {
    int k = 10;
    int alpha_over = 2;
    double link_capacity = 10.0;
    double coflow_rate = 0.01;      // arrivals per second
    double arrival_cutoff = 1800.0; // no arrivals after this time
    int n_flows = 30;
    double beta = 0.7;
    double v_max = 1000.0;
    /// Negative means 40 * (k/10)^3 per second.
    double noise_rate = -1.0;
    double wait_threshold = 100.0;
    NoiseParams noise;
    int candidates = 5;
    Algorithm algorithm = Algorithm::kCorba;
    std::uint64_t seed = 1;
    /// Check link conservation after every event.
    bool check_conservation = true;
    /// Abort if simulated time passes this bound.
    double time_limit = 1e7;
    /// Replaces the generated arrivals when nonempty. Arrival times must be
    /// nondecreasing; coflow ids are reassigned in list order.
    std::vector<Coflow> workload;

    double resolved_noise_rate() const;
    void validate() const;
};

struct OnlineResult {
    MetricsRecord metrics;  // means over completed coflows / scheduling calls
    std::size_t coflows_arrived = 0;
    std::size_t coflows_completed = 0;
    std::vector<double> ccts;  // per coflow, arrival order
    double max_wait = 0.0;     // longest uninterrupted stay in the waiting queue
    std::size_t forced_schedules = 0;
    std::size_t waits = 0;
    std::size_t events = 0;
    std::size_t scheduling_calls = 0;
    std::size_t noise_placed = 0;
    std::size_t noise_dropped = 0;
    std::size_t conservation_checks = 0;
    std::size_t conservation_violations = 0;
    double worst_overload = 0.0;  // max over checks of (used - capacity), Gb/s
    double runtime_total = 0.0;
    double runtime_max = 0.0;
    double end_time = 0.0;
};

/// One line per processed event, for determinism checks and debugging.
using EventObserver = std::function<void(const std::string&)>;

/// Throws coflow::Error if a coflow cannot be scheduled even on an empty
/// network, or the time limit is exceeded.
OnlineResult run_online(const OnlineConfig& config, const EventObserver& observer = {});

}  // namespace coflow
