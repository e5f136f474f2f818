#include "coflow/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "coflow/log.hpp"
#include "coflow/paths.hpp"

namespace coflow {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

namespace {

enum Stream : std::uint64_t { kNoiseStream = 0, kCoflowStream = 1, kArrivalStream = 2 };

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void NoiseParams::validate() const {
    if (!(rate_min > 0.0) || rate_max < rate_min) throw Error("noise: need 0 < noise_rate_min <= noise_rate_max");
    if (!(max_utilization > 0.0) || max_utilization > 1.0) {
        throw Error("noise: noise_max_utilization must lie in (0, 1]");
    }
    if (!(duration_min > 0.0) || duration_max < duration_min) {
        throw Error("noise: need 0 < noise_duration_min <= noise_duration_max");
    }
}

NoiseProcess::NoiseProcess(const Network& net, const NoiseParams& params, double arrival_rate, Rng rng)
    : hosts_(net.hosts()), params_(params), arrival_rate_(arrival_rate), rng_(std::move(rng)) {
    if (hosts_.size() < 2) throw Error("noise: network needs at least two hosts");
    params_.validate();
}

NoiseDraw NoiseProcess::next() {
    NoiseDraw d;
    if (arrival_rate_ > 0.0) clock_ += std::exponential_distribution<double>(arrival_rate_)(rng_);
    d.start = clock_;
    std::uniform_int_distribution<std::size_t> pick(0, hosts_.size() - 1);
    d.src = hosts_[pick(rng_)];
    do {
        d.dst = hosts_[pick(rng_)];
    } while (d.dst == d.src);
    d.route_fraction = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
    d.rate = std::uniform_real_distribution<double>(params_.rate_min, params_.rate_max)(rng_);
    d.duration = std::uniform_real_distribution<double>(params_.duration_min, params_.duration_max)(rng_);
    return d;
}

std::optional<NoiseFlow> place_noise(Network& net, const NoiseDraw& draw, const NoiseParams& params) {
    const double count = count_shortest_paths(net, draw.src, draw.dst);
    if (!(count >= 1.0)) return std::nullopt;
    const double index = std::min(std::floor(draw.route_fraction * count), count - 1.0);
    NoiseFlow f;
    f.src = draw.src;
    f.dst = draw.dst;
    f.route = nth_shortest_path(net, draw.src, draw.dst, index);
    f.start = draw.start;
    f.duration = draw.duration;
    double headroom = draw.rate;
    for (LinkId l : f.route.links()) {
        headroom = std::min(headroom, net.available(l) - (1.0 - params.max_utilization) * net.capacity(l));
    }
    f.rate = headroom;
    if (f.rate <= kRateTolerance) return std::nullopt;
    net.allocate_along(f.route, f.rate);
    return f;
}

// ---------------------------------------------------------------- offline

long OfflineConfig::resolved_noise_count() const {
    return noise_count >= 0 ? noise_count : static_cast<long>(alpha_over) * k * k * k;
}

void OfflineConfig::validate() const {
    if (k < 2 || k % 2 != 0) throw Error("config: k must be even and >= 2");
    if (alpha_over < 1) throw Error("config: alpha_over must be >= 1");
    if (!(link_capacity > 0.0)) throw Error("config: link_capacity must be positive");
    if (n_flows < 1) throw Error("config: n_flows must be >= 1");
    if (beta < 0.0 || beta > 1.0) throw Error("config: beta must lie in [0, 1]");
    if (!(v_max > 0.0)) throw Error("config: v_max must be positive");
    if (candidates < 1) throw Error("config: candidates must be >= 1");
    noise.validate();
}

OfflineInstance make_offline_instance(const OfflineConfig& config) {
    config.validate();
    OfflineInstance inst{fat_tree(config.k, config.alpha_over, config.link_capacity), {}, {}};
    NoiseProcess noise(inst.net, config.noise, 0.0, make_rng(config.seed, kNoiseStream));
    const long count = config.resolved_noise_count();
    for (long j = 0; j < count; ++j) {
        if (auto f = place_noise(inst.net, noise.next(), config.noise)) inst.noise.push_back(std::move(*f));
    }
    Rng rng = make_rng(config.seed, kCoflowStream);
    inst.coflow = random_coflow(inst.net, config.n_flows, config.beta, config.v_max, rng);
    return inst;
}

OfflineResult run_offline(const OfflineConfig& config, const OfflineInstance& instance) {
    OfflineResult out;
    SchedulerOptions options;
    options.candidates = config.candidates;
    const auto t0 = std::chrono::steady_clock::now();
    out.schedule = schedule_coflow(config.algorithm, instance.net, instance.coflow, options);
    out.runtime_s = seconds_since(t0);
    validate_schedule(out.schedule, instance.coflow, instance.net);
    out.metrics.seed = config.seed;
    out.metrics.algo = std::string(algorithm_name(config.algorithm));
    out.metrics.k = config.k;
    out.metrics.n_flows = config.n_flows;
    out.metrics.cct_s = out.schedule.cct();
    out.metrics.alloc_gbps = out.schedule.allocated_bandwidth();
    out.metrics.avg_hops = out.schedule.avg_route_length();
    out.metrics.runtime_s = out.runtime_s;
    return out;
}

OfflineResult run_offline(const OfflineConfig& config) { return run_offline(config, make_offline_instance(config)); }

// ----------------------------------------------------------------- online

double OnlineConfig::resolved_noise_rate() const {
    if (noise_rate >= 0.0) return noise_rate;
    const double scale = k / 10.0;
    return 40.0 * scale * scale * scale;
}

void OnlineConfig::validate() const {
    if (k < 2 || k % 2 != 0) throw Error("config: k must be even and >= 2");
    if (alpha_over < 1) throw Error("config: alpha_over must be >= 1");
    if (!(link_capacity > 0.0)) throw Error("config: link_capacity must be positive");
    if (!(coflow_rate > 0.0)) throw Error("config: coflow_rate must be positive");
    if (!(arrival_cutoff >= 0.0)) throw Error("config: arrival_cutoff must be nonnegative");
    if (n_flows < 1) throw Error("config: n_flows must be >= 1");
    if (beta < 0.0 || beta > 1.0) throw Error("config: beta must lie in [0, 1]");
    if (!(v_max > 0.0)) throw Error("config: v_max must be positive");
    if (!(wait_threshold >= 0.0)) throw Error("config: wait_threshold must be nonnegative");
    if (candidates < 1) throw Error("config: candidates must be >= 1");
    if (!(time_limit > 0.0)) throw Error("config: time_limit must be positive");
    noise.validate();
}

namespace {

enum class State { kPending, kRunning, kWaiting, kDone };

struct CoflowSlot {
    Coflow coflow;  // residuals advance in place
    State state = State::kPending;
    Schedule schedule;  // volumes track the residuals while running
    double wait_start = 0.0;
    bool expiry_handled = false;
    bool scheduled_once = false;
    double first_alloc = 0.0;
    double first_hops = 0.0;
    double finish = 0.0;
};

struct ActiveNoise {
    NoiseFlow flow;
    double end = 0.0;
    std::uint64_t order = 0;  // placement order, breaks end-time ties
};

constexpr double kTimeEpsilon = 1e-9;

class OnlineEngine {
  public:
    OnlineEngine(const OnlineConfig& config, const EventObserver& observer)
        : cfg_(config),
          observer_(observer),
          net_(fat_tree(config.k, config.alpha_over, config.link_capacity)),
          empty_(net_),
          noise_(net_, config.noise, config.resolved_noise_rate(), make_rng(config.seed, kNoiseStream)) {
        options_.candidates = config.candidates;
        generate_coflows();
        if (cfg_.resolved_noise_rate() > 0.0) next_noise_ = noise_.next();
    }

    OnlineResult run();

  private:
    void generate_coflows();
    void log(const std::string& line) {
        if (observer_) observer_(line);
    }

    // Event handlers.
    void advance_to(double t);
    void complete_flows(double dt);
    void on_coflow_arrival(std::size_t index);
    void on_noise_arrival();
    void on_noise_departure();

    // Scheduling passes.
    void full_pass();
    void completion_pass();
    void retry_waiting();
    bool schedule_aged();
    std::optional<Schedule> try_schedule(const Coflow& coflow);
    void commit(std::size_t index, Schedule schedule);
    void teardown(std::size_t index);
    void mark_waiting(std::size_t index);
    bool is_aged(std::size_t index) const;

    void check_conservation();
    bool any_unfinished() const;
    double next_completion_dt(std::size_t* slot, std::size_t* flow) const;

    const OnlineConfig& cfg_;
    const EventObserver& observer_;
    Network net_;
    const Network empty_;
    NoiseProcess noise_;
    SchedulerOptions options_;

    std::vector<CoflowSlot> slots_;
    std::size_t next_arrival_ = 0;
    std::optional<NoiseDraw> next_noise_;
    std::vector<ActiveNoise> active_noise_;
    std::uint64_t noise_order_ = 0;
    double now_ = 0.0;
    OnlineResult result_;
};

void OnlineEngine::generate_coflows() {
    Rng arrivals = make_rng(cfg_.seed, kArrivalStream);
    Rng shapes = make_rng(cfg_.seed, kCoflowStream);
    std::exponential_distribution<double> gap(cfg_.coflow_rate);
    double t = 0.0;
    std::size_t next = 0;
    while (true) {
        CoflowSlot slot;
        if (!cfg_.workload.empty()) {
            if (next == cfg_.workload.size()) break;
            slot.coflow = cfg_.workload[next++];
            if (slot.coflow.arrival_time < t) throw Error("online: workload arrival times must be nondecreasing");
            t = slot.coflow.arrival_time;
            slot.coflow.validate(net_);
        } else {
            t += gap(arrivals);
            if (t > cfg_.arrival_cutoff) break;
            slot.coflow = random_coflow(net_, cfg_.n_flows, cfg_.beta, cfg_.v_max, shapes);
            slot.coflow.arrival_time = t;
        }
        slot.coflow.id = static_cast<int>(slots_.size());
        // A coflow that cannot be routed even on an idle network is a configuration error.
        for (const Flow& f : slot.coflow.flows) {
            if (!shortest_max_capacity_path(empty_, f.src, f.dst)) {
                throw Error("online: coflow " + std::to_string(slot.coflow.id) +
                            " cannot be scheduled on an empty network");
            }
        }
        slots_.push_back(std::move(slot));
    }
}

bool OnlineEngine::any_unfinished() const {
    if (next_arrival_ < slots_.size()) return true;
    for (const CoflowSlot& s : slots_) {
        if (s.state != State::kDone && s.coflow.arrival_time <= now_) return true;
    }
    return false;
}

double OnlineEngine::next_completion_dt(std::size_t* slot, std::size_t* flow) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        if (slots_[c].state != State::kRunning) continue;
        const auto& flows = slots_[c].schedule.flows;
        for (std::size_t i = 0; i < flows.size(); ++i) {
            const double dt = flows[i].volume / flows[i].rate;
            if (dt < best) {
                best = dt;
                *slot = c;
                *flow = i;
            }
        }
    }
    return best;
}

void OnlineEngine::advance_to(double t) {
    const double dt = t - now_;
    if (dt < 0.0) throw Error("online: time went backwards");
    if (dt > 0.0) {
        for (CoflowSlot& s : slots_) {
            if (s.state != State::kRunning) continue;
            for (ScheduledFlow& sf : s.schedule.flows) sf.volume = std::max(0.0, sf.volume - sf.rate * dt);
        }
    }
    now_ = t;
}

// Moves time forward by dt (the earliest completion) and retires every flow
// that has run dry; returns through the coflow states.
void OnlineEngine::complete_flows(double dt) {
    std::size_t first_slot = 0, first_flow = 0;
    next_completion_dt(&first_slot, &first_flow);
    advance_to(now_ + dt);
    slots_[first_slot].schedule.flows[first_flow].volume = 0.0;

    std::vector<std::size_t> finished;
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        CoflowSlot& s = slots_[c];
        if (s.state != State::kRunning) continue;
        auto& flows = s.schedule.flows;
        for (std::size_t i = 0; i < flows.size();) {
            Flow* flow = nullptr;
            for (Flow& f : s.coflow.flows) {
                if (f.id == flows[i].flow_id) flow = &f;
            }
            if (flows[i].volume <= kTimeEpsilon * std::max(1.0, flow->volume)) {
                net_.release_along(flows[i].route, flows[i].rate);
                flow->residual = 0.0;
                log("t=" + format_double(now_) + " flow-done coflow=" + std::to_string(c) +
                    " flow=" + std::to_string(flow->id));
                flows.erase(flows.begin() + static_cast<std::ptrdiff_t>(i));
            } else {
                ++i;
            }
        }
        if (flows.empty() && s.coflow.active().flows.empty()) {
            s.state = State::kDone;
            s.finish = now_;
            finished.push_back(c);
            ++result_.coflows_completed;
            log("t=" + format_double(now_) + " coflow-done coflow=" + std::to_string(c) +
                " cct=" + format_double(now_ - s.coflow.arrival_time));
        }
    }
    if (!finished.empty()) completion_pass();
}

std::optional<Schedule> OnlineEngine::try_schedule(const Coflow& coflow) {
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Schedule> out;
    try {
        out = schedule_coflow(cfg_.algorithm, net_, coflow.active(), options_);
    } catch (const Unschedulable&) {
        out.reset();
    }
    const double dt = seconds_since(t0);
    ++result_.scheduling_calls;
    result_.runtime_total += dt;
    result_.runtime_max = std::max(result_.runtime_max, dt);
    return out;
}

// Residuals live in the Coflow; the schedule's volume fields mirror them.
void OnlineEngine::commit(std::size_t index, Schedule schedule) {
    CoflowSlot& s = slots_[index];
    if (cfg_.check_conservation) validate_schedule(schedule, s.coflow.active(), net_);
    allocate_schedule(net_, schedule);
    if (s.state == State::kWaiting) {
        result_.max_wait = std::max(result_.max_wait, now_ - s.wait_start);
    }
    if (!s.scheduled_once) {
        s.scheduled_once = true;
        s.first_alloc = schedule.allocated_bandwidth();
        s.first_hops = schedule.avg_route_length();
    }
    s.schedule = std::move(schedule);
    s.state = State::kRunning;
    log("t=" + format_double(now_) + " schedule coflow=" + std::to_string(index) +
        " cct=" + format_double(s.schedule.cct()));
}

void OnlineEngine::teardown(std::size_t index) {
    CoflowSlot& s = slots_[index];
    if (s.state != State::kRunning) return;
    // Sync residuals before dropping the schedule.
    for (const ScheduledFlow& sf : s.schedule.flows) {
        for (Flow& f : s.coflow.flows) {
            if (f.id == sf.flow_id) f.residual = sf.volume;
        }
    }
    release_schedule(net_, s.schedule);
    s.schedule = {};
    s.state = State::kPending;
}

void OnlineEngine::mark_waiting(std::size_t index) {
    CoflowSlot& s = slots_[index];
    if (s.state == State::kWaiting) return;
    s.state = State::kWaiting;
    s.wait_start = now_;
    s.expiry_handled = false;
    ++result_.waits;
    log("t=" + format_double(now_) + " wait coflow=" + std::to_string(index));
}

bool OnlineEngine::is_aged(std::size_t index) const {
    const CoflowSlot& s = slots_[index];
    return s.state == State::kWaiting && now_ - s.wait_start >= cfg_.wait_threshold - kTimeEpsilon;
}

// Aged coflows go first, as one joint coflow so that none of them can starve
// another. If the joint problem fails, each is tried alone in arrival order.
bool OnlineEngine::schedule_aged() {
    std::vector<std::size_t> aged;
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        if (is_aged(c)) aged.push_back(c);
    }
    if (aged.empty()) return false;
    Coflow joint;
    std::vector<std::pair<std::size_t, int>> origin;
    for (std::size_t c : aged) {
        for (const Flow& f : slots_[c].coflow.active().flows) {
            Flow g = f;
            g.id = static_cast<int>(origin.size());
            joint.flows.push_back(g);
            origin.emplace_back(c, f.id);
        }
    }
    if (auto s = try_schedule(joint)) {
        std::map<std::size_t, Schedule> parts;
        for (ScheduledFlow sf : s->flows) {
            const auto [c, id] = origin[static_cast<std::size_t>(sf.flow_id)];
            sf.flow_id = id;
            parts[c].flows.push_back(std::move(sf));
        }
        for (auto& [c, part] : parts) {
            ++result_.forced_schedules;
            commit(c, std::move(part));
        }
        return true;
    }
    for (std::size_t c : aged) {
        if (auto s = try_schedule(slots_[c].coflow)) {
            ++result_.forced_schedules;
            commit(c, std::move(*s));
        }
    }
    return true;
}

// Teardown and reschedule everything in ascending order of recomputed CCT.
void OnlineEngine::full_pass() {
    for (std::size_t c = 0; c < slots_.size(); ++c) teardown(c);
    schedule_aged();
    std::vector<std::size_t> pool;
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        const State st = slots_[c].state;
        if ((st == State::kPending || st == State::kWaiting) && slots_[c].coflow.arrival_time <= now_) pool.push_back(c);
    }
    while (!pool.empty()) {
        std::optional<std::pair<std::size_t, Schedule>> best;
        std::vector<std::size_t> keep;
        for (std::size_t c : pool) {
            auto s = try_schedule(slots_[c].coflow);
            if (!s) {
                // Availability only shrinks for the rest of this pass.
                mark_waiting(c);
                continue;
            }
            keep.push_back(c);
            if (!best || s->cct() < best->second.cct()) best.emplace(c, std::move(*s));
        }
        if (!best) break;
        const std::size_t chosen = best->first;
        commit(chosen, std::move(best->second));
        keep.erase(std::find(keep.begin(), keep.end(), chosen));
        pool = std::move(keep);
    }
}

// Each running coflow, fastest first, may move onto the released bandwidth;
// a new schedule is kept only if it does not finish later.
void OnlineEngine::completion_pass() {
    std::vector<std::size_t> running;
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        if (slots_[c].state == State::kRunning) running.push_back(c);
    }
    std::stable_sort(running.begin(), running.end(),
                     [&](std::size_t a, std::size_t b) { return slots_[a].schedule.cct() < slots_[b].schedule.cct(); });
    for (std::size_t c : running) {
        CoflowSlot& s = slots_[c];
        const double before = s.schedule.cct();
        Schedule old = s.schedule;
        teardown(c);
        auto fresh = try_schedule(s.coflow);
        if (fresh && fresh->cct() <= before) {
            commit(c, std::move(*fresh));
        } else {
            allocate_schedule(net_, old);
            s.schedule = std::move(old);
            s.state = State::kRunning;
        }
    }
    retry_waiting();
}

void OnlineEngine::retry_waiting() {
    schedule_aged();
    for (std::size_t c = 0; c < slots_.size(); ++c) {
        if (slots_[c].state != State::kWaiting) continue;
        if (auto s = try_schedule(slots_[c].coflow)) commit(c, std::move(*s));
    }
}

void OnlineEngine::on_coflow_arrival(std::size_t index) {
    log("t=" + format_double(now_) + " arrive coflow=" + std::to_string(index));
    ++result_.coflows_arrived;
    full_pass();
}

void OnlineEngine::on_noise_arrival() {
    const NoiseDraw draw = *next_noise_;
    next_noise_ = noise_.next();
    if (auto f = place_noise(net_, draw, cfg_.noise)) {
        ++result_.noise_placed;
        active_noise_.push_back({std::move(*f), draw.start + draw.duration, noise_order_++});
    } else {
        ++result_.noise_dropped;
    }
}

void OnlineEngine::on_noise_departure() {
    auto it = std::min_element(active_noise_.begin(), active_noise_.end(), [](const ActiveNoise& a, const ActiveNoise& b) {
        return std::tie(a.end, a.order) < std::tie(b.end, b.order);
    });
    net_.release_along(it->flow.route, it->flow.rate);
    active_noise_.erase(it);
    bool waiting = false;
    for (const CoflowSlot& s : slots_) waiting = waiting || s.state == State::kWaiting;
    if (waiting) retry_waiting();
}

void OnlineEngine::check_conservation() {
    ++result_.conservation_checks;
    std::vector<double> used(net_.link_count(), 0.0);
    for (const CoflowSlot& s : slots_) {
        if (s.state != State::kRunning) continue;
        for (const ScheduledFlow& sf : s.schedule.flows) {
            for (LinkId l : sf.route.links()) used[static_cast<std::size_t>(l.value)] += sf.rate;
        }
    }
    for (const ActiveNoise& n : active_noise_) {
        for (LinkId l : n.flow.route.links()) used[static_cast<std::size_t>(l.value)] += n.flow.rate;
    }
    bool bad = false;
    for (std::size_t l = 0; l < used.size(); ++l) {
        const double over = used[l] - net_.capacity(LinkId{static_cast<std::int32_t>(l)});
        result_.worst_overload = std::max(result_.worst_overload, over);
        if (over > kRateTolerance) bad = true;
    }
    if (bad) {
        ++result_.conservation_violations;
        log_warn("online: link capacity exceeded at t=" + format_double(now_));
    }
}

OnlineResult OnlineEngine::run() {
    // Fixed order for simultaneous events: completions, noise departures,
    // noise arrivals, coflow arrivals, wait expiries.
    while (any_unfinished()) {
        if (now_ > cfg_.time_limit) throw Error("online: simulated time exceeded time_limit");
        std::size_t s = 0, f = 0;
        const double completion = now_ + next_completion_dt(&s, &f);
        double departure = std::numeric_limits<double>::infinity();
        for (const ActiveNoise& n : active_noise_) departure = std::min(departure, n.end);
        const double noise_arrival = next_noise_ ? next_noise_->start : std::numeric_limits<double>::infinity();
        const double arrival =
            next_arrival_ < slots_.size() ? slots_[next_arrival_].coflow.arrival_time : std::numeric_limits<double>::infinity();
        double expiry = std::numeric_limits<double>::infinity();
        for (const CoflowSlot& c : slots_) {
            if (c.state == State::kWaiting && !c.expiry_handled) expiry = std::min(expiry, c.wait_start + cfg_.wait_threshold);
        }
        const double t = std::min({completion, departure, noise_arrival, arrival, expiry});
        if (!std::isfinite(t)) throw Error("online: no pending event but coflows remain unfinished");

        if (t == completion) {
            complete_flows(completion - now_);
        } else if (t == departure) {
            advance_to(t);
            on_noise_departure();
        } else if (t == noise_arrival) {
            advance_to(t);
            on_noise_arrival();
        } else if (t == arrival) {
            advance_to(t);
            slots_[next_arrival_].state = State::kPending;
            on_coflow_arrival(next_arrival_++);
        } else {
            advance_to(std::max(now_, t));
            log("t=" + format_double(now_) + " wait-expiry");
            for (std::size_t c = 0; c < slots_.size(); ++c) {
                if (is_aged(c)) slots_[c].expiry_handled = true;
            }
            full_pass();
        }
        ++result_.events;
        if (cfg_.check_conservation) check_conservation();
    }

    result_.end_time = now_;
    MetricsRecord& m = result_.metrics;
    m.seed = cfg_.seed;
    m.algo = std::string(algorithm_name(cfg_.algorithm));
    m.k = cfg_.k;
    m.n_flows = cfg_.n_flows;
    double cct_sum = 0.0, alloc_sum = 0.0, hops_sum = 0.0;
    for (const CoflowSlot& s : slots_) {
        result_.ccts.push_back(s.finish - s.coflow.arrival_time);
        cct_sum += s.finish - s.coflow.arrival_time;
        alloc_sum += s.first_alloc;
        hops_sum += s.first_hops;
    }
    if (!slots_.empty()) {
        const double n = static_cast<double>(slots_.size());
        m.cct_s = cct_sum / n;
        m.alloc_gbps = alloc_sum / n;
        m.avg_hops = hops_sum / n;
    }
    if (result_.scheduling_calls > 0) m.runtime_s = result_.runtime_total / static_cast<double>(result_.scheduling_calls);
    return result_;
}

}  // namespace

OnlineResult run_online(const OnlineConfig& config, const EventObserver& observer) {
    config.validate();
    OnlineEngine engine(config, observer);
    return engine.run();
}

}  // namespace coflow
