#include <doctest.h>

#include <cmath>
#include <numeric>

#include "coflow/config.hpp"
#include "coflow/metrics.hpp"
#include "coflow/paths.hpp"
#include "coflow/sim.hpp"

using namespace coflow;

namespace {

OnlineConfig small_online(Algorithm algo, std::uint64_t seed) {
    OnlineConfig cfg;
    cfg.k = 4;
    cfg.coflow_rate = 0.05;
    cfg.arrival_cutoff = 200;
    cfg.n_flows = 10;
    cfg.algorithm = algo;
    cfg.seed = seed;
    return cfg;
}

MetricsRecord without_runtime(MetricsRecord r) {
    r.runtime_s = 0;
    return r;
}

}  // namespace

TEST_CASE("random streams") {
    Rng a = make_rng(7, 0), b = make_rng(7, 0), c = make_rng(7, 1), d = make_rng(8, 0);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());
    CHECK(make_rng(1ULL << 40, 0)() != make_rng(0, 0)());
}

TEST_CASE("noise parameters") {
    NoiseParams p;
    p.validate();
    p.rate_min = 0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.max_utilization = 1.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.duration_max = 0.5;
    CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("noise draws") {
    const Network net = fat_tree(4, 2, 10);
    NoiseProcess fixed(net, {}, 0.0, make_rng(1, 0));
    for (int i = 0; i < 200; ++i) {
        const NoiseDraw d = fixed.next();
        CHECK(d.start == 0.0);
        CHECK(d.src != d.dst);
        CHECK(d.rate >= 0.5);
        CHECK(d.rate <= 2.0);
        CHECK(d.duration >= 1.0);
        CHECK(d.duration <= 150.0);
        CHECK(d.route_fraction >= 0.0);
        CHECK(d.route_fraction < 1.0);
    }
    NoiseProcess poisson(net, {}, 2.5, make_rng(1, 0));
    double last = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double t = poisson.next().start;
        CHECK(t >= last);
        last = t;
    }
    // Mean gap 1/2.5 = 0.4 s; the standard error over 20000 gaps is 0.7%.
    CHECK(last / n == doctest::Approx(0.4).epsilon(0.03));
}

TEST_CASE("noise placement respects the utilization ceiling") {
    Network net = fat_tree(4, 2, 10);
    const Network idle = net;
    NoiseParams params;
    NoiseProcess proc(net, params, 0.0, make_rng(3, 0));
    std::vector<double> used(net.link_count(), 0.0);
    std::size_t placed = 0;
    for (int i = 0; i < 2000; ++i) {
        const NoiseDraw d = proc.next();
        const auto f = place_noise(net, d, params);
        if (!f) continue;
        ++placed;
        CHECK(f->rate > 0.0);
        CHECK(f->rate <= d.rate);
        CHECK(f->route.source() == d.src);
        CHECK(f->route.destination() == d.dst);
        CHECK(f->route.hops() == shortest_path(idle, d.src, d.dst, idle.available_all())->hops());
        for (LinkId l : f->route.links()) used[static_cast<std::size_t>(l.value)] += f->rate;
    }
    CHECK(placed > 100);
    for (std::size_t l = 0; l < used.size(); ++l) {
        const LinkId id{static_cast<int>(l)};
        CHECK(used[l] <= 0.8 * net.capacity(id) + 1e-9);
        CHECK(net.available(id) == doctest::Approx(net.capacity(id) - used[l]).epsilon(1e-9));
    }
}

TEST_CASE("offline instance") {
    OfflineConfig cfg;
    CHECK(cfg.resolved_noise_count() == 128);
    const OfflineInstance a = make_offline_instance(cfg);
    const OfflineInstance b = make_offline_instance(cfg);
    CHECK(a.net.availability_units() == b.net.availability_units());
    CHECK(a.noise.size() <= 128);
    CHECK(a.noise.size() > 64);
    CHECK(a.coflow.flows.size() == 10);
    a.coflow.validate(a.net);
    for (const NoiseFlow& f : a.noise) {
        CHECK(f.start == 0.0);
        CHECK(f.duration >= 1.0);
        CHECK(f.duration <= 150.0);
    }
    cfg.k = 5;
    CHECK_THROWS_AS(make_offline_instance(cfg), Error);
}

TEST_CASE("offline without noise: one flow gets the path bottleneck") {
    for (Algorithm algo : all_algorithms()) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            OfflineConfig cfg;
            cfg.noise_count = 0;
            cfg.n_flows = 1;
            cfg.algorithm = algo;
            cfg.seed = seed;
            const OfflineResult r = run_offline(cfg);
            const OfflineInstance in = make_offline_instance(cfg);
            CHECK(r.metrics.cct_s == in.coflow.flows[0].volume / 10.0);
            CHECK(r.metrics.alloc_gbps == 10.0);
        }
    }
}

TEST_CASE("offline runs are reproducible") {
    for (Algorithm algo : all_algorithms()) {
        OfflineConfig cfg;
        cfg.algorithm = algo;
        cfg.seed = 4;
        CHECK(without_runtime(run_offline(cfg).metrics) == without_runtime(run_offline(cfg).metrics));
    }
}

TEST_CASE("online: a lone coflow behaves as offline") {
    OfflineConfig off;
    off.noise_count = 0;
    off.seed = 9;
    off.algorithm = Algorithm::kCorbaFast;
    const OfflineInstance inst = make_offline_instance(off);
    const OfflineResult expect = run_offline(off, inst);

    OnlineConfig on;
    on.k = 4;
    on.noise_rate = 0;
    on.algorithm = Algorithm::kCorbaFast;
    Coflow cf = inst.coflow;
    cf.arrival_time = 5.0;
    on.workload = {cf};
    const OnlineResult r = run_online(on);
    REQUIRE(r.coflows_completed == 1);
    CHECK(r.ccts[0] == doctest::Approx(expect.metrics.cct_s).epsilon(1e-9));
    CHECK(r.metrics.alloc_gbps == expect.metrics.alloc_gbps);
    CHECK(r.metrics.avg_hops == expect.metrics.avg_hops);
    CHECK(r.waits == 0);
}

TEST_CASE("online: of two identical simultaneous coflows the first finishes no later") {
    OfflineConfig off;
    off.noise_count = 0;
    off.seed = 2;
    const OfflineInstance inst = make_offline_instance(off);
    for (Algorithm algo : all_algorithms()) {
        OnlineConfig on;
        on.k = 4;
        on.noise_rate = 0;
        on.algorithm = algo;
        on.workload = {inst.coflow, inst.coflow};
        const OnlineResult r = run_online(on);
        REQUIRE(r.coflows_completed == 2);
        CHECK(r.ccts[0] <= r.ccts[1]);
        CHECK(r.conservation_violations == 0);
    }
    OnlineConfig bad;
    bad.k = 4;
    Coflow late = inst.coflow, early = inst.coflow;
    late.arrival_time = 10;
    early.arrival_time = 5;
    bad.workload = {late, early};
    CHECK_THROWS_AS(run_online(bad), Error);
}

TEST_CASE("online: conservation, liveness and determinism") {
    for (Algorithm algo : {Algorithm::kCorbaFast, Algorithm::kMinCctS, Algorithm::kMinCctSM}) {
        std::vector<std::string> log_a, log_b;
        const OnlineConfig cfg = small_online(algo, 3);
        const OnlineResult a = run_online(cfg, [&](const std::string& l) { log_a.push_back(l); });
        const OnlineResult b = run_online(cfg, [&](const std::string& l) { log_b.push_back(l); });
        CHECK(log_a == log_b);
        CHECK(!log_a.empty());
        CHECK(without_runtime(a.metrics) == without_runtime(b.metrics));
        CHECK(a.coflows_completed == a.coflows_arrived);
        CHECK(a.coflows_arrived > 3);
        CHECK(a.conservation_checks == a.events);
        CHECK(a.conservation_violations == 0);
        CHECK(a.worst_overload <= 1e-9);
        CHECK(a.max_wait <= cfg.wait_threshold + 1e-6);
        CHECK(a.noise_placed > 0);
        for (double c : a.ccts) CHECK(c > 0.0);
        CHECK(a.metrics.cct_s == doctest::Approx(std::accumulate(a.ccts.begin(), a.ccts.end(), 0.0) / a.ccts.size()));
    }
}

TEST_CASE("online: time limit") {
    OnlineConfig cfg = small_online(Algorithm::kCorbaFast, 1);
    cfg.time_limit = 50;
    CHECK_THROWS_AS(run_online(cfg), Error);
    CHECK(OnlineConfig{}.resolved_noise_rate() == 40.0);
    CHECK(cfg.resolved_noise_rate() == doctest::Approx(2.56).epsilon(1e-12));
}

TEST_CASE("online: CoRBA beats MinCCT-M on average" * doctest::timeout(1200)) {
    double corba = 0.0, minm = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const OnlineResult a = run_online(small_online(Algorithm::kCorba, seed));
        const OnlineResult b = run_online(small_online(Algorithm::kMinCctM, seed));
        CHECK(a.coflows_completed == a.coflows_arrived);
        CHECK(b.coflows_completed == b.coflows_arrived);
        corba += a.metrics.cct_s / 10;
        minm += b.metrics.cct_s / 10;
    }
    MESSAGE("mean online CCT: corba " << corba << " s, mincct-m " << minm << " s");
    CHECK(corba < minm);
}

TEST_CASE("csv round trip") {
    std::vector<MetricsRecord> rows;
    Rng rng(5);
    std::uniform_real_distribution<double> u(0, 5000);
    for (std::uint64_t s = 1; s <= 5; ++s) {
        for (const char* algo : {"mincct-s", "corba"}) {
            rows.push_back({s, algo, 4, 10, u(rng), u(rng) / 7, 1.0 / 3.0 + s, 1e-300 * s});
        }
    }
    rows.push_back({6, "corba", 4, 10, 0.1, 0.2, 0.30000000000000004, 0});
    const std::string text = to_csv(rows);
    CHECK(text.rfind("seed,algo,k,n_flows,cct_s,alloc_gbps,avg_hops,runtime_s\n", 0) == 0);
    CHECK(parse_csv(text) == rows);
    for (const MetricsRecord& r : rows) CHECK(parse_csv_row(to_csv_row(r)) == r);
    CHECK(parse_csv(text + "# a comment\n") == rows);
    CHECK(format_double(0.1) == "0.1");
    CHECK_THROWS_AS(parse_csv_row("1,corba,4"), Error);
    CHECK_THROWS_AS(parse_csv_row("x,corba,4,10,1,1,1,0"), Error);
    CHECK_THROWS_AS(parse_csv("bad,header\n"), Error);

    std::vector<MetricsRecord> shuffled = rows;
    std::reverse(shuffled.begin(), shuffled.end());
    sort_records(shuffled);
    CHECK(shuffled[0].seed == 1);
    CHECK(shuffled[0].algo == "corba");
    CHECK(shuffled[1].algo == "mincct-s");
}

TEST_CASE("summary statistics") {
    std::vector<MetricsRecord> rows = {{1, "corba", 4, 10, 10, 1, 5, 0},
                                       {2, "corba", 4, 10, 20, 3, 6, 0},
                                       {3, "corba", 4, 10, 30, 5, 7, 0},
                                       {1, "corba", 4, 20, 8, 1, 5, 0}};
    const auto s = summarize(rows);
    REQUIRE(s.size() == 2);
    CHECK(s[0].n_flows == 10);
    CHECK(s[0].runs == 3);
    CHECK(s[0].cct_mean == 20.0);
    CHECK(s[0].cct_stddev == doctest::Approx(10.0));
    CHECK(s[0].alloc_stddev == doctest::Approx(2.0));
    CHECK(s[1].runs == 1);
    CHECK(s[1].cct_stddev == 0.0);
    const std::string text = format_summary(s);
    for (std::size_t pos = 0; pos < text.size(); pos = text.find('\n', pos) + 1) CHECK(text[pos] == '#');
}

TEST_CASE("configuration files") {
    OfflineConfig off;
    apply_entries(off, parse_config_text("k = 6   # pods\nn_flows=20\nalgorithm = \"mincct-m\"\nbeta = 0.5\n"));
    CHECK(off.k == 6);
    CHECK(off.n_flows == 20);
    CHECK(off.algorithm == Algorithm::kMinCctM);
    CHECK(off.beta == 0.5);
    apply_entries(off, parse_config_text("{\"k\": 8, \"noise_max_utilization\": 0.5, \"algorithm\": \"corba\"}"));
    CHECK(off.k == 8);
    CHECK(off.noise.max_utilization == 0.5);
    CHECK(off.algorithm == Algorithm::kCorba);

    try {
        set_param(off, "n_flow", "3");
        FAIL("unknown key accepted");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("'n_flow'") != std::string::npos);
    }
    CHECK_THROWS_AS(set_param(off, "k", "four"), Error);
    OnlineConfig on;
    CHECK_THROWS_AS(set_param(on, "noise_count", "3"), Error);
    set_param(on, "wait_threshold", "50");
    CHECK(on.wait_threshold == 50);

    OfflineConfig back;
    apply_entries(back, parse_config_text(describe(off)));
    CHECK(describe(back) == describe(off));
    OnlineConfig on_back;
    apply_entries(on_back, parse_config_text(describe(on)));
    CHECK(describe(on_back) == describe(on));
    CHECK(parse_override("seed=4") == std::pair<std::string, std::string>{"seed", "4"});
    CHECK_THROWS_AS(parse_override("seed"), Error);
}
