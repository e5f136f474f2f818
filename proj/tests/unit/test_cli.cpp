#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "coflow/cli.hpp"
#include "coflow/io.hpp"
#include "coflow/metrics.hpp"

using namespace coflow;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<const char*> args) {
    args.insert(args.begin(), "coflowctl");
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(static_cast<int>(args.size()), args.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::size_t count_lines(const std::string& s, bool include_comments = false) {
    std::size_t n = 0;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        if (include_comments || line.empty() || line[0] != '#') ++n;
    }
    return n;
}

fs::path scratch(const char* name) { return fs::temp_directory_path() / (std::string("coflowctl_test_") + name); }

}  // namespace

TEST_CASE("seed lists") {
    CHECK(cli::parse_seeds("1..20").size() == 20);
    CHECK(cli::parse_seeds("1,4") == std::vector<std::uint64_t>{1, 4});
    CHECK(cli::parse_seeds("1..3,7") == std::vector<std::uint64_t>{1, 2, 3, 7});
    CHECK(cli::parse_seeds("5") == std::vector<std::uint64_t>{5});
    CHECK_THROWS_AS(cli::parse_seeds("3..1"), Error);
    CHECK_THROWS_AS(cli::parse_seeds("x"), Error);
    CHECK_THROWS_AS(cli::parse_seeds(""), Error);
}

TEST_CASE("sweep ranges") {
    const auto s = cli::parse_sweep("n_flows=10..100:10");
    CHECK(s.key == "n_flows");
    CHECK(s.values == std::vector<std::string>{"10", "20", "30", "40", "50", "60", "70", "80", "90", "100"});
    CHECK(cli::parse_sweep("k=4..8:2").values == std::vector<std::string>{"4", "6", "8"});
    CHECK(cli::parse_sweep("k=4..6").values == std::vector<std::string>{"4", "5", "6"});
    CHECK(cli::parse_sweep("beta=0.5..0.7:0.1").values.size() == 3);
    CHECK_THROWS_AS(cli::parse_sweep("n_flows"), Error);
    CHECK_THROWS_AS(cli::parse_sweep("n_flows=10..5:1"), Error);
    CHECK_THROWS_AS(cli::parse_sweep("n_flows=1..5:0"), Error);
}

TEST_CASE("algorithm lists") {
    CHECK(cli::parse_algorithms("corba,mincct-s") == std::vector<Algorithm>{Algorithm::kCorba, Algorithm::kMinCctS});
    CHECK(cli::parse_algorithms("corba-fast,mincct-m,mincct-sm").size() == 3);
    CHECK_THROWS_AS(cli::parse_algorithms("corba,rapier"), Error);
}

TEST_CASE("offline: one row per seed and algorithm, reproducibly") {
    const std::vector<const char*> args{"offline", "--seeds", "1..2", "--set", "n_flows=4",
                                        "--algo", "corba,corba-fast,mincct-s,mincct-m,mincct-sm"};
    const Outcome a = invoke(args);
    REQUIRE(a.code == 0);
    CHECK(count_lines(a.out) == 1 + 2 * 5);
    const auto rows = parse_csv(a.out);
    CHECK(rows.size() == 10);
    CHECK(rows[0].seed == 1);
    CHECK(rows[0].algo == "corba");
    CHECK(rows[9].algo == "mincct-sm");
    for (const MetricsRecord& r : rows) CHECK(r.runtime_s == 0.0);
    CHECK(to_csv(rows) == a.out);
    CHECK(invoke(args).out == a.out);

    auto parallel = args;
    parallel.push_back("--jobs");
    parallel.push_back("3");
    CHECK(invoke(parallel).out == a.out);
    CHECK(invoke({"offline", "--seeds", "1..2", "--set", "n_flows=4"}).out == a.out);
}

TEST_CASE("output file and summary") {
    const fs::path out = scratch("summary.csv");
    const std::string path = out.string();
    const Outcome o = invoke({"offline", "--seeds", "1..3", "--set", "n_flows=3", "--algo", "corba-fast",
                              "--summary", "--out", path.c_str()});
    REQUIRE(o.code == 0);
    const std::string text = read_file(path);
    CHECK(parse_csv(text).size() == 3);
    CHECK(count_lines(text, true) > count_lines(text));
    CHECK(text.find("# ") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("configuration errors name the key") {
    const Outcome o = invoke({"offline", "--seeds", "1", "--set", "n_flow=3"});
    CHECK(o.code != 0);
    CHECK(o.err.find("n_flow") != std::string::npos);
    const fs::path cfg = scratch("bad.toml");
    write_file(cfg.string(), "k = 4\nspeed = 3\n");
    const std::string path = cfg.string();
    const Outcome f = invoke({"offline", "--config", path.c_str()});
    CHECK(f.code != 0);
    CHECK(f.err.find("speed") != std::string::npos);
    fs::remove(cfg);
    CHECK(invoke({"offline", "--algo", "nope"}).code != 0);
    CHECK(invoke({"frobnicate"}).code != 0);
}

TEST_CASE("config file and overrides") {
    const fs::path cfg = scratch("good.json");
    write_file(cfg.string(), "{\"n_flows\": 3, \"noise_count\": 0}");
    const std::string path = cfg.string();
    const Outcome o = invoke({"offline", "--config", path.c_str(), "--set", "n_flows=2", "--seeds", "1",
                              "--algo", "corba-fast"});
    REQUIRE(o.code == 0);
    const auto rows = parse_csv(o.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_flows == 2);
    fs::remove(cfg);
}

TEST_CASE("sweep and online") {
    const Outcome s = invoke({"sweep", "n_flows=2..4:2", "--seeds", "1..2", "--algo", "corba-fast,mincct-s"});
    REQUIRE(s.code == 0);
    const auto rows = parse_csv(s.out);
    CHECK(rows.size() == 2 * 2 * 2);
    int small = 0;
    for (const auto& r : rows) small += r.n_flows == 2;
    CHECK(small == 4);

    const std::vector<const char*> online{"online", "--seeds", "1..2", "--algo", "corba-fast", "--set", "k=4",
                                          "--set", "coflow_rate=0.05", "--set", "arrival_cutoff=100",
                                          "--set", "n_flows=4"};
    const Outcome a = invoke(online);
    REQUIRE(a.code == 0);
    CHECK(parse_csv(a.out).size() == 2);
    CHECK(invoke(online).out == a.out);
}

TEST_CASE("topology and verify") {
    const Outcome t = invoke({"topo", "--set", "k=4"});
    REQUIRE(t.code == 0);
    CHECK(topology_from_json(t.out).node_count() == 52);
    const Outcome v = invoke({"verify", "--instances", "5"});
    CHECK(v.code == 0);
    CHECK(v.out.find("FAIL") == std::string::npos);
    CHECK(count_lines(v.out) >= 4);
}

TEST_CASE("the installed binary behaves the same") {
    const char* exe = std::getenv("COFLOWCTL");
    if (!exe) {
        MESSAGE("COFLOWCTL not set; skipping subprocess checks");
        return;
    }
    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    const std::string base = std::string(exe) + " offline --seeds 1..2 --set n_flows=3 --out ";
    REQUIRE(std::system((base + a.string()).c_str()) == 0);
    REQUIRE(std::system((base + b.string()).c_str()) == 0);
    CHECK(read_file(a.string()) == read_file(b.string()));
    CHECK(parse_csv(read_file(a.string())).size() == 10);
    const std::string bad = std::string(exe) + " offline --seeds 1 --set bogus=1 2>/dev/null";
    CHECK(std::system(bad.c_str()) != 0);
    fs::remove(a);
    fs::remove(b);
}
