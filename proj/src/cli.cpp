#include "coflow/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <charconv>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "coflow/config.hpp"
#include "coflow/io.hpp"
#include "coflow/log.hpp"
#include "coflow/metrics.hpp"
#include "coflow/oracle.hpp"
#include "coflow/sim.hpp"

namespace coflow::cli {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const std::size_t p = text.find(sep);
        out.push_back(text.substr(0, p));
        if (p == std::string_view::npos) break;
        text = text.substr(p + 1);
    }
    return out;
}

std::uint64_t parse_u64(std::string_view s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw Error("bad seed '" + std::string(s) + "'");
    return v;
}

double parse_num(std::string_view s, std::string_view what) {
    const std::string str(s);
    char* end = nullptr;
    const double v = std::strtod(str.c_str(), &end);
    if (str.empty() || end != str.c_str() + str.size()) {
        throw Error("bad " + std::string(what) + " '" + str + "'");
    }
    return v;
}

bool is_integer_text(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = s.front() == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
    std::vector<std::uint64_t> out;
    for (std::string_view part : split(text, ',')) {
        const std::size_t dots = part.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_u64(part));
            continue;
        }
        const std::uint64_t lo = parse_u64(part.substr(0, dots));
        const std::uint64_t hi = parse_u64(part.substr(dots + 2));
        if (hi < lo) throw Error("empty seed range '" + std::string(part) + "'");
        if (hi - lo > 1'000'000) throw Error("seed range too large");
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
    return out;
}

std::vector<Algorithm> parse_algorithms(std::string_view text) {
    std::vector<Algorithm> out;
    for (std::string_view name : split(text, ',')) {
        const Algorithm a = parse_algorithm(name);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    return out;
}

SweepSpec parse_sweep(std::string_view text) {
    const std::size_t eq = text.find('=');
    const std::size_t dots = text.find("..");
    if (eq == std::string_view::npos || eq == 0 || dots == std::string_view::npos || dots < eq) {
        throw Error("sweep must look like key=lo..hi:step, got '" + std::string(text) + "'");
    }
    SweepSpec spec;
    spec.key = std::string(text.substr(0, eq));
    const std::string_view lo_text = text.substr(eq + 1, dots - eq - 1);
    std::string_view rest = text.substr(dots + 2);
    std::string_view step_text = "1";
    if (const std::size_t colon = rest.find(':'); colon != std::string_view::npos) {
        step_text = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
    }
    const double lo = parse_num(lo_text, "sweep start");
    const double hi = parse_num(rest, "sweep end");
    const double step = parse_num(step_text, "sweep step");
    if (!(step > 0.0)) throw Error("sweep step must be positive");
    if (hi < lo) throw Error("sweep end lies below its start");
    const bool integral = is_integer_text(lo_text) && is_integer_text(rest) && is_integer_text(step_text);
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 100000) throw Error("sweep has too many points");
    for (std::size_t i = 0; i < count; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        spec.values.push_back(integral ? std::to_string(static_cast<long long>(std::llround(v))) : format_double(v));
    }
    return spec;
}

namespace {

struct RunOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string seeds = "1..20";
    bool seeds_given = false;
    std::string algos;
    unsigned jobs = 1;
    std::string out_path;
    bool summary = false;
    bool timing = false;
};

template <class Config>
Config load(const RunOptions& opt) {
    Config cfg;
    if (!opt.config_path.empty()) apply_entries(cfg, load_config_file(opt.config_path));
    for (const std::string& o : opt.overrides) {
        const auto [k, v] = parse_override(o);
        set_param(cfg, k, v);
    }
    cfg.validate();
    return cfg;
}

template <class Config>
std::vector<Algorithm> algorithms_for(const RunOptions& opt, const Config& cfg, bool config_names_algorithm) {
    if (!opt.algos.empty()) return parse_algorithms(opt.algos);
    if (config_names_algorithm) return {cfg.algorithm};
    return all_algorithms();
}

bool names_algorithm(const RunOptions& opt) {
    bool named = false;
    if (!opt.config_path.empty()) {
        for (const auto& [k, v] : load_config_file(opt.config_path)) named = named || k == "algorithm";
    }
    for (const std::string& o : opt.overrides) named = named || parse_override(o).first == "algorithm";
    return named;
}

// Runs task(i) for i in [0, n) on `jobs` threads.
template <class Task>
void parallel_for(std::size_t n, unsigned jobs, Task task) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(1, n))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

struct Batch {
    std::vector<MetricsRecord> rows;
    std::vector<std::string> failures;
};

Batch run_offline_batch(const OfflineConfig& base, const std::vector<std::uint64_t>& seeds,
                        const std::vector<Algorithm>& algos, const RunOptions& opt) {
    std::vector<std::vector<MetricsRecord>> per_seed(seeds.size());
    std::vector<std::string> errors(seeds.size());
    parallel_for(seeds.size(), opt.jobs, [&](std::size_t i) {
        OfflineConfig cfg = base;
        cfg.seed = seeds[i];
        try {
            const OfflineInstance inst = make_offline_instance(cfg);
            for (Algorithm a : algos) {
                cfg.algorithm = a;
                try {
                    OfflineResult r = run_offline(cfg, inst);
                    if (!opt.timing) r.metrics.runtime_s = 0.0;
                    per_seed[i].push_back(std::move(r.metrics));
                } catch (const std::exception& e) {
                    errors[i] += "seed " + std::to_string(cfg.seed) + " " + std::string(algorithm_name(a)) + ": " +
                                 e.what() + "\n";
                }
            }
        } catch (const std::exception& e) {
            errors[i] += "seed " + std::to_string(cfg.seed) + ": " + e.what() + "\n";
        }
    });
    Batch b;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        b.rows.insert(b.rows.end(), per_seed[i].begin(), per_seed[i].end());
        if (!errors[i].empty()) b.failures.push_back(errors[i]);
    }
    sort_records(b.rows);
    return b;
}

Batch run_online_batch(const OnlineConfig& base, const std::vector<std::uint64_t>& seeds,
                       const std::vector<Algorithm>& algos, const RunOptions& opt) {
    const std::size_t n = seeds.size() * algos.size();
    std::vector<std::optional<MetricsRecord>> rows(n);
    std::vector<std::string> errors(n);
    parallel_for(n, opt.jobs, [&](std::size_t i) {
        OnlineConfig cfg = base;
        cfg.seed = seeds[i / algos.size()];
        cfg.algorithm = algos[i % algos.size()];
        try {
            OnlineResult r = run_online(cfg);
            if (!opt.timing) r.metrics.runtime_s = 0.0;
            rows[i] = std::move(r.metrics);
        } catch (const std::exception& e) {
            errors[i] = "seed " + std::to_string(cfg.seed) + " " + std::string(algorithm_name(cfg.algorithm)) + ": " +
                        e.what() + "\n";
        }
    });
    Batch b;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i]) b.rows.push_back(std::move(*rows[i]));
        if (!errors[i].empty()) b.failures.push_back(errors[i]);
    }
    sort_records(b.rows);
    return b;
}

int emit(const Batch& batch, const RunOptions& opt, std::ostream& out, std::ostream& err) {
    std::string text = to_csv(batch.rows);
    if (opt.summary) text += format_summary(summarize(batch.rows));
    if (opt.out_path.empty()) {
        out << text;
        out.flush();
    } else {
        write_file(opt.out_path, text);
    }
    for (const std::string& f : batch.failures) err << "error: " << f;
    return batch.failures.empty() ? 0 : 1;
}

void add_run_options(CLI::App* cmd, RunOptions& opt) {
    cmd->add_option("--config", opt.config_path, "TOML or JSON config file");
    cmd->add_option("--set", opt.overrides, "Override a config key (key=value), repeatable");
    cmd->add_option("--seeds", opt.seeds, "Seeds, e.g. 1..20 or 1,4,9");
    cmd->add_option("--algo", opt.algos, "Comma-separated algorithms (default: all)");
    cmd->add_option("--jobs", opt.jobs, "Seeds run in parallel")->check(CLI::PositiveNumber);
    cmd->add_option("--out", opt.out_path, "Write CSV here instead of stdout");
    cmd->add_flag("--summary", opt.summary, "Append mean/stddev rows as # comments");
    cmd->add_flag("--timing", opt.timing, "Record wall-clock runtime (output is then not reproducible)");
}

int cmd_verify(std::uint64_t seed, int instances, std::ostream& out) {
    bool all = true;
    for (const oracle::SuiteResult& r : oracle::run_suites(seed, instances)) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases): " << r.detail << "\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coflow routing and bandwidth allocation experiments", "coflowctl"};
    app.require_subcommand(1);

    RunOptions topo_opt, off_opt, on_opt, sweep_opt;
    bool pretty = false;
    auto* topo = app.add_subcommand("topo", "Print the configured FatTree as JSON");
    topo->add_option("--config", topo_opt.config_path, "TOML or JSON config file");
    topo->add_option("--set", topo_opt.overrides, "Override a config key (key=value), repeatable");
    topo->add_option("--out", topo_opt.out_path, "Write JSON here instead of stdout");
    topo->add_flag("--pretty", pretty, "Indent the JSON");

    auto* offline = app.add_subcommand("offline", "One random coflow on a noisy FatTree per seed");
    add_run_options(offline, off_opt);
    auto* online = app.add_subcommand("online", "Poisson coflow arrivals with preemptive rescheduling");
    add_run_options(online, on_opt);
    on_opt.seeds = "1..10";

    std::string sweep_text, mode = "offline";
    auto* sweep = app.add_subcommand("sweep", "Repeat offline or online runs over a range of one key");
    sweep->add_option("range", sweep_text, "key=lo..hi:step")->required();
    sweep->add_option("--mode", mode, "offline or online")->check(CLI::IsMember({"offline", "online"}));
    add_run_options(sweep, sweep_opt);

    std::uint64_t verify_seed = 1;
    int verify_instances = 100;
    auto* verify = app.add_subcommand("verify", "Run the oracle-equivalence suites");
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--instances", verify_instances, "Instances per suite")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*topo) {
            const OfflineConfig cfg = load<OfflineConfig>(topo_opt);
            const std::string json = topology_to_json(fat_tree(cfg.k, cfg.alpha_over, cfg.link_capacity), pretty ? 2 : -1) + "\n";
            if (topo_opt.out_path.empty()) {
                out << json;
            } else {
                write_file(topo_opt.out_path, json);
            }
            return 0;
        }
        if (*offline) {
            const auto cfg = load<OfflineConfig>(off_opt);
            return emit(run_offline_batch(cfg, parse_seeds(off_opt.seeds), algorithms_for(off_opt, cfg, names_algorithm(off_opt)), off_opt),
                        off_opt, out, err);
        }
        if (*online) {
            const auto cfg = load<OnlineConfig>(on_opt);
            return emit(run_online_batch(cfg, parse_seeds(on_opt.seeds), algorithms_for(on_opt, cfg, names_algorithm(on_opt)), on_opt),
                        on_opt, out, err);
        }
        if (*sweep) {
            const SweepSpec spec = parse_sweep(sweep_text);
            Batch all;
            for (const std::string& value : spec.values) {
                RunOptions point = sweep_opt;
                point.overrides.push_back(spec.key + "=" + value);
                Batch b;
                if (mode == "online") {
                    if (!sweep->count("--seeds")) point.seeds = "1..10";
                    const auto cfg = load<OnlineConfig>(point);
                    b = run_online_batch(cfg, parse_seeds(point.seeds), algorithms_for(point, cfg, names_algorithm(point)), point);
                } else {
                    const auto cfg = load<OfflineConfig>(point);
                    b = run_offline_batch(cfg, parse_seeds(point.seeds), algorithms_for(point, cfg, names_algorithm(point)), point);
                }
                all.rows.insert(all.rows.end(), b.rows.begin(), b.rows.end());
                all.failures.insert(all.failures.end(), b.failures.begin(), b.failures.end());
            }
            return emit(all, sweep_opt, out, err);
        }
        if (*verify) return cmd_verify(verify_seed, verify_instances, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace coflow::cli
