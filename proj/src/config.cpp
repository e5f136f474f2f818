#include "coflow/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "coflow/io.hpp"
#include "coflow/metrics.hpp"

namespace coflow {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw Error("config: key '" + std::string(key) + "' expects " + std::string(expected) + ", got '" +
                std::string(value) + "'");
}

template <class T>
T parse_integer(std::string_view key, std::string_view value) {
    T out{};
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) bad_value(key, value, "an integer");
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    const std::string s(value);
    char* end = nullptr;
    const double out = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) bad_value(key, value, "a number");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_value(key, value, "true or false");
}

template <class C>
struct Field {
    const char* key;
    std::function<void(C&, std::string_view, std::string_view)> set;
    std::function<std::string(const C&)> get;
};

#define COFLOW_INT(C, name, member)                                                                     \
    Field<C> {                                                                                          \
        name, [](C& c, std::string_view k, std::string_view v) { c.member = parse_integer<decltype(c.member)>(k, v); }, \
            [](const C& c) { return std::to_string(c.member); }                                         \
    }
#define COFLOW_REAL(C, name, member)                                                                            \
    Field<C> {                                                                                                  \
        name, [](C& c, std::string_view k, std::string_view v) { c.member = parse_real(k, v); },                \
            [](const C& c) { return format_double(c.member); }                                                  \
    }

template <class C>
std::vector<Field<C>> common_fields() {
    return {
        COFLOW_INT(C, "k", k),
        COFLOW_INT(C, "alpha_over", alpha_over),
        COFLOW_REAL(C, "link_capacity", link_capacity),
        COFLOW_INT(C, "n_flows", n_flows),
        COFLOW_REAL(C, "beta", beta),
        COFLOW_REAL(C, "v_max", v_max),
        COFLOW_REAL(C, "noise_rate_min", noise.rate_min),
        COFLOW_REAL(C, "noise_rate_max", noise.rate_max),
        COFLOW_REAL(C, "noise_max_utilization", noise.max_utilization),
        COFLOW_REAL(C, "noise_duration_min", noise.duration_min),
        COFLOW_REAL(C, "noise_duration_max", noise.duration_max),
        COFLOW_INT(C, "candidates", candidates),
        Field<C>{"algorithm", [](C& c, std::string_view, std::string_view v) { c.algorithm = parse_algorithm(v); },
                 [](const C& c) { return "\"" + std::string(algorithm_name(c.algorithm)) + "\""; }},
        COFLOW_INT(C, "seed", seed),
    };
}

const std::vector<Field<OfflineConfig>>& offline_fields() {
    static const auto fields = [] {
        auto f = common_fields<OfflineConfig>();
        f.push_back(COFLOW_INT(OfflineConfig, "noise_count", noise_count));
        return f;
    }();
    return fields;
}

const std::vector<Field<OnlineConfig>>& online_fields() {
    static const auto fields = [] {
        auto f = common_fields<OnlineConfig>();
        f.push_back(COFLOW_REAL(OnlineConfig, "coflow_rate", coflow_rate));
        f.push_back(COFLOW_REAL(OnlineConfig, "arrival_cutoff", arrival_cutoff));
        f.push_back(COFLOW_REAL(OnlineConfig, "noise_rate", noise_rate));
        f.push_back(COFLOW_REAL(OnlineConfig, "wait_threshold", wait_threshold));
        f.push_back(COFLOW_REAL(OnlineConfig, "time_limit", time_limit));
        f.push_back(Field<OnlineConfig>{
            "check_conservation",
            [](OnlineConfig& c, std::string_view k, std::string_view v) { c.check_conservation = parse_bool(k, v); },
            [](const OnlineConfig& c) { return std::string(c.check_conservation ? "true" : "false"); }});
        return f;
    }();
    return fields;
}

#undef COFLOW_INT
#undef COFLOW_REAL

template <class C>
void set_from(const std::vector<Field<C>>& fields, C& config, std::string_view key, std::string_view value) {
    for (const Field<C>& f : fields) {
        if (key == f.key) {
            f.set(config, key, trim(value));
            return;
        }
    }
    throw Error("config: unknown key '" + std::string(key) + "'");
}

template <class C>
std::string describe_from(const std::vector<Field<C>>& fields, const C& config) {
    std::string out;
    for (const Field<C>& f : fields) out += std::string(f.key) + " = " + f.get(config) + "\n";
    return out;
}

template <class C>
std::vector<std::string> keys_of(const std::vector<Field<C>>& fields) {
    std::vector<std::string> out;
    for (const Field<C>& f : fields) out.emplace_back(f.key);
    return out;
}

ConfigEntries parse_json(std::string_view text) {
    ConfigEntries out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw Error("config: JSON config must be an object");
    for (const auto& [key, value] : j.items()) {
        if (value.is_string()) {
            out.emplace_back(key, value.get<std::string>());
        } else if (value.is_number() || value.is_boolean()) {
            out.emplace_back(key, value.dump());
        } else {
            throw Error("config: key '" + key + "' must be a scalar");
        }
    }
    return out;
}

ConfigEntries parse_toml(std::string_view text) {
    ConfigEntries out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        // Strip comments outside quotes.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line = line.substr(0, i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error("config: line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        std::string_view value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty()) throw Error("config: line " + std::to_string(line_no) + ": empty key");
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

}  // namespace

ConfigEntries parse_config_text(std::string_view text) {
    const std::string_view body = trim(text);
    if (!body.empty() && body.front() == '{') return parse_json(body);
    return parse_toml(text);
}

ConfigEntries load_config_file(const std::string& path) { return parse_config_text(read_file(path)); }

std::pair<std::string, std::string> parse_override(std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw Error("override '" + std::string(assignment) + "' is not key=value");
    }
    return {std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1)))};
}

void set_param(OfflineConfig& config, std::string_view key, std::string_view value) {
    set_from(offline_fields(), config, key, value);
}
void set_param(OnlineConfig& config, std::string_view key, std::string_view value) {
    set_from(online_fields(), config, key, value);
}

std::vector<std::string> offline_keys() { return keys_of(offline_fields()); }
std::vector<std::string> online_keys() { return keys_of(online_fields()); }

std::string describe(const OfflineConfig& config) { return describe_from(offline_fields(), config); }
std::string describe(const OnlineConfig& config) { return describe_from(online_fields(), config); }

}  // namespace coflow
