#include "coflow/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "coflow/network.hpp"

namespace coflow {

std::string_view csv_header() { return "seed,algo,k,n_flows,cct_s,alloc_gbps,avg_hops,runtime_s"; }

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv_row(const MetricsRecord& r) {
    if (r.algo.find_first_of(",\n\"") != std::string::npos) throw Error("csv: algorithm name needs quoting");
    std::string out = std::to_string(r.seed);
    out += ',';
    out += r.algo;
    out += ',' + std::to_string(r.k) + ',' + std::to_string(r.n_flows);
    for (double v : {r.cct_s, r.alloc_gbps, r.avg_hops, r.runtime_s}) {
        out += ',';
        out += format_double(v);
    }
    return out;
}

namespace {

template <class T>
T parse_number(std::string_view field, std::string_view what) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw Error("csv: bad " + std::string(what) + " '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

MetricsRecord parse_csv_row(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (fields.size() != 8) throw Error("csv: expected 8 fields, got " + std::to_string(fields.size()));
    MetricsRecord r;
    r.seed = parse_number<std::uint64_t>(fields[0], "seed");
    r.algo = std::string(fields[1]);
    r.k = parse_number<int>(fields[2], "k");
    r.n_flows = parse_number<int>(fields[3], "n_flows");
    r.cct_s = parse_number<double>(fields[4], "cct_s");
    r.alloc_gbps = parse_number<double>(fields[5], "alloc_gbps");
    r.avg_hops = parse_number<double>(fields[6], "avg_hops");
    r.runtime_s = parse_number<double>(fields[7], "runtime_s");
    return r;
}

std::string to_csv(std::span<const MetricsRecord> records) {
    std::string out(csv_header());
    out += '\n';
    for (const MetricsRecord& r : records) {
        out += to_csv_row(r);
        out += '\n';
    }
    return out;
}

std::vector<MetricsRecord> parse_csv(std::string_view text) {
    std::vector<MetricsRecord> out;
    bool header = true;
    // Lines starting with # (summary blocks) are skipped.
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (header) {
            if (line != csv_header()) throw Error("csv: unexpected header '" + std::string(line) + "'");
            header = false;
            continue;
        }
        if (line.empty() || line.front() == '#') continue;
        out.push_back(parse_csv_row(line));
    }
    if (header) throw Error("csv: missing header");
    return out;
}

void sort_records(std::vector<MetricsRecord>& records) {
    std::stable_sort(records.begin(), records.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
        return std::tie(a.seed, a.algo) < std::tie(b.seed, b.algo);
    });
}

std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records) {
    std::map<std::tuple<int, int, std::string>, std::vector<const MetricsRecord*>> groups;
    for (const MetricsRecord& r : records) groups[{r.k, r.n_flows, r.algo}].push_back(&r);
    std::vector<SummaryRow> out;
    for (const auto& [key, rows] : groups) {
        SummaryRow s;
        std::tie(s.k, s.n_flows, s.algo) = key;
        s.runs = rows.size();
        auto stats = [&](auto field, double& mean, double& sd) {
            double sum = 0.0;
            for (const MetricsRecord* r : rows) sum += r->*field;
            mean = sum / static_cast<double>(rows.size());
            double sq = 0.0;
            for (const MetricsRecord* r : rows) sq += (r->*field - mean) * (r->*field - mean);
            sd = rows.size() > 1 ? std::sqrt(sq / static_cast<double>(rows.size() - 1)) : 0.0;
        };
        stats(&MetricsRecord::cct_s, s.cct_mean, s.cct_stddev);
        stats(&MetricsRecord::alloc_gbps, s.alloc_mean, s.alloc_stddev);
        stats(&MetricsRecord::avg_hops, s.hops_mean, s.hops_stddev);
        stats(&MetricsRecord::runtime_s, s.runtime_mean, s.runtime_stddev);
        out.push_back(std::move(s));
    }
    return out;
}

std::string format_summary(std::span<const SummaryRow> rows) {
    std::ostringstream os;
    os << "# summary: algo,k,n_flows,runs,cct_mean,cct_sd,alloc_mean,alloc_sd,hops_mean,hops_sd,runtime_mean,runtime_sd\n";
    for (const SummaryRow& s : rows) {
        os << "# " << s.algo << ',' << s.k << ',' << s.n_flows << ',' << s.runs;
        for (double v : {s.cct_mean, s.cct_stddev, s.alloc_mean, s.alloc_stddev, s.hops_mean, s.hops_stddev,
                         s.runtime_mean, s.runtime_stddev}) {
            os << ',' << format_double(v);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace coflow
