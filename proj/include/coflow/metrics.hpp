#pragma once
// Per-run metrics and their CSV form:
//   seed,algo,k,n_flows,cct_s,alloc_gbps,avg_hops,runtime_s

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coflow {

struct MetricsRecord {
    std::uint64_t seed = 0;
    std::string algo;
    int k = 0;
    int n_flows = 0;
    double cct_s = 0.0;
    double alloc_gbps = 0.0;
    double avg_hops = 0.0;
    double runtime_s = 0.0;

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

std::string_view csv_header();
/// Numbers use the shortest text that parses back to the same double.
std::string to_csv_row(const MetricsRecord& record);
/// Throws coflow::Error on a malformed row.
MetricsRecord parse_csv_row(std::string_view line);

/// Header plus one row per record, newline-terminated.
std::string to_csv(std::span<const MetricsRecord> records);
std::vector<MetricsRecord> parse_csv(std::string_view text);

/// Sorts by (seed, algo), stable for equal keys.
void sort_records(std::vector<MetricsRecord>& records);

struct SummaryRow {
    std::string algo;
    int k = 0;
    int n_flows = 0;
    std::size_t runs = 0;
    double cct_mean = 0.0, cct_stddev = 0.0;
    double alloc_mean = 0.0, alloc_stddev = 0.0;
    double hops_mean = 0.0, hops_stddev = 0.0;
    double runtime_mean = 0.0, runtime_stddev = 0.0;
};

/// Mean and sample standard deviation per (k, n_flows, algo).
std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records);
std::string format_summary(std::span<const SummaryRow> rows);

std::string format_double(double value);

}  // namespace coflow
