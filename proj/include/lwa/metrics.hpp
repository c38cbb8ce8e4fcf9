#pragma once
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "lwa/flowctl.hpp"

namespace lwa::metrics {

inline constexpr double kIntervalS = 0.1;  // one row per 100 ms

/// One 100 ms interval. t_s is the interval start; rates are averaged over
/// the interval; queue depths, mode and share are sampled at its end.
struct MetricsRecord {
    double t_s = 0.0;
    double offered_bps = 0.0;
    double lte_tx_bps = 0.0;
    double wifi_tx_bps = 0.0;
    double sink_goodput_bps = 0.0;
    double ooo_raw_fraction = 0.0;
    std::uint64_t reorder_skipped = 0;  // increments within the interval
    std::uint64_t reorder_late = 0;
    std::uint64_t q_lte_pkts = 0;
    std::uint64_t q_wifi_pkts = 0;
    flowctl::Mode mode = flowctl::Mode::Switch;
    double share_wifi = 0.0;
};

struct Summary {
    std::uint64_t sourced_sdus = 0;
    std::uint64_t delivered_sdus = 0;
    std::uint64_t integrity_failures = 0;
    std::uint64_t lte_merged = 0;
    std::uint64_t wifi_merged = 0;
    std::uint64_t lte_routed = 0;
    std::uint64_t wifi_routed = 0;
    std::uint64_t wifi_dropped = 0;
    std::uint64_t reorder_skipped = 0;
    std::uint64_t reorder_late = 0;
    std::uint64_t reorder_duplicates = 0;
    std::uint64_t reorder_buffered_end = 0;
    std::uint64_t merged_arrivals = 0;
    std::uint64_t ooo_raw_count = 0;
    double ooo_raw_fraction = 0.0;
    std::uint64_t ooo_sink_count = 0;  // measured after the reorder stage
    double ooo_sink_fraction = 0.0;
    double mean_offered_bps = 0.0;
    double mean_goodput_bps = 0.0;
    bool conservation_ok = false;
};

struct Report {
    std::string scenario_name;
    std::uint64_t seed = 0;
    std::vector<MetricsRecord> records;
    Summary summary;
};

/// Deterministic CSV: fixed header, one row per interval, floats printed
/// with six significant digits. Throws on an empty report.
std::string to_csv(const Report& report);
void write_csv(const Report& report, std::ostream& os);
void write_csv_file(const Report& report, const std::string& path);  // IoError

}  // namespace lwa::metrics
