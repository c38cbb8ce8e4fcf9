#include "lwa/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lwa::metrics {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string to_csv(const Report& report) {
    if (report.records.empty()) throw std::logic_error("cannot write an empty report");
    std::ostringstream os;
    os << "t_s,offered_bps,lte_tx_bps,wifi_tx_bps,sink_goodput_bps,ooo_raw_fraction,"
          "reorder_skipped,reorder_late,q_lte_pkts,q_wifi_pkts,mode,share_wifi\n";
    for (const auto& r : report.records) {
        os << fmt(r.t_s) << ',' << fmt(r.offered_bps) << ',' << fmt(r.lte_tx_bps) << ','
           << fmt(r.wifi_tx_bps) << ',' << fmt(r.sink_goodput_bps) << ','
           << fmt(r.ooo_raw_fraction) << ',' << r.reorder_skipped << ',' << r.reorder_late << ','
           << r.q_lte_pkts << ',' << r.q_wifi_pkts << ','
           << (r.mode == flowctl::Mode::Lwa ? "lwa" : "switch") << ',' << fmt(r.share_wifi)
           << '\n';
    }
    return os.str();
}

void write_csv(const Report& report, std::ostream& os) { os << to_csv(report); }

void write_csv_file(const Report& report, const std::string& path) {
    std::string body = to_csv(report);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << body;
    if (!out) throw IoError("short write: " + path);
}

}  // namespace lwa::metrics
