#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "lwa/channel.hpp"
#include "lwa/flowctl.hpp"
#include "lwa/framing.hpp"
#include "lwa/metrics.hpp"
#include "lwa/pdcp.hpp"
#include "lwa/reorder.hpp"
#include "lwa/scenario.hpp"
#include "lwa/simulator.hpp"
#include "lwa/traffic.hpp"

namespace py = pybind11;
using namespace lwa;

namespace {

std::vector<std::uint8_t> to_vec(const py::bytes& b) {
    std::string s = b;
    return {s.begin(), s.end()};
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

// Holder so the transmit queue is a stateful object on the python side
// rather than a value-converted list.
struct PySduQueue {
    framing::SduQueue q;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "LTE-WiFi split-bearer protocol engine and dual-link simulator";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DecodeError>(m, "DecodeError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // ------------------------------------------------------------ framing
    py::class_<framing::FrameHeader>(m, "FrameHeader")
        .def(py::init([](bool start_frag, bool end_frag, int sn, std::vector<std::uint16_t> lis) {
                 framing::FrameHeader h;
                 h.start_frag = start_frag;
                 h.end_frag = end_frag;
                 h.sn = static_cast<std::uint8_t>(sn);
                 h.lis = std::move(lis);
                 return h;
             }),
             py::arg("start_frag") = false, py::arg("end_frag") = false, py::arg("sn") = 0,
             py::arg("lis") = std::vector<std::uint16_t>{})
        .def_readwrite("start_frag", &framing::FrameHeader::start_frag)
        .def_readwrite("end_frag", &framing::FrameHeader::end_frag)
        .def_readwrite("sn", &framing::FrameHeader::sn)
        .def_readwrite("lis", &framing::FrameHeader::lis)
        .def("__eq__", [](const framing::FrameHeader& a, const framing::FrameHeader& b) {
            return a == b;
        });

    py::class_<framing::FramedPdu>(m, "FramedPdu")
        .def(py::init<>())
        .def_readwrite("header", &framing::FramedPdu::header)
        .def_property(
            "payload", [](const framing::FramedPdu& p) { return to_bytes(p.payload); },
            [](framing::FramedPdu& p, const py::bytes& b) { p.payload = to_vec(b); })
        .def_readwrite("padding_len", &framing::FramedPdu::padding_len)
        .def("wire_size", &framing::FramedPdu::wire_size);

    m.def("encode", [](const framing::FramedPdu& p) { return to_bytes(framing::encode(p)); },
          "Encode a framed PDU to its wire bytes");
    m.def("decode", [](const py::bytes& b) { return framing::decode(to_vec(b)); },
          "Decode wire bytes into a framed PDU");

    py::class_<PySduQueue>(m, "SduQueue")
        .def(py::init<>())
        .def("push",
             [](PySduQueue& self, const py::bytes& b, bool continues_previous) {
                 self.q.push_back({to_vec(b), continues_previous});
             },
             py::arg("sdu"), py::arg("continues_previous") = false)
        .def("__len__", [](const PySduQueue& self) { return self.q.size(); });

    py::class_<framing::PduBuilder>(m, "PduBuilder")
        .def(py::init<std::size_t>(), py::arg("max_concat") = framing::kDefaultMaxConcat)
        .def("build",
             [](framing::PduBuilder& b, PySduQueue& q, std::size_t tb_bytes) {
                 return b.build(q.q, tb_bytes);
             },
             py::arg("queue"), py::arg("tb_bytes"))
        .def_property_readonly("next_sn", &framing::PduBuilder::next_sn);

    py::class_<framing::ReassemblyStats>(m, "ReassemblyStats")
        .def_readonly("sdus_out", &framing::ReassemblyStats::sdus_out)
        .def_readonly("partials_discarded", &framing::ReassemblyStats::partials_discarded)
        .def_readonly("orphan_fragments", &framing::ReassemblyStats::orphan_fragments)
        .def_readonly("sequence_resets", &framing::ReassemblyStats::sequence_resets);

    py::class_<framing::Reassembler>(m, "Reassembler")
        .def(py::init<>())
        .def("feed",
             [](framing::Reassembler& r, const framing::FramedPdu& pdu) {
                 py::list out;
                 for (const auto& sdu : r.feed(pdu)) out.append(to_bytes(sdu));
                 return out;
             })
        .def_property_readonly("stats", &framing::Reassembler::stats,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("partial_open", &framing::Reassembler::partial_open);

    // --------------------------------------------------------------- pdcp
    py::class_<pdcp::PdcpPdu>(m, "PdcpPdu")
        .def(py::init([](int sn, const py::bytes& payload) {
                 return pdcp::PdcpPdu{static_cast<std::uint16_t>(sn), to_vec(payload), 0.0};
             }),
             py::arg("sn"), py::arg("payload"))
        .def_readwrite("sn", &pdcp::PdcpPdu::sn)
        .def_property(
            "payload", [](const pdcp::PdcpPdu& p) { return to_bytes(p.payload); },
            [](pdcp::PdcpPdu& p, const py::bytes& b) { p.payload = to_vec(b); });

    py::class_<pdcp::Transmitter>(m, "PdcpTransmitter")
        .def(py::init<>())
        .def("wrap",
             [](pdcp::Transmitter& tx, const py::bytes& sdu, double now_ms) {
                 return tx.wrap(to_vec(sdu), now_ms);
             },
             py::arg("sdu"), py::arg("now_ms") = 0.0)
        .def_property_readonly("next_sn", &pdcp::Transmitter::next_sn);

    m.def("pdcp_serialize", [](const pdcp::PdcpPdu& p) { return to_bytes(pdcp::serialize(p)); });
    m.def("pdcp_parse", [](const py::bytes& b) { return pdcp::parse(to_vec(b)); });

    // ------------------------------------------------------------ flowctl
    py::enum_<flowctl::Mode>(m, "Mode")
        .value("SWITCH", flowctl::Mode::Switch)
        .value("LWA", flowctl::Mode::Lwa);
    py::enum_<flowctl::LinkId>(m, "LinkId")
        .value("LTE", flowctl::LinkId::Lte)
        .value("WIFI", flowctl::LinkId::Wifi);

    py::class_<flowctl::BacklogDelta>(m, "BacklogDelta")
        .def(py::init<long, long>(), py::arg("d_lte") = 0, py::arg("d_wifi") = 0)
        .def_readwrite("d_lte", &flowctl::BacklogDelta::d_lte)
        .def_readwrite("d_wifi", &flowctl::BacklogDelta::d_wifi);

    m.def("threshold_bytes", &flowctl::threshold_bytes, py::arg("peak_lte_bps"),
          py::arg("factor"), "Mode threshold in bytes per load window");
    m.def("select_mode", &flowctl::select_mode, py::arg("window_bytes"), py::arg("threshold"));

    py::class_<flowctl::FlowController>(m, "FlowController")
        .def(py::init([](double threshold, double base_b, double max_step, int sensing_frames,
                         int load_frames, flowctl::LinkId switch_link) {
                 flowctl::Config cfg;
                 cfg.threshold_bytes_per_window = threshold;
                 cfg.base_backlog_pkts = base_b;
                 cfg.max_step = max_step;
                 cfg.sensing_period_frames = sensing_frames;
                 cfg.load_window_frames = load_frames;
                 cfg.switch_link = switch_link;
                 return flowctl::FlowController(cfg);
             }),
             py::arg("threshold_bytes_per_window"),
             py::arg("base_b") = flowctl::kDefaultBaseBacklog,
             py::arg("max_step") = flowctl::kDefaultMaxStep,
             py::arg("sensing_frames") = flowctl::kDefaultSensingFrames,
             py::arg("load_frames") = flowctl::kDefaultLoadWindowFrames,
             py::arg("switch_link") = flowctl::LinkId::Lte)
        .def("offer_load", &flowctl::FlowController::offer_load, py::arg("bytes"),
             py::arg("frame_clock"))
        .def("sense", &flowctl::FlowController::sense, py::arg("q_lte_pkts"),
             py::arg("q_wifi_pkts"), py::arg("frame_clock"))
        .def("apply", &flowctl::FlowController::apply)
        .def("route", &flowctl::FlowController::route)
        .def_property_readonly("mode", &flowctl::FlowController::mode)
        .def_property_readonly("share_wifi", &flowctl::FlowController::share_wifi)
        .def_property_readonly("load_accum_bytes", &flowctl::FlowController::load_accum_bytes);

    // ------------------------------------------------------------ reorder
    m.def("sn_after", &reorder::sn_after, py::arg("a"), py::arg("b"),
          "True iff b follows a in the 12-bit modular half-range");

    py::class_<reorder::Stats>(m, "ReorderStats")
        .def_readonly("delivered", &reorder::Stats::delivered)
        .def_readonly("skipped_lost", &reorder::Stats::skipped_lost)
        .def_readonly("late_dropped", &reorder::Stats::late_dropped)
        .def_readonly("duplicates", &reorder::Stats::duplicates);

    py::class_<reorder::ReorderBuffer>(m, "ReorderBuffer")
        .def(py::init([](std::size_t window_size, double hold_timer_ms) {
                 return reorder::ReorderBuffer({window_size, hold_timer_ms});
             }),
             py::arg("window_size") = reorder::kDefaultWindow,
             py::arg("hold_timer_ms") = reorder::kDefaultHoldTimerMs)
        .def("feed", &reorder::ReorderBuffer::feed, py::arg("pdu"), py::arg("now_ms"))
        .def("flush", &reorder::ReorderBuffer::flush, py::arg("now_ms"))
        .def("drain", &reorder::ReorderBuffer::drain)
        .def_property_readonly("stats", &reorder::ReorderBuffer::stats,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("buffered", &reorder::ReorderBuffer::buffered);

    // ------------------------------------------------------------ channel
    m.def("encap_eth",
          [](const py::bytes& payload, int ethertype) {
              return to_bytes(channel::encap_eth(to_vec(payload), channel::kUeMac,
                                                 channel::kEnbMac,
                                                 static_cast<std::uint16_t>(ethertype)));
          },
          py::arg("payload"), py::arg("ethertype") = channel::kDefaultEthertype);
    m.def("decap_eth", [](const py::bytes& frame) {
        channel::EthFrame f = channel::decap_eth(to_vec(frame));
        return py::make_tuple(f.ethertype, to_bytes(f.payload));
    });

    // ----------------------------------------------------------- scenario
    py::class_<channel::LteDelayModel>(m, "LteDelayModel")
        .def_readwrite("mean_ms", &channel::LteDelayModel::mean_ms)
        .def_readwrite("jitter_ms", &channel::LteDelayModel::jitter_ms);

    py::class_<channel::CapacityWindow>(m, "CapacityWindow")
        .def(py::init<double, double, double>(), py::arg("t_start_s"), py::arg("t_end_s"),
             py::arg("scale"))
        .def_readwrite("t_start_s", &channel::CapacityWindow::t_start_s)
        .def_readwrite("t_end_s", &channel::CapacityWindow::t_end_s)
        .def_readwrite("scale", &channel::CapacityWindow::scale);

    py::class_<channel::LteConfig>(m, "LteConfig")
        .def_readwrite("bandwidth_label", &channel::LteConfig::bandwidth_label)
        .def_readwrite("used_subframes_per_frame", &channel::LteConfig::used_subframes_per_frame)
        .def_readwrite("tb_bytes_per_tti", &channel::LteConfig::tb_bytes_per_tti)
        .def_readwrite("one_way_delay", &channel::LteConfig::one_way_delay)
        .def_readwrite("capacity_schedule", &channel::LteConfig::capacity_schedule)
        .def_readwrite("max_concat", &channel::LteConfig::max_concat);

    py::class_<channel::WifiDelayModel>(m, "WifiDelayModel")
        .def_readwrite("min_ms", &channel::WifiDelayModel::min_ms)
        .def_readwrite("mode_ms", &channel::WifiDelayModel::mode_ms)
        .def_readwrite("tail_max_ms", &channel::WifiDelayModel::tail_max_ms);

    py::class_<channel::WifiConfig>(m, "WifiConfig")
        .def_readwrite("rate_bps", &channel::WifiConfig::rate_bps)
        .def_readwrite("one_way_delay", &channel::WifiConfig::one_way_delay)
        .def_readwrite("loss_p", &channel::WifiConfig::loss_p)
        .def_readwrite("ethertype", &channel::WifiConfig::ethertype);

    py::class_<scenario::ControllerConfig>(m, "ControllerConfig")
        .def_readwrite("peak_lte_bps", &scenario::ControllerConfig::peak_lte_bps)
        .def_readwrite("factor", &scenario::ControllerConfig::factor)
        .def_readwrite("base_b", &scenario::ControllerConfig::base_b)
        .def_readwrite("max_step", &scenario::ControllerConfig::max_step)
        .def_readwrite("sensing_frames", &scenario::ControllerConfig::sensing_frames)
        .def_readwrite("load_frames", &scenario::ControllerConfig::load_frames)
        .def_readwrite("switch_link", &scenario::ControllerConfig::switch_link);

    py::class_<scenario::ReorderConfig>(m, "ReorderConfig")
        .def_readwrite("window_size", &scenario::ReorderConfig::window_size)
        .def_readwrite("hold_timer_ms", &scenario::ReorderConfig::hold_timer_ms)
        .def_readwrite("enabled", &scenario::ReorderConfig::enabled);

    py::class_<scenario::Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &scenario::Scenario::name)
        .def_readwrite("duration_s", &scenario::Scenario::duration_s)
        .def_readwrite("seed", &scenario::Scenario::seed)
        .def_readwrite("sdu_size_bytes", &scenario::Scenario::sdu_size_bytes)
        .def_readwrite("lte", &scenario::Scenario::lte)
        .def_readwrite("wifi", &scenario::Scenario::wifi)
        .def_readwrite("controller", &scenario::Scenario::controller)
        .def_readwrite("reorder", &scenario::Scenario::reorder)
        .def_property(
            "reorder_enabled",
            [](const scenario::Scenario& s) { return s.reorder.enabled; },
            [](scenario::Scenario& s, bool v) { s.reorder.enabled = v; })
        .def("set_cbr",
             [](scenario::Scenario& s, double rate_bps) {
                 s.traffic = traffic::CbrProfile{rate_bps};
             })
        .def("set_ramp",
             [](scenario::Scenario& s, double start_bps, double step_bps, double period_s) {
                 s.traffic = traffic::RampProfile{start_bps, step_bps, period_s};
             })
        .def("set_schedule", [](scenario::Scenario& s,
                                const std::vector<std::pair<double, double>>& pts) {
            traffic::ScheduleProfile p;
            for (auto [t, r] : pts) p.points.push_back({t, r});
            s.traffic = p;
        });

    m.def("parse_scenario", &scenario::parse_scenario);
    m.def("load_scenario_file", &scenario::load_scenario_file);
    m.def("preset", &scenario::preset);
    m.def("preset_names", &scenario::preset_names);
    m.def("validate", &scenario::validate);

    // ------------------------------------------------------------ metrics
    py::class_<metrics::MetricsRecord>(m, "MetricsRecord")
        .def_readonly("t_s", &metrics::MetricsRecord::t_s)
        .def_readonly("offered_bps", &metrics::MetricsRecord::offered_bps)
        .def_readonly("lte_tx_bps", &metrics::MetricsRecord::lte_tx_bps)
        .def_readonly("wifi_tx_bps", &metrics::MetricsRecord::wifi_tx_bps)
        .def_readonly("sink_goodput_bps", &metrics::MetricsRecord::sink_goodput_bps)
        .def_readonly("ooo_raw_fraction", &metrics::MetricsRecord::ooo_raw_fraction)
        .def_readonly("reorder_skipped", &metrics::MetricsRecord::reorder_skipped)
        .def_readonly("reorder_late", &metrics::MetricsRecord::reorder_late)
        .def_readonly("q_lte_pkts", &metrics::MetricsRecord::q_lte_pkts)
        .def_readonly("q_wifi_pkts", &metrics::MetricsRecord::q_wifi_pkts)
        .def_readonly("mode", &metrics::MetricsRecord::mode)
        .def_readonly("share_wifi", &metrics::MetricsRecord::share_wifi);

    py::class_<metrics::Summary>(m, "Summary")
        .def_readonly("sourced_sdus", &metrics::Summary::sourced_sdus)
        .def_readonly("delivered_sdus", &metrics::Summary::delivered_sdus)
        .def_readonly("integrity_failures", &metrics::Summary::integrity_failures)
        .def_readonly("wifi_dropped", &metrics::Summary::wifi_dropped)
        .def_readonly("reorder_skipped", &metrics::Summary::reorder_skipped)
        .def_readonly("reorder_late", &metrics::Summary::reorder_late)
        .def_readonly("reorder_duplicates", &metrics::Summary::reorder_duplicates)
        .def_readonly("merged_arrivals", &metrics::Summary::merged_arrivals)
        .def_readonly("ooo_raw_fraction", &metrics::Summary::ooo_raw_fraction)
        .def_readonly("ooo_sink_fraction", &metrics::Summary::ooo_sink_fraction)
        .def_readonly("mean_offered_bps", &metrics::Summary::mean_offered_bps)
        .def_readonly("mean_goodput_bps", &metrics::Summary::mean_goodput_bps)
        .def_readonly("conservation_ok", &metrics::Summary::conservation_ok);

    py::class_<metrics::Report>(m, "Report")
        .def_readonly("scenario_name", &metrics::Report::scenario_name)
        .def_readonly("seed", &metrics::Report::seed)
        .def_readonly("records", &metrics::Report::records)
        .def_readonly("summary", &metrics::Report::summary);

    m.def("to_csv", &metrics::to_csv);
    m.def("write_csv_file", &metrics::write_csv_file, py::arg("report"), py::arg("path"));

    // ---------------------------------------------------------- simulator
    m.def("run", &sim::run, py::arg("scenario"),
          "Run the dual-link simulation and return the metrics report");
}
