#include "lwa/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace lwa::scenario {

namespace {

using Kv = std::map<std::string, std::string>;
using Sections = std::map<std::string, Kv>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(path, "expected a number, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        std::uint64_t n = std::stoull(v, &pos, 0);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError(path, "expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& path, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(path, "expected true/false, got '" + v + "'");
}

flowctl::LinkId to_link(const std::string& path, const std::string& v) {
    if (v == "lte") return flowctl::LinkId::Lte;
    if (v == "wifi") return flowctl::LinkId::Wifi;
    throw ConfigError(path, "expected lte or wifi, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

Sections tokenize(const std::string& text) {
    Sections sections;
    std::string section;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno), "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno), "expected key = value");
        sections[section][key] = val;
    }
    return sections;
}

// Pops `key`; empty optional when absent.
std::optional<std::string> take(Kv& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
}

void reject_leftovers(const Kv& kv, const std::string& section) {
    if (kv.empty()) return;
    std::string path = section.empty() ? kv.begin()->first : section + "." + kv.begin()->first;
    throw ConfigError(path, "unknown key");
}

traffic::Profile parse_traffic(Kv kv) {
    auto kind = take(kv, "profile");
    if (!kind) throw ConfigError("traffic.profile", "missing");
    traffic::Profile out;
    if (*kind == "cbr") {
        traffic::CbrProfile p;
        if (auto v = take(kv, "rate_bps")) p.rate_bps = to_double("traffic.rate_bps", *v);
        out = p;
    } else if (*kind == "ramp") {
        traffic::RampProfile p;
        if (auto v = take(kv, "start_bps")) p.start_bps = to_double("traffic.start_bps", *v);
        if (auto v = take(kv, "step_bps")) p.step_bps = to_double("traffic.step_bps", *v);
        if (auto v = take(kv, "period_s")) p.period_s = to_double("traffic.period_s", *v);
        out = p;
    } else if (*kind == "schedule") {
        traffic::ScheduleProfile p;
        if (auto v = take(kv, "points")) {
            for (const auto& pt : split(*v, ',')) {
                auto parts = split(pt, ':');
                if (parts.size() != 2)
                    throw ConfigError("traffic.points", "expected t:rate pairs, got '" + pt + "'");
                p.points.push_back({to_double("traffic.points", parts[0]),
                                    to_double("traffic.points", parts[1])});
            }
        }
        out = p;
    } else {
        throw ConfigError("traffic.profile", "unknown profile '" + *kind + "'");
    }
    reject_leftovers(kv, "traffic");
    return out;
}

void parse_lte(Kv kv, channel::LteConfig& lte) {
    if (auto v = take(kv, "bandwidth_label")) lte.bandwidth_label = *v;
    if (auto v = take(kv, "used_subframes_per_frame"))
        lte.used_subframes_per_frame =
            static_cast<int>(to_u64("lte.used_subframes_per_frame", *v));
    if (auto v = take(kv, "tb_bytes_per_tti"))
        lte.tb_bytes_per_tti = to_u64("lte.tb_bytes_per_tti", *v);
    if (auto v = take(kv, "delay_mean_ms"))
        lte.one_way_delay.mean_ms = to_double("lte.delay_mean_ms", *v);
    if (auto v = take(kv, "delay_jitter_ms"))
        lte.one_way_delay.jitter_ms = to_double("lte.delay_jitter_ms", *v);
    if (auto v = take(kv, "max_concat")) lte.max_concat = to_u64("lte.max_concat", *v);
    if (auto v = take(kv, "capacity_schedule")) {
        for (const auto& w : split(*v, ',')) {
            auto parts = split(w, ':');
            if (parts.size() != 3)
                throw ConfigError("lte.capacity_schedule",
                                  "expected start:end:scale triples, got '" + w + "'");
            lte.capacity_schedule.push_back({to_double("lte.capacity_schedule", parts[0]),
                                             to_double("lte.capacity_schedule", parts[1]),
                                             to_double("lte.capacity_schedule", parts[2])});
        }
    }
    reject_leftovers(kv, "lte");
}

void parse_wifi(Kv kv, channel::WifiConfig& wifi) {
    if (auto v = take(kv, "rate_bps")) wifi.rate_bps = to_double("wifi.rate_bps", *v);
    if (auto v = take(kv, "delay_min_ms"))
        wifi.one_way_delay.min_ms = to_double("wifi.delay_min_ms", *v);
    if (auto v = take(kv, "delay_mode_ms"))
        wifi.one_way_delay.mode_ms = to_double("wifi.delay_mode_ms", *v);
    if (auto v = take(kv, "delay_tail_max_ms"))
        wifi.one_way_delay.tail_max_ms = to_double("wifi.delay_tail_max_ms", *v);
    if (auto v = take(kv, "loss_p")) wifi.loss_p = to_double("wifi.loss_p", *v);
    if (auto v = take(kv, "ethertype"))
        wifi.ethertype = static_cast<std::uint16_t>(to_u64("wifi.ethertype", *v));
    reject_leftovers(kv, "wifi");
}

void parse_controller(Kv kv, ControllerConfig& c) {
    if (auto v = take(kv, "peak_lte_bps")) c.peak_lte_bps = to_double("controller.peak_lte_bps", *v);
    if (auto v = take(kv, "factor")) c.factor = to_double("controller.factor", *v);
    if (auto v = take(kv, "base_b")) c.base_b = to_double("controller.base_b", *v);
    if (auto v = take(kv, "max_step")) c.max_step = to_double("controller.max_step", *v);
    if (auto v = take(kv, "sensing_frames"))
        c.sensing_frames = static_cast<int>(to_u64("controller.sensing_frames", *v));
    if (auto v = take(kv, "load_frames"))
        c.load_frames = static_cast<int>(to_u64("controller.load_frames", *v));
    if (auto v = take(kv, "switch_link")) c.switch_link = to_link("controller.switch_link", *v);
    reject_leftovers(kv, "controller");
}

void parse_reorder(Kv kv, ReorderConfig& r) {
    if (auto v = take(kv, "enabled")) r.enabled = to_bool("reorder.enabled", *v);
    if (auto v = take(kv, "window_size")) r.window_size = to_u64("reorder.window_size", *v);
    if (auto v = take(kv, "hold_timer_ms")) r.hold_timer_ms = to_double("reorder.hold_timer_ms", *v);
    reject_leftovers(kv, "reorder");
}

Scenario parse_text(const std::string& text) {
    Sections sections = tokenize(text);
    Scenario s;

    Kv root = sections.count("") ? sections[""] : Kv{};
    sections.erase("");
    if (auto v = take(root, "name")) s.name = *v;
    if (auto v = take(root, "duration_s")) s.duration_s = to_double("duration_s", *v);
    if (auto v = take(root, "seed")) s.seed = to_u64("seed", *v);
    if (auto v = take(root, "sdu_size_bytes")) s.sdu_size_bytes = to_u64("sdu_size_bytes", *v);
    reject_leftovers(root, "");

    for (auto& [section, kv] : sections) {
        if (section == "traffic")
            s.traffic = parse_traffic(std::move(kv));
        else if (section == "lte")
            parse_lte(std::move(kv), s.lte);
        else if (section == "wifi")
            parse_wifi(std::move(kv), s.wifi);
        else if (section == "controller")
            parse_controller(std::move(kv), s.controller);
        else if (section == "reorder")
            parse_reorder(std::move(kv), s.reorder);
        else
            throw ConfigError(section, "unknown section");
    }
    return s;
}

// The JSON form mirrors the sectioned text format one to one; scalar values
// are converted to strings and run through the same field dispatch.
std::string json_scalar(const std::string& path, const nlohmann::json& val) {
    if (val.is_string()) return val.get<std::string>();
    if (val.is_boolean()) return val.get<bool>() ? "true" : "false";
    if (val.is_number_integer()) return std::to_string(val.get<long long>());
    if (val.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << val.get<double>();
        return os.str();
    }
    throw ConfigError(path, "unsupported value type");
}

Kv object_to_kv(const nlohmann::json& obj, const std::string& section) {
    Kv kv;
    for (const auto& [key, val] : obj.items()) {
        std::string path = section.empty() ? key : section + "." + key;
        if (val.is_array() && (key == "capacity_schedule" || key == "points")) {
            std::ostringstream os;
            for (std::size_t i = 0; i < val.size(); ++i) {
                if (!val[i].is_array()) throw ConfigError(path, "expected an array of arrays");
                if (i) os << ", ";
                for (std::size_t j = 0; j < val[i].size(); ++j) {
                    if (j) os << ":";
                    os.precision(17);
                    os << val[i][j].get<double>();
                }
            }
            kv[key] = os.str();
        } else {
            kv[key] = json_scalar(path, val);
        }
    }
    return kv;
}

Scenario parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("json", e.what());
    }
    if (!j.is_object()) throw ConfigError("json", "top level must be an object");

    Scenario s;
    Kv root;
    for (const auto& [key, val] : j.items()) {
        if (key == "traffic")
            s.traffic = parse_traffic(object_to_kv(val, "traffic"));
        else if (key == "lte")
            parse_lte(object_to_kv(val, "lte"), s.lte);
        else if (key == "wifi")
            parse_wifi(object_to_kv(val, "wifi"), s.wifi);
        else if (key == "controller")
            parse_controller(object_to_kv(val, "controller"), s.controller);
        else if (key == "reorder")
            parse_reorder(object_to_kv(val, "reorder"), s.reorder);
        else if (val.is_object() || val.is_array())
            throw ConfigError(key, "unknown section");
        else
            root[key] = json_scalar(key, val);
    }
    if (auto v = take(root, "name")) s.name = *v;
    if (auto v = take(root, "duration_s")) s.duration_s = to_double("duration_s", *v);
    if (auto v = take(root, "seed")) s.seed = to_u64("seed", *v);
    if (auto v = take(root, "sdu_size_bytes")) s.sdu_size_bytes = to_u64("sdu_size_bytes", *v);
    reject_leftovers(root, "");
    return s;
}

}  // namespace

void validate(const Scenario& s) {
    if (!(s.duration_s > 0)) throw ConfigError("duration_s", "must be positive");
    if (s.sdu_size_bytes < traffic::kMinSduBytes)
        throw ConfigError("sdu_size_bytes", "must be at least 8");

    std::visit(
        [](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, traffic::CbrProfile>) {
                if (p.rate_bps < 0) throw ConfigError("traffic.rate_bps", "must be non-negative");
            } else if constexpr (std::is_same_v<T, traffic::RampProfile>) {
                if (!(p.period_s > 0)) throw ConfigError("traffic.period_s", "must be positive");
                if (p.start_bps < 0) throw ConfigError("traffic.start_bps", "must be non-negative");
            } else {
                if (p.points.empty()) throw ConfigError("traffic.points", "must not be empty");
                for (std::size_t i = 0; i < p.points.size(); ++i) {
                    if (p.points[i].rate_bps < 0)
                        throw ConfigError("traffic.points", "rates must be non-negative");
                    if (i && p.points[i].t_s <= p.points[i - 1].t_s)
                        throw ConfigError("traffic.points", "times must be strictly increasing");
                }
            }
        },
        s.traffic);

    if (s.lte.used_subframes_per_frame < 1 ||
        s.lte.used_subframes_per_frame > channel::kSubframesPerFrame)
        throw ConfigError("lte.used_subframes_per_frame", "must be in 1..10");
    if (s.lte.tb_bytes_per_tti < framing::kMinTbBytes)
        throw ConfigError("lte.tb_bytes_per_tti", "must be at least 5");
    if (s.lte.one_way_delay.jitter_ms < 0 ||
        s.lte.one_way_delay.mean_ms < s.lte.one_way_delay.jitter_ms)
        throw ConfigError("lte.delay_mean_ms", "delay must stay non-negative");
    if (s.lte.max_concat < 1) throw ConfigError("lte.max_concat", "must be at least 1");
    for (const auto& w : s.lte.capacity_schedule) {
        if (!(w.t_start_s < w.t_end_s))
            throw ConfigError("lte.capacity_schedule", "window start must precede its end");
        if (w.scale < 0 || w.scale > 1)
            throw ConfigError("lte.capacity_schedule", "scale must be in [0, 1]");
    }

    if (!(s.wifi.rate_bps > 0)) throw ConfigError("wifi.rate_bps", "must be positive");
    if (s.wifi.loss_p < 0 || s.wifi.loss_p >= 1)
        throw ConfigError("wifi.loss_p", "must be in [0, 1)");
    const auto& d = s.wifi.one_way_delay;
    if (!(d.min_ms >= 0 && d.min_ms < d.mode_ms && d.mode_ms < d.tail_max_ms))
        throw ConfigError("wifi.delay_mode_ms", "need 0 <= min < mode < tail_max");

    if (!(s.controller.peak_lte_bps > 0))
        throw ConfigError("controller.peak_lte_bps", "must be positive");
    if (!(s.controller.factor > 0) || s.controller.factor > 1)
        throw ConfigError("controller.factor", "must be in (0, 1]");
    if (!(s.controller.base_b > 0)) throw ConfigError("controller.base_b", "must be positive");
    if (!(s.controller.max_step > 0) || s.controller.max_step > 1)
        throw ConfigError("controller.max_step", "must be in (0, 1]");
    if (s.controller.sensing_frames < 1)
        throw ConfigError("controller.sensing_frames", "must be at least 1");
    if (s.controller.load_frames < 1)
        throw ConfigError("controller.load_frames", "must be at least 1");

    if (s.reorder.window_size < 1) throw ConfigError("reorder.window_size", "must be at least 1");
    if (!(s.reorder.hold_timer_ms > 0))
        throw ConfigError("reorder.hold_timer_ms", "must be positive");
}

Scenario parse_scenario(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    Scenario s = (first != std::string::npos && text[first] == '{') ? parse_json(text)
                                                                    : parse_text(text);
    validate(s);
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::vector<std::string> preset_names() {
    return {"fig3_9_lte",    "fig3_9_wifi", "fig3_10_lwa",
            "table3_3_sweep", "fig4_4_ramp", "fig4_5_lte_limited"};
}

bool is_preset(std::string_view name) {
    auto names = preset_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Scenario preset(std::string_view name) {
    Scenario s;
    s.name = std::string(name);
    if (name == "fig3_9_lte" || name == "fig3_9_wifi") {
        // Single-link ceiling runs: offered load far above the LTE ceiling,
        // threshold parked above the offered load so the controller stays
        // in switch mode on the chosen link.
        s.duration_s = 10.0;
        s.traffic = traffic::CbrProfile{20e6};
        s.controller.peak_lte_bps = 1e9;
        s.controller.factor = 1.0;
        s.controller.switch_link =
            name == "fig3_9_wifi" ? flowctl::LinkId::Wifi : flowctl::LinkId::Lte;
    } else if (name == "fig3_10_lwa") {
        // Stepped offered load: below the threshold, just above it, then
        // well past the combined single-link rates.
        s.duration_s = 15.0;
        s.traffic = traffic::ScheduleProfile{{{0.0, 8e6}, {2.0, 12e6}, {4.0, 25e6}}};
        s.controller.base_b = 250;
        s.reorder.window_size = 512;
        s.reorder.hold_timer_ms = 250;
    } else if (name == "table3_3_sweep") {
        // Out-of-order measurement point; the sweep reruns this scenario at
        // 10/12/14/16 Mbps with reordering on and off.
        s.duration_s = 10.0;
        s.traffic = traffic::CbrProfile{16e6};
    } else if (name == "fig4_4_ramp") {
        // Offered rate climbing through the mode threshold.
        s.duration_s = 12.0;
        s.traffic = traffic::RampProfile{4e6, 2e6, 2.0};
    } else if (name == "fig4_5_lte_limited") {
        // Fixed load; LTE capacity cut to 0.3 during [6 s, 13 s). The
        // controller is tuned to recover within a few sensing periods, and
        // the reorder window rides out the transient queue.
        s.duration_s = 15.0;
        s.traffic = traffic::CbrProfile{14e6};
        s.lte.capacity_schedule = {{6.0, 13.0, 0.3}};
        s.controller.base_b = 40;
        s.controller.max_step = 0.085;
        s.reorder.window_size = 1024;
        s.reorder.hold_timer_ms = 750;
    } else {
        throw ConfigError("scenario", "unknown preset '" + std::string(name) + "'");
    }
    validate(s);
    return s;
}

Scenario resolve_scenario(const std::string& ref) {
    constexpr std::string_view prefix = "presets:";
    if (ref.rfind(prefix, 0) == 0) return preset(ref.substr(prefix.size()));
    return load_scenario_file(ref);
}

}  // namespace lwa::scenario
