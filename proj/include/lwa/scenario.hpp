#pragma once
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lwa/channel.hpp"
#include "lwa/flowctl.hpp"
#include "lwa/reorder.hpp"
#include "lwa/traffic.hpp"

namespace lwa::scenario {

struct ControllerConfig {
    double peak_lte_bps = 14e6;
    double factor = 0.8;
    double base_b = flowctl::kDefaultBaseBacklog;
    double max_step = flowctl::kDefaultMaxStep;
    int sensing_frames = flowctl::kDefaultSensingFrames;
    int load_frames = flowctl::kDefaultLoadWindowFrames;
    flowctl::LinkId switch_link = flowctl::LinkId::Lte;
};

struct ReorderConfig {
    std::size_t window_size = reorder::kDefaultWindow;
    double hold_timer_ms = reorder::kDefaultHoldTimerMs;
    bool enabled = true;
};

struct Scenario {
    std::string name = "custom";
    double duration_s = 10.0;
    std::uint64_t seed = 1;
    traffic::Profile traffic = traffic::CbrProfile{};
    channel::LteConfig lte{};
    channel::WifiConfig wifi{};
    ControllerConfig controller{};
    ReorderConfig reorder{};
    std::size_t sdu_size_bytes = traffic::kDefaultSduBytes;
};

/// Throws ConfigError naming the offending field path.
void validate(const Scenario& s);

/// Parses the sectioned key=value text format, or JSON when the input
/// starts with '{'. See the scenarios/ directory for commented examples.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

std::vector<std::string> preset_names();
bool is_preset(std::string_view name);
Scenario preset(std::string_view name);

/// Resolves either "presets:<name>" or a filesystem path.
Scenario resolve_scenario(const std::string& ref);

}  // namespace lwa::scenario
