#include "lwa/flowctl.hpp"

#include <algorithm>

namespace lwa::flowctl {

double threshold_bytes(double peak_lte_bps, double factor) {
    if (!(factor > 0.0) || factor > 1.0)
        throw ConfigError("controller.factor", "threshold factor must be in (0, 1]");
    if (!(peak_lte_bps > 0.0))
        throw ConfigError("controller.peak_lte_bps", "peak rate must be positive");
    return peak_lte_bps * factor / 8.0;
}

Mode select_mode(double window_bytes, double threshold) {
    return window_bytes < threshold ? Mode::Switch : Mode::Lwa;
}

double additive_ratio_policy(double share, const BacklogDelta& d, const Config& cfg) {
    auto step = [&](long growth) {
        return std::clamp(static_cast<double>(growth) / cfg.base_backlog_pkts, 0.0, cfg.max_step);
    };
    if (d.d_lte > 0 && d.d_wifi <= 0) return std::min(1.0, share + step(d.d_lte));
    if (d.d_wifi > 0 && d.d_lte <= 0) return std::max(0.0, share - step(d.d_wifi));
    return share;  // both saturated, or neither
}

FlowController::FlowController(Config cfg, RatioPolicy policy)
    : cfg_(cfg), policy_(std::move(policy)) {
    if (!(cfg_.threshold_bytes_per_window > 0.0))
        throw ConfigError("controller.threshold", "load threshold must be positive");
}

void FlowController::enter(Mode m) {
    if (m == mode_) return;
    mode_ = m;
    if (mode_ == Mode::Lwa) {
        share_wifi_ = kDefaultShare;
        wrr_credit_ = kDefaultShare;
    }
    snapshot_valid_ = false;
}

std::optional<Mode> FlowController::offer_load(std::uint64_t bytes, long frame_clock) {
    std::optional<Mode> decision;
    while (frame_clock >= window_start_frame_ + cfg_.load_window_frames) {
        decision = select_mode(l_i_, cfg_.threshold_bytes_per_window);
        enter(*decision);
        l_i_ = 0.0;
        window_start_frame_ += cfg_.load_window_frames;
    }
    l_i_ += static_cast<double>(bytes);
    return decision;
}

std::optional<BacklogDelta> FlowController::sense(long q_lte_pkts, long q_wifi_pkts,
                                                  long frame_clock) {
    if (mode_ != Mode::Lwa) return std::nullopt;
    if (!snapshot_valid_) {
        q_lte_prev_ = q_lte_pkts;
        q_wifi_prev_ = q_wifi_pkts;
        snapshot_frame_ = frame_clock;
        snapshot_valid_ = true;
        return std::nullopt;
    }
    if (frame_clock < snapshot_frame_ + cfg_.sensing_period_frames) return std::nullopt;
    BacklogDelta d{q_lte_pkts - q_lte_prev_, q_wifi_pkts - q_wifi_prev_};
    q_lte_prev_ = q_lte_pkts;
    q_wifi_prev_ = q_wifi_pkts;
    snapshot_frame_ = frame_clock;
    return d;
}

void FlowController::apply(const BacklogDelta& delta) {
    if (mode_ != Mode::Lwa) return;
    share_wifi_ = std::clamp(policy_(share_wifi_, delta, cfg_), 0.0, 1.0);
}

LinkId FlowController::route() {
    if (mode_ == Mode::Switch) return cfg_.switch_link;
    wrr_credit_ += share_wifi_;
    if (wrr_credit_ >= 1.0) {
        wrr_credit_ -= 1.0;
        return LinkId::Wifi;
    }
    return LinkId::Lte;
}

}  // namespace lwa::flowctl
