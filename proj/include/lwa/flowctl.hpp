#pragma once
#include <cstdint>
#include <functional>
#include <optional>

#include "lwa/errors.hpp"

namespace lwa::flowctl {

enum class Mode { Switch, Lwa };
enum class LinkId { Lte, Wifi };

inline constexpr int kFrameMs = 10;
inline constexpr int kDefaultLoadWindowFrames = 100;  // 1 s
inline constexpr int kDefaultSensingFrames = 10;      // 0.1 s
inline constexpr double kDefaultBaseBacklog = 1000.0;
inline constexpr double kDefaultMaxStep = 0.25;
inline constexpr double kDefaultShare = 0.5;  // 1:1 on entering Lwa

/// Load threshold in bytes per load window: peak LTE rate scaled by a
/// margin factor, over a one second window.
double threshold_bytes(double peak_lte_bps, double factor);

/// Switch below the threshold, Lwa at or above it.
Mode select_mode(double window_bytes, double threshold);

/// Queue growth over one sensing period, in packets. Positive growth means
/// the link could not drain what it was given.
struct BacklogDelta {
    long d_lte = 0;
    long d_wifi = 0;
};

struct Config {
    double threshold_bytes_per_window = 0.0;  // l_th, must be > 0
    double base_backlog_pkts = kDefaultBaseBacklog;
    double max_step = kDefaultMaxStep;
    int load_window_frames = kDefaultLoadWindowFrames;
    int sensing_period_frames = kDefaultSensingFrames;
    LinkId switch_link = LinkId::Lte;
};

/// Share adjustment policy: maps (current share, deltas) to the new WiFi
/// share. The default shifts the share by the saturated side's growth
/// divided by base_backlog_pkts, clamped to max_step per period.
using RatioPolicy = std::function<double(double share, const BacklogDelta&, const Config&)>;

double additive_ratio_policy(double share, const BacklogDelta& d, const Config& cfg);

/// Mode selection, load accounting, backlog sensing, split-ratio update and
/// per-packet routing. Owned by one caller; no internal locking.
class FlowController {
  public:
    explicit FlowController(Config cfg, RatioPolicy policy = additive_ratio_policy);

    /// Accounts bytes read at PDCP ingress against the current load window.
    /// Rolls the window when frame_clock has passed its end, returning the
    /// mode decided at that boundary. frame_clock must be non-decreasing.
    std::optional<Mode> offer_load(std::uint64_t bytes, long frame_clock);

    /// Lwa mode only: every sensing period, returns queue growth since the
    /// previous snapshot. The first call after mode entry only primes the
    /// snapshot.
    std::optional<BacklogDelta> sense(long q_lte_pkts, long q_wifi_pkts, long frame_clock);

    /// Applies the ratio policy to one sensing result.
    void apply(const BacklogDelta& delta);

    /// Picks the link for the next packet. Switch mode: the configured
    /// link. Lwa mode: error-diffusion toward share_wifi, so every length-N
    /// prefix sends floor(N*share) or ceil(N*share) packets to WiFi.
    LinkId route();

    Mode mode() const { return mode_; }
    double share_wifi() const { return share_wifi_; }
    double load_accum_bytes() const { return l_i_; }
    double threshold() const { return cfg_.threshold_bytes_per_window; }
    const Config& config() const { return cfg_; }

  private:
    void enter(Mode m);

    Config cfg_;
    RatioPolicy policy_;
    Mode mode_ = Mode::Switch;
    double l_i_ = 0.0;
    double share_wifi_ = kDefaultShare;
    double wrr_credit_ = kDefaultShare;
    long window_start_frame_ = 0;
    bool snapshot_valid_ = false;
    long q_lte_prev_ = 0;
    long q_wifi_prev_ = 0;
    long snapshot_frame_ = 0;
};

}  // namespace lwa::flowctl
