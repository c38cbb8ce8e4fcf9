#pragma once
#include <array>
#include <cstdint>
#include <deque>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "lwa/errors.hpp"
#include "lwa/framing.hpp"
#include "lwa/rng.hpp"

namespace lwa::channel {

// ---------------------------------------------------------------- Ethernet

inline constexpr std::size_t kEthHeaderBytes = 14;
inline constexpr std::uint16_t kDefaultEthertype = 0x88B5;  // local experimental

using MacAddr = std::array<std::uint8_t, 6>;

inline constexpr MacAddr kEnbMac = {0x02, 0x00, 0x00, 0x00, 0x00, 0x01};
inline constexpr MacAddr kUeMac = {0x02, 0x00, 0x00, 0x00, 0x00, 0x02};

struct EthFrame {
    MacAddr dst{};
    MacAddr src{};
    std::uint16_t ethertype = 0;
    std::vector<std::uint8_t> payload;
};

std::vector<std::uint8_t> encap_eth(std::span<const std::uint8_t> payload, const MacAddr& dst,
                                    const MacAddr& src, std::uint16_t ethertype);

/// Strips the 14-byte header. Throws Truncated below 15 bytes; with
/// expected_ethertype set, throws WrongEthertype on a mismatch (the caller
/// should ignore such frames).
EthFrame decap_eth(std::span<const std::uint8_t> bytes);
EthFrame decap_eth(std::span<const std::uint8_t> bytes, std::uint16_t expected_ethertype);

// --------------------------------------------------------------- LTE link

inline constexpr int kSubframesPerFrame = 10;  // 1 ms TTIs in a 10 ms frame

struct LteDelayModel {
    double mean_ms = 2.73;
    double jitter_ms = 0.7;  // triangular on [mean - jitter, mean + jitter]
};

/// Capacity scale factor active on [t_start_s, t_end_s); scale < 1 cuts the
/// usable subframes per frame to floor(used * scale).
struct CapacityWindow {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    double scale = 1.0;
};

struct LteConfig {
    std::string bandwidth_label = "5 MHz";  // informational only
    int used_subframes_per_frame = 8;       // of the 10 per 10 ms frame
    std::size_t tb_bytes_per_tti = 1720;
    LteDelayModel one_way_delay{};
    std::vector<CapacityWindow> capacity_schedule;
    std::size_t max_concat = framing::kDefaultMaxConcat;
};

/// TTI-scheduled in-order downlink. One transport block is framed and sent
/// per usable subframe while the queue is non-empty; deliveries keep FIFO
/// order (arrival times are clamped monotone).
class LteLink {
  public:
    LteLink(const LteConfig& cfg, std::uint64_t seed);

    void enqueue(std::vector<std::uint8_t> pdcp_bytes);

    /// Advance to now_ms (whole milliseconds, one call per subframe).
    /// Returns the encoded transport blocks that arrive at or before now.
    std::vector<std::vector<std::uint8_t>> tick(long now_ms);

    std::size_t queue_pkts() const { return queue_.size(); }
    std::size_t queue_bytes() const { return queue_bytes_; }
    std::size_t in_flight() const { return air_.size(); }
    std::size_t air_payload_bytes() const { return air_payload_bytes_; }
    std::uint64_t tbs_served() const { return tbs_served_; }
    double capacity_scale_at(double t_s) const;
    int usable_subframes_at(double t_s) const;
    const LteConfig& config() const { return cfg_; }

  private:
    struct InFlight {
        double arrival_ms;
        std::size_t payload_bytes;
        std::vector<std::uint8_t> bytes;
    };

    LteConfig cfg_;
    Rng rng_;
    framing::PduBuilder builder_;
    framing::SduQueue queue_;
    std::size_t queue_bytes_ = 0;
    std::size_t air_payload_bytes_ = 0;
    std::deque<InFlight> air_;
    double last_arrival_ms_ = 0.0;
    std::uint64_t tbs_served_ = 0;
};

// -------------------------------------------------------------- WiFi link

struct WifiDelayModel {
    double min_ms = 0.43;
    double mode_ms = 1.6;
    double tail_max_ms = 15.2;
};

/// Shifted log-normal parameters derived from {min, mode, tail_max}: the
/// tail_max is placed at the 99th percentile and samples are clamped there.
struct WifiDelayParams {
    double mu = 0.0;
    double sigma = 0.0;
};
WifiDelayParams wifi_delay_params(const WifiDelayModel& m);

struct WifiConfig {
    double rate_bps = 20e6;
    WifiDelayModel one_way_delay{};
    double loss_p = 0.0;
    std::uint16_t ethertype = kDefaultEthertype;
};

/// Datagram link: frames serialize FIFO at rate_bps, then fly with
/// independent per-frame delays, so arrivals may reorder. Lossy sends are
/// dropped up front (the non-blocking-socket behaviour).
class WifiLink {
  public:
    WifiLink(const WifiConfig& cfg, std::uint64_t seed);

    void send(std::vector<std::uint8_t> frame, long now_ms);

    /// Frames whose arrival time has passed, in arrival order.
    std::vector<std::vector<std::uint8_t>> tick(long now_ms);

    /// Frames still waiting for their transmission slot at now_ms
    /// (excludes the frame in service).
    std::size_t queue_pkts(long now_ms);

    std::size_t in_flight() const { return heap_.size(); }
    std::uint64_t dropped() const { return dropped_; }
    std::uint64_t sent() const { return sent_; }
    const WifiConfig& config() const { return cfg_; }

    double sample_delay_ms();  // advances the RNG; exposed for calibration

  private:
    struct InFlight {
        double arrival_ms;
        std::uint64_t seq;
        std::vector<std::uint8_t> bytes;
        bool operator>(const InFlight& o) const {
            return arrival_ms != o.arrival_ms ? arrival_ms > o.arrival_ms : seq > o.seq;
        }
    };

    WifiConfig cfg_;
    WifiDelayParams params_;
    Rng delay_rng_;
    Rng loss_rng_;
    double busy_until_ms_ = 0.0;
    std::deque<double> pending_tx_starts_;
    std::priority_queue<InFlight, std::vector<InFlight>, std::greater<>> heap_;
    std::uint64_t seq_ = 0;
    std::uint64_t dropped_ = 0;
    std::uint64_t sent_ = 0;
};

}  // namespace lwa::channel
