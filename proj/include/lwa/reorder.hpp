#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lwa/pdcp.hpp"

namespace lwa::reorder {

inline constexpr unsigned kSnModulus = pdcp::kSnModulus;
inline constexpr std::size_t kDefaultWindow = 64;
inline constexpr double kDefaultHoldTimerMs = 20.0;

/// True iff b lies in the forward half-range after a (12-bit modular).
inline bool sn_after(std::uint16_t a, std::uint16_t b) {
    unsigned d = (b - a) & (kSnModulus - 1);
    return d > 0 && d < kSnModulus / 2;
}

struct Config {
    std::size_t window_size = kDefaultWindow;
    double hold_timer_ms = kDefaultHoldTimerMs;
};

struct Stats {
    std::uint64_t delivered = 0;
    std::uint64_t skipped_lost = 0;   // SNs the window advanced past
    std::uint64_t late_dropped = 0;   // arrivals behind the expected SN
    std::uint64_t duplicates = 0;
};

/// Buffers PDUs from both links and releases them in modular SN order.
/// The window advances past a missing SN when the buffer outgrows
/// window_size or the oldest held PDU has waited longer than the hold timer.
class ReorderBuffer {
  public:
    explicit ReorderBuffer(Config cfg = {}) : cfg_(cfg) {}

    std::vector<pdcp::PdcpPdu> feed(pdcp::PdcpPdu pdu, double now_ms);

    /// Timer-driven advance between arrivals; releases nothing while the
    /// oldest held PDU is still within the hold timer.
    std::vector<pdcp::PdcpPdu> flush(double now_ms);

    /// End-of-run drain: releases everything buffered in modular order,
    /// counting the gaps as skipped.
    std::vector<pdcp::PdcpPdu> drain();

    const Stats& stats() const { return stats_; }
    std::size_t buffered() const { return buffer_.size(); }
    std::optional<std::uint16_t> expected_sn() const { return expected_sn_; }
    const Config& config() const { return cfg_; }

  private:
    struct Held {
        pdcp::PdcpPdu pdu;
        double held_since_ms;
    };

    void release_run(std::vector<pdcp::PdcpPdu>& out);
    void advance_to_oldest_buffered(std::vector<pdcp::PdcpPdu>& out);
    std::map<std::uint16_t, Held>::iterator modular_first();
    double oldest_hold_time() const;

    Config cfg_;
    std::optional<std::uint16_t> expected_sn_;
    std::map<std::uint16_t, Held> buffer_;
    Stats stats_{};
};

}  // namespace lwa::reorder
