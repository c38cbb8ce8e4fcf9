#include "lwa/channel.hpp"

#include <algorithm>
#include <cmath>

namespace lwa::channel {

std::vector<std::uint8_t> encap_eth(std::span<const std::uint8_t> payload, const MacAddr& dst,
                                    const MacAddr& src, std::uint16_t ethertype) {
    std::vector<std::uint8_t> out;
    out.reserve(kEthHeaderBytes + payload.size());
    out.insert(out.end(), dst.begin(), dst.end());
    out.insert(out.end(), src.begin(), src.end());
    out.push_back(static_cast<std::uint8_t>(ethertype >> 8));
    out.push_back(static_cast<std::uint8_t>(ethertype & 0xFF));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

EthFrame decap_eth(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kEthHeaderBytes + 1)
        throw DecodeError(DecodeError::Kind::Truncated, bytes.size(),
                          "ethernet frame needs a 14-byte header and payload");
    EthFrame f;
    std::copy_n(bytes.begin(), 6, f.dst.begin());
    std::copy_n(bytes.begin() + 6, 6, f.src.begin());
    f.ethertype = static_cast<std::uint16_t>((bytes[12] << 8) | bytes[13]);
    f.payload.assign(bytes.begin() + kEthHeaderBytes, bytes.end());
    return f;
}

EthFrame decap_eth(std::span<const std::uint8_t> bytes, std::uint16_t expected_ethertype) {
    EthFrame f = decap_eth(bytes);
    if (f.ethertype != expected_ethertype)
        throw DecodeError(DecodeError::Kind::WrongEthertype, 12, "frame is not ours");
    return f;
}

// --------------------------------------------------------------- LTE link

LteLink::LteLink(const LteConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), rng_(seed), builder_(cfg.max_concat) {}

void LteLink::enqueue(std::vector<std::uint8_t> pdcp_bytes) {
    queue_bytes_ += pdcp_bytes.size();
    queue_.push_back({std::move(pdcp_bytes), false});
}

double LteLink::capacity_scale_at(double t_s) const {
    for (const auto& w : cfg_.capacity_schedule)
        if (t_s >= w.t_start_s && t_s < w.t_end_s) return w.scale;
    return 1.0;
}

int LteLink::usable_subframes_at(double t_s) const {
    double scale = capacity_scale_at(t_s);
    return static_cast<int>(std::floor(cfg_.used_subframes_per_frame * scale));
}

std::vector<std::vector<std::uint8_t>> LteLink::tick(long now_ms) {
    std::vector<std::vector<std::uint8_t>> out;
    while (!air_.empty() && air_.front().arrival_ms <= static_cast<double>(now_ms)) {
        air_payload_bytes_ -= air_.front().payload_bytes;
        out.push_back(std::move(air_.front().bytes));
        air_.pop_front();
    }

    int subframe = static_cast<int>(now_ms % kSubframesPerFrame);
    if (subframe < usable_subframes_at(static_cast<double>(now_ms) / 1000.0) && !queue_.empty()) {
        framing::FramedPdu pdu = builder_.build(queue_, cfg_.tb_bytes_per_tti);
        queue_bytes_ -= pdu.payload.size();
        ++tbs_served_;

        double delay = rng_.triangular(cfg_.one_way_delay.mean_ms - cfg_.one_way_delay.jitter_ms,
                                       cfg_.one_way_delay.mean_ms,
                                       cfg_.one_way_delay.mean_ms + cfg_.one_way_delay.jitter_ms);
        double arrival = static_cast<double>(now_ms) + std::max(0.0, delay);
        arrival = std::max(arrival, last_arrival_ms_);  // LTE is in-order
        last_arrival_ms_ = arrival;
        air_payload_bytes_ += pdu.payload.size();
        air_.push_back({arrival, pdu.payload.size(), framing::encode(pdu)});
    }
    return out;
}

// -------------------------------------------------------------- WiFi link

WifiDelayParams wifi_delay_params(const WifiDelayModel& m) {
    // mode = exp(mu - sigma^2), p99 = exp(mu + z99 * sigma), both of the
    // unshifted log-normal spanning (0, tail_max - min].
    constexpr double z99 = 2.3263478740408408;
    double mode_x = m.mode_ms - m.min_ms;
    double tail_x = m.tail_max_ms - m.min_ms;
    double r = std::log(tail_x / mode_x);
    double sigma = (-z99 + std::sqrt(z99 * z99 + 4.0 * r)) / 2.0;
    return {std::log(mode_x) + sigma * sigma, sigma};
}

WifiLink::WifiLink(const WifiConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      params_(wifi_delay_params(cfg.one_way_delay)),
      delay_rng_(seed),
      loss_rng_(seed ^ 0x9E3779B97F4A7C15ULL) {}

double WifiLink::sample_delay_ms() {
    double x = cfg_.one_way_delay.min_ms + std::exp(params_.mu + params_.sigma * delay_rng_.normal());
    return std::min(x, cfg_.one_way_delay.tail_max_ms);
}

void WifiLink::send(std::vector<std::uint8_t> frame, long now_ms) {
    if (cfg_.loss_p > 0.0 && loss_rng_.bernoulli(cfg_.loss_p)) {
        ++dropped_;
        return;
    }
    double now = static_cast<double>(now_ms);
    double tx_start = std::max(now, busy_until_ms_);
    double tx_time = static_cast<double>(frame.size()) * 8000.0 / cfg_.rate_bps;
    busy_until_ms_ = tx_start + tx_time;
    pending_tx_starts_.push_back(tx_start);
    heap_.push({busy_until_ms_ + sample_delay_ms(), seq_++, std::move(frame)});
    ++sent_;
}

std::vector<std::vector<std::uint8_t>> WifiLink::tick(long now_ms) {
    double now = static_cast<double>(now_ms);
    while (!pending_tx_starts_.empty() && pending_tx_starts_.front() <= now)
        pending_tx_starts_.pop_front();

    std::vector<std::vector<std::uint8_t>> out;
    while (!heap_.empty() && heap_.top().arrival_ms <= now) {
        out.push_back(std::move(const_cast<InFlight&>(heap_.top()).bytes));
        heap_.pop();
    }
    return out;
}

std::size_t WifiLink::queue_pkts(long now_ms) {
    double now = static_cast<double>(now_ms);
    while (!pending_tx_starts_.empty() && pending_tx_starts_.front() <= now)
        pending_tx_starts_.pop_front();
    return pending_tx_starts_.size();
}

}  // namespace lwa::channel
