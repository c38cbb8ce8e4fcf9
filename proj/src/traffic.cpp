#include "lwa/traffic.hpp"

#include <algorithm>
#include <cmath>

namespace lwa::traffic {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

double rate_at(const Profile& profile, double t_s) {
    return std::visit(
        [t_s](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CbrProfile>) {
                return p.rate_bps;
            } else if constexpr (std::is_same_v<T, RampProfile>) {
                return p.start_bps + p.step_bps * std::floor(t_s / p.period_s);
            } else {
                double rate = 0.0;
                for (const auto& pt : p.points) {
                    if (t_s < pt.t_s) break;
                    rate = pt.rate_bps;
                }
                return rate;
            }
        },
        profile);
}

std::vector<std::uint8_t> sdu_payload(std::uint64_t id, std::size_t size) {
    std::vector<std::uint8_t> out(size);
    for (int i = 0; i < 8 && static_cast<std::size_t>(i) < size; ++i)
        out[i] = static_cast<std::uint8_t>(id >> (56 - 8 * i));
    std::uint64_t state = id;
    std::size_t off = 8;
    while (off < size) {
        std::uint64_t word = splitmix64(state);
        for (int b = 0; b < 8 && off < size; ++b, ++off)
            out[off] = static_cast<std::uint8_t>(word >> (8 * b));
    }
    return out;
}

std::uint64_t sdu_id(std::span<const std::uint8_t> payload) {
    std::uint64_t id = 0;
    for (int i = 0; i < 8; ++i) id = (id << 8) | payload[i];
    return id;
}

bool sdu_intact(std::span<const std::uint8_t> payload) {
    if (payload.size() < kMinSduBytes) return false;
    auto expect = sdu_payload(sdu_id(payload), payload.size());
    return std::equal(payload.begin(), payload.end(), expect.begin());
}

SduSource::SduSource(Profile profile, std::size_t sdu_size_bytes)
    : profile_(std::move(profile)), sdu_size_(std::max(kMinSduBytes, sdu_size_bytes)) {}

std::vector<Sdu> SduSource::tick(long now_ms, double dt_ms) {
    acc_bytes_ += rate_at(profile_, static_cast<double>(now_ms) / 1000.0) * dt_ms / 8000.0;
    std::vector<Sdu> out;
    while (acc_bytes_ >= static_cast<double>(sdu_size_)) {
        acc_bytes_ -= static_cast<double>(sdu_size_);
        out.push_back({next_id_, sdu_payload(next_id_, sdu_size_), static_cast<double>(now_ms)});
        ++next_id_;
        bytes_emitted_ += sdu_size_;
    }
    return out;
}

}  // namespace lwa::traffic
