#pragma once
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace lwa::traffic {

inline constexpr std::size_t kDefaultSduBytes = 1400;
inline constexpr std::size_t kMinSduBytes = 8;  // room for the embedded id

struct CbrProfile {
    double rate_bps = 0.0;
};

/// rate(t) = start + step * floor(t / period).
struct RampProfile {
    double start_bps = 0.0;
    double step_bps = 0.0;
    double period_s = 1.0;
};

struct SchedulePoint {
    double t_s = 0.0;
    double rate_bps = 0.0;
};

/// Piecewise-constant rate; each point takes effect exactly at its t_s.
struct ScheduleProfile {
    std::vector<SchedulePoint> points;
};

using Profile = std::variant<CbrProfile, RampProfile, ScheduleProfile>;

double rate_at(const Profile& profile, double t_s);

struct Sdu {
    std::uint64_t id = 0;
    std::vector<std::uint8_t> payload;
    double created_ms = 0.0;
};

/// Deterministic payload: 8-byte big-endian id, then a keyed byte stream.
/// The sink can rebuild the expected bytes from the embedded id alone.
std::vector<std::uint8_t> sdu_payload(std::uint64_t id, std::size_t size);
std::uint64_t sdu_id(std::span<const std::uint8_t> payload);
bool sdu_intact(std::span<const std::uint8_t> payload);

/// Byte-accurate open-loop source: whole SDUs are emitted as soon as the
/// rate integral covers them, with no drift over a run.
class SduSource {
  public:
    SduSource(Profile profile, std::size_t sdu_size_bytes = kDefaultSduBytes);

    std::vector<Sdu> tick(long now_ms, double dt_ms = 1.0);

    std::uint64_t emitted() const { return next_id_; }
    std::uint64_t bytes_emitted() const { return bytes_emitted_; }
    std::size_t sdu_size() const { return sdu_size_; }

  private:
    Profile profile_;
    std::size_t sdu_size_;
    double acc_bytes_ = 0.0;
    std::uint64_t next_id_ = 0;
    std::uint64_t bytes_emitted_ = 0;
};

}  // namespace lwa::traffic
