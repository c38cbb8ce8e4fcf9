#pragma once
#include <cstdint>
#include <span>
#include <vector>

#include "lwa/errors.hpp"

namespace lwa::pdcp {

// 2-byte header: 4 zero bits, then the 12-bit SN big-endian, then payload.
// Ciphering / integrity / header compression are identity here.

inline constexpr unsigned kSnModulus = 4096;
inline constexpr std::size_t kHeaderBytes = 2;

struct PdcpPdu {
    std::uint16_t sn = 0;  // 0..4095
    std::vector<std::uint8_t> payload;
    double enqueue_time_ms = 0.0;

    bool operator==(const PdcpPdu& o) const { return sn == o.sn && payload == o.payload; }
};

/// Sequence-numbering entity. Single owner; not internally synchronized.
class Transmitter {
  public:
    PdcpPdu wrap(std::vector<std::uint8_t> sdu, double now_ms = 0.0) {
        PdcpPdu pdu{next_sn_, std::move(sdu), now_ms};
        next_sn_ = static_cast<std::uint16_t>((next_sn_ + 1) % kSnModulus);
        return pdu;
    }

    std::uint16_t next_sn() const { return next_sn_; }
    void set_next_sn(std::uint16_t sn) { next_sn_ = sn % kSnModulus; }

  private:
    std::uint16_t next_sn_ = 0;
};

std::vector<std::uint8_t> serialize(const PdcpPdu& pdu);

/// Parses header + payload. Throws DecodeError{Truncated} when shorter than
/// 3 bytes; the 4 reserved header bits are ignored.
PdcpPdu parse(std::span<const std::uint8_t> bytes);

}  // namespace lwa::pdcp
