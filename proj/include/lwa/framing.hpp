#pragma once
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "lwa/errors.hpp"

namespace lwa::framing {

// Wire layout of one transport block:
//   byte 0      6 reserved bits (written 0, ignored on read) + 2-bit FI
//               FI bit 1: first payload byte is NOT the head of an SDU
//               FI bit 0: last payload byte is NOT the tail of an SDU
//   byte 1      7-bit sequence number, high bit zero
//   then per segment a big-endian 16-bit descriptor (LI << 1) | E,
//   E = 1 -> another descriptor follows, E = 0 -> payload follows,
//   then the concatenated segments, then zero padding up to the block size.

inline constexpr std::size_t kFixedHeaderBytes = 2;
inline constexpr std::size_t kDescriptorBytes = 2;
inline constexpr unsigned kSnModulus = 128;
inline constexpr std::size_t kMaxSegmentLen = 0x7FFF;
inline constexpr std::size_t kMinTbBytes = kFixedHeaderBytes + kDescriptorBytes + 1;
inline constexpr std::size_t kDefaultMaxConcat = 16;

struct FrameHeader {
    bool start_frag = false;  // payload starts mid-SDU
    bool end_frag = false;    // payload ends mid-SDU
    std::uint8_t sn = 0;      // 0..127
    std::vector<std::uint16_t> lis;  // segment lengths, each 1..32767

    std::size_t encoded_size() const { return kFixedHeaderBytes + kDescriptorBytes * lis.size(); }

    bool operator==(const FrameHeader&) const = default;
};

struct FramedPdu {
    FrameHeader header;
    std::vector<std::uint8_t> payload;  // |payload| == sum(header.lis)
    std::size_t padding_len = 0;

    std::size_t wire_size() const { return header.encoded_size() + payload.size() + padding_len; }

    bool operator==(const FramedPdu&) const = default;
};

std::vector<std::uint8_t> encode(const FramedPdu& pdu);

/// Inverse of encode. Trailing bytes beyond the LI sum are treated as padding.
/// Throws DecodeError{Truncated, ZeroLi} with the offending byte offset.
FramedPdu decode(std::span<const std::uint8_t> bytes);

/// One entry of the transmit queue: a whole upper-layer packet, or the
/// remaining tail of one that a previous transport block already started.
struct SduFragment {
    std::vector<std::uint8_t> bytes;
    bool continues_previous = false;
};

using SduQueue = std::deque<SduFragment>;

/// Greedy segmentation/concatenation of queued SDUs into fixed-size
/// transport blocks. Owns the 7-bit SN counter (wraps 127 -> 0); a split
/// SDU's remainder stays at the queue head marked continues_previous.
class PduBuilder {
  public:
    explicit PduBuilder(std::size_t max_concat = kDefaultMaxConcat);

    /// Precondition: queue non-empty, tb_bytes >= kMinTbBytes.
    FramedPdu build(SduQueue& queue, std::size_t tb_bytes);

    std::uint8_t next_sn() const { return next_sn_; }
    void set_next_sn(std::uint8_t sn) { next_sn_ = sn % kSnModulus; }
    std::size_t max_concat() const { return max_concat_; }

  private:
    std::uint8_t next_sn_ = 0;
    std::size_t max_concat_;
};

struct ReassemblyStats {
    std::uint64_t sdus_out = 0;
    std::uint64_t partials_discarded = 0;  // pending buffers dropped on SN gap
    std::uint64_t orphan_fragments = 0;    // continuation segments with no head
    std::uint64_t sequence_resets = 0;
};

/// Receiver side: rebuilds SDUs from decoded transport blocks, resetting
/// its pending buffer whenever the 7-bit SN stream shows a gap.
class Reassembler {
  public:
    /// Returns the complete SDUs this block finished, in order.
    std::vector<std::vector<std::uint8_t>> feed(const FramedPdu& pdu);

    const ReassemblyStats& stats() const { return stats_; }
    bool partial_open() const { return partial_open_; }
    std::size_t partial_bytes() const { return partial_.size(); }
    std::optional<std::uint8_t> expected_sn() const { return expected_sn_; }

  private:
    void reset_partial();

    std::optional<std::uint8_t> expected_sn_;
    std::vector<std::uint8_t> partial_;
    bool partial_open_ = false;
    ReassemblyStats stats_{};
};

}  // namespace lwa::framing
