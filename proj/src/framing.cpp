#include "lwa/framing.hpp"

#include <algorithm>
#include <cassert>

namespace lwa::framing {

std::vector<std::uint8_t> encode(const FramedPdu& pdu) {
    assert(!pdu.header.lis.empty());
    assert(pdu.header.sn < kSnModulus);

    std::vector<std::uint8_t> out;
    out.reserve(pdu.wire_size());

    std::uint8_t fi = 0;
    if (pdu.header.start_frag) fi |= 0x02;
    if (pdu.header.end_frag) fi |= 0x01;
    out.push_back(fi);
    out.push_back(pdu.header.sn & 0x7F);

    for (std::size_t i = 0; i < pdu.header.lis.size(); ++i) {
        bool more = i + 1 < pdu.header.lis.size();
        std::uint16_t desc = static_cast<std::uint16_t>((pdu.header.lis[i] << 1) | (more ? 1 : 0));
        out.push_back(static_cast<std::uint8_t>(desc >> 8));
        out.push_back(static_cast<std::uint8_t>(desc & 0xFF));
    }

    out.insert(out.end(), pdu.payload.begin(), pdu.payload.end());
    out.insert(out.end(), pdu.padding_len, 0x00);
    return out;
}

FramedPdu decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMinTbBytes - 1)  // header + at least one descriptor
        throw DecodeError(DecodeError::Kind::Truncated, bytes.size(), "block shorter than fixed header");

    FramedPdu pdu;
    pdu.header.start_frag = (bytes[0] & 0x02) != 0;
    pdu.header.end_frag = (bytes[0] & 0x01) != 0;
    pdu.header.sn = bytes[1] & 0x7F;

    std::size_t off = kFixedHeaderBytes;
    bool more = true;
    std::size_t payload_len = 0;
    while (more) {
        if (off + kDescriptorBytes > bytes.size())
            throw DecodeError(DecodeError::Kind::Truncated, off, "descriptor chain runs past buffer");
        std::uint16_t desc = static_cast<std::uint16_t>((bytes[off] << 8) | bytes[off + 1]);
        std::uint16_t li = desc >> 1;
        if (li == 0)
            throw DecodeError(DecodeError::Kind::ZeroLi, off, "zero-length segment");
        pdu.header.lis.push_back(li);
        payload_len += li;
        more = (desc & 0x01) != 0;
        off += kDescriptorBytes;
    }

    if (off + payload_len > bytes.size())
        throw DecodeError(DecodeError::Kind::Truncated, off, "payload runs past buffer");
    pdu.payload.assign(bytes.begin() + off, bytes.begin() + off + payload_len);
    pdu.padding_len = bytes.size() - off - payload_len;
    return pdu;
}

PduBuilder::PduBuilder(std::size_t max_concat)
    : max_concat_(std::max<std::size_t>(1, max_concat)) {}

FramedPdu PduBuilder::build(SduQueue& queue, std::size_t tb_bytes) {
    assert(!queue.empty());
    assert(tb_bytes >= kMinTbBytes);

    FramedPdu pdu;
    pdu.header.sn = next_sn_;
    next_sn_ = static_cast<std::uint8_t>((next_sn_ + 1) % kSnModulus);

    std::size_t used_payload = 0;
    while (!queue.empty() && pdu.header.lis.size() < max_concat_) {
        // Room left if one more descriptor is added.
        std::size_t hdr = kFixedHeaderBytes + kDescriptorBytes * (pdu.header.lis.size() + 1);
        if (hdr + used_payload >= tb_bytes) break;
        std::size_t room = tb_bytes - hdr - used_payload;
        std::size_t take = std::min({room, queue.front().bytes.size(), kMaxSegmentLen});

        SduFragment& head = queue.front();
        if (pdu.header.lis.empty() && head.continues_previous) pdu.header.start_frag = true;

        pdu.header.lis.push_back(static_cast<std::uint16_t>(take));
        pdu.payload.insert(pdu.payload.end(), head.bytes.begin(), head.bytes.begin() + take);
        used_payload += take;

        if (take == head.bytes.size()) {
            queue.pop_front();
        } else {
            // Split: the tail stays at the head of the queue.
            head.bytes.erase(head.bytes.begin(), head.bytes.begin() + take);
            head.continues_previous = true;
            pdu.header.end_frag = true;
            break;
        }
    }

    pdu.padding_len = tb_bytes - pdu.header.encoded_size() - pdu.payload.size();
    return pdu;
}

void Reassembler::reset_partial() {
    partial_.clear();
    partial_open_ = false;
}

std::vector<std::vector<std::uint8_t>> Reassembler::feed(const FramedPdu& pdu) {
    std::vector<std::vector<std::uint8_t>> out;

    bool gap = expected_sn_.has_value() && pdu.header.sn != *expected_sn_;
    if (gap) {
        if (partial_open_) ++stats_.partials_discarded;
        reset_partial();
        ++stats_.sequence_resets;
    }
    expected_sn_ = static_cast<std::uint8_t>((pdu.header.sn + 1) % kSnModulus);

    const auto& lis = pdu.header.lis;
    std::size_t off = 0;
    for (std::size_t i = 0; i < lis.size(); ++i) {
        std::size_t len = lis[i];
        auto seg_begin = pdu.payload.begin() + off;
        auto seg_end = seg_begin + len;
        off += len;

        bool first = i == 0;
        bool last = i + 1 == lis.size();
        bool head_missing = first && pdu.header.start_frag;
        bool tail_pending = last && pdu.header.end_frag;

        if (head_missing) {
            if (!partial_open_) {
                // Continuation whose head was lost (or never seen): unusable.
                ++stats_.orphan_fragments;
                continue;
            }
            partial_.insert(partial_.end(), seg_begin, seg_end);
            if (tail_pending) continue;  // SDU still spans into the next block
            out.push_back(std::move(partial_));
            ++stats_.sdus_out;
            reset_partial();
            continue;
        }

        if (partial_open_) {
            // A fragment was pending but this block starts a fresh SDU: the
            // sender never does this with consecutive SNs, treat as loss.
            ++stats_.partials_discarded;
            reset_partial();
        }

        if (tail_pending) {
            partial_.assign(seg_begin, seg_end);
            partial_open_ = true;
        } else {
            out.emplace_back(seg_begin, seg_end);
            ++stats_.sdus_out;
        }
    }
    return out;
}

}  // namespace lwa::framing
