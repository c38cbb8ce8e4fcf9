#include "lwa/pdcp.hpp"

namespace lwa::pdcp {

std::vector<std::uint8_t> serialize(const PdcpPdu& pdu) {
    std::vector<std::uint8_t> out;
    out.reserve(kHeaderBytes + pdu.payload.size());
    out.push_back(static_cast<std::uint8_t>((pdu.sn >> 8) & 0x0F));
    out.push_back(static_cast<std::uint8_t>(pdu.sn & 0xFF));
    out.insert(out.end(), pdu.payload.begin(), pdu.payload.end());
    return out;
}

PdcpPdu parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kHeaderBytes + 1)
        throw DecodeError(DecodeError::Kind::Truncated, bytes.size(),
                          "pdcp pdu needs a 2-byte header and a non-empty payload");
    PdcpPdu pdu;
    pdu.sn = static_cast<std::uint16_t>(((bytes[0] & 0x0F) << 8) | bytes[1]);
    pdu.payload.assign(bytes.begin() + kHeaderBytes, bytes.end());
    return pdu;
}

}  // namespace lwa::pdcp
