#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lwa/pdcp.hpp"

using namespace lwa;
using namespace lwa::pdcp;
using Bytes = std::vector<std::uint8_t>;

TEST_CASE("wrap assigns sequential SNs starting at zero") {
    Transmitter tx;
    PdcpPdu p = tx.wrap(Bytes(100, 0x5A));
    CHECK(p.sn == 0);
    Bytes w = serialize(p);
    CHECK(w[0] == 0x00);
    CHECK(w[1] == 0x00);
    CHECK(w.size() == 102);

    for (int i = 1; i < 1000; ++i) CHECK(tx.wrap(Bytes{1}).sn == i);
}

TEST_CASE("sn wraps 4095 -> 0") {
    Transmitter tx;
    tx.set_next_sn(4095);
    PdcpPdu p = tx.wrap(Bytes{0x01});
    CHECK(p.sn == 4095);
    Bytes w = serialize(p);
    CHECK(w[0] == 0x0F);
    CHECK(w[1] == 0xFF);
    CHECK(tx.next_sn() == 0);
}

TEST_CASE("parse is the inverse of serialize for every SN") {
    for (unsigned sn = 0; sn < kSnModulus; ++sn) {
        PdcpPdu p{static_cast<std::uint16_t>(sn), {0xDE, 0xAD}, 0.0};
        PdcpPdu q = parse(serialize(p));
        CHECK(q.sn == sn);
        CHECK(q.payload == p.payload);
    }
}

TEST_CASE("hand-decoded header") {
    Bytes w = {0x0F, 0xFF, 0x01};
    PdcpPdu p = parse(w);
    CHECK(p.sn == 4095);
    CHECK(p.payload == Bytes{0x01});
}

TEST_CASE("reserved header bits are ignored") {
    Bytes w = {0xF1, 0x02, 0x99};
    CHECK(parse(w).sn == 0x102);
}

TEST_CASE("short input is Truncated") {
    CHECK_THROWS_AS(parse(Bytes{0x00, 0x00}), DecodeError);
    CHECK_THROWS_AS(parse(Bytes{}), DecodeError);
    try {
        parse(Bytes{0x00, 0x00});
    } catch (const DecodeError& e) {
        CHECK(e.kind() == DecodeError::Kind::Truncated);
    }
}
