#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "lwa/reorder.hpp"

using namespace lwa;
using namespace lwa::reorder;

namespace {

pdcp::PdcpPdu pdu(std::uint16_t sn) {
    return {sn, {static_cast<std::uint8_t>(sn & 0xFF)}, 0.0};
}

std::vector<std::uint16_t> sns(const std::vector<pdcp::PdcpPdu>& v) {
    std::vector<std::uint16_t> out;
    for (const auto& p : v) out.push_back(p.sn);
    return out;
}

}  // namespace

TEST_CASE("sn_after half-range semantics") {
    CHECK(sn_after(0, 1));
    CHECK(sn_after(4090, 5));  // wraparound forward
    CHECK(!sn_after(5, 4090));
    CHECK(!sn_after(7, 7));
    CHECK(sn_after(0, 2047));
    CHECK(!sn_after(0, 2048));  // antipodal is not forward
    CHECK(!sn_after(0, 2049));
}

TEST_CASE("in-order arrivals pass straight through") {
    ReorderBuffer rb;
    for (std::uint16_t sn = 0; sn < 3; ++sn) {
        auto out = rb.feed(pdu(sn), 0.0);
        CHECK(sns(out) == std::vector<std::uint16_t>{sn});
    }
    CHECK(rb.stats().delivered == 3);
    CHECK(rb.buffered() == 0);
}

TEST_CASE("one displaced packet is held then released in order") {
    ReorderBuffer rb({64, 20.0});
    CHECK(sns(rb.feed(pdu(0), 0.0)) == std::vector<std::uint16_t>{0});
    CHECK(rb.feed(pdu(2), 0.1).empty());
    CHECK(rb.buffered() == 1);
    CHECK(sns(rb.feed(pdu(1), 0.2)) == std::vector<std::uint16_t>{1, 2});
    CHECK(rb.buffered() == 0);
}

TEST_CASE("window overflow advances past the missing SN") {
    ReorderBuffer rb({64, 1e9});
    rb.feed(pdu(0), 0.0);  // expected becomes 1... then lose 1
    std::vector<std::uint16_t> released;
    for (std::uint16_t sn = 2; sn <= 66; ++sn)
        for (auto s : sns(rb.feed(pdu(sn), 0.0))) released.push_back(s);
    // The 65th held packet (sn 66) pushes occupancy past 64.
    std::vector<std::uint16_t> expect;
    for (std::uint16_t sn = 2; sn <= 66; ++sn) expect.push_back(sn);
    CHECK(released == expect);
    CHECK(rb.stats().skipped_lost == 1);
    CHECK(rb.buffered() == 0);
}

TEST_CASE("first arrival seeds the expected SN") {
    ReorderBuffer rb;
    auto out = rb.feed(pdu(100), 0.0);
    CHECK(sns(out) == std::vector<std::uint16_t>{100});
    CHECK(*rb.expected_sn() == 101);
}

TEST_CASE("late arrival is dropped and counted") {
    ReorderBuffer rb;
    rb.feed(pdu(10), 0.0);
    CHECK(rb.feed(pdu(9), 0.0).empty());
    CHECK(rb.feed(pdu(5), 0.0).empty());
    CHECK(rb.stats().late_dropped == 2);
}

TEST_CASE("duplicate of a buffered SN is dropped and counted") {
    ReorderBuffer rb;
    rb.feed(pdu(0), 0.0);
    rb.feed(pdu(5), 0.0);
    CHECK(rb.feed(pdu(5), 0.0).empty());
    CHECK(rb.stats().duplicates == 1);
}

TEST_CASE("flush applies the hold timer") {
    ReorderBuffer rb({64, 20.0});
    CHECK(rb.flush(100.0).empty());  // empty buffer

    rb.feed(pdu(4), 0.0);  // expected 5... actually delivered; expected 5
    rb.feed(pdu(6), 1.0);
    rb.feed(pdu(7), 1.5);
    CHECK(rb.flush(10.0).empty());  // timer not expired
    auto out = rb.flush(21.0);      // oldest held 20 ms ago
    CHECK(sns(out) == std::vector<std::uint16_t>{6, 7});
    CHECK(rb.stats().skipped_lost == 1);
}

TEST_CASE("drain releases everything and counts the gaps") {
    ReorderBuffer rb({64, 1e9});
    rb.feed(pdu(0), 0.0);
    rb.feed(pdu(3), 0.0);
    rb.feed(pdu(7), 0.0);
    auto out = rb.drain();
    CHECK(sns(out) == std::vector<std::uint16_t>{3, 7});
    CHECK(rb.stats().skipped_lost == 5);  // 1,2 and 4,5,6
    CHECK(rb.buffered() == 0);
    CHECK(ReorderBuffer{}.drain().empty());
}

TEST_CASE("wraparound: runs crossing 4095 -> 0") {
    ReorderBuffer rb;
    std::vector<std::uint16_t> released;
    for (std::uint16_t sn : {4094, 4095, 1, 0, 2})
        for (auto s : sns(rb.feed(pdu(sn), 0.0))) released.push_back(s);
    CHECK(released == std::vector<std::uint16_t>{4094, 4095, 0, 1, 2});
    CHECK(rb.stats().delivered == 5);
}

TEST_CASE("property: bounded displacement reproduces send order exactly") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 300; ++iter) {
        std::size_t window = 8 + rng() % 57;
        std::size_t n = 50 + rng() % 400;
        std::uint16_t first = static_cast<std::uint16_t>(rng() % kSnModulus);

        std::vector<std::size_t> order(n);
        std::vector<double> key(n);
        for (std::size_t i = 0; i < n; ++i) {
            order[i] = i;
            // First packet arrives first (it seeds the expected SN); the
            // rest are displaced by strictly less than the window.
            key[i] = i == 0 ? 0.0 : static_cast<double>(i) + (rng() % window);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });

        ReorderBuffer rb({window, 1e12});
        std::vector<std::uint16_t> released;
        for (std::size_t pos = 0; pos < n; ++pos) {
            auto sn = static_cast<std::uint16_t>((first + order[pos]) % kSnModulus);
            for (auto s : sns(rb.feed(pdu(sn), 0.0))) released.push_back(s);
            CHECK(rb.buffered() <= window);
        }
        for (auto s : sns(rb.drain())) released.push_back(s);

        std::vector<std::uint16_t> expect(n);
        for (std::size_t i = 0; i < n; ++i)
            expect[i] = static_cast<std::uint16_t>((first + i) % kSnModulus);
        CHECK(released == expect);
        CHECK(rb.stats().skipped_lost == 0);
        CHECK(rb.stats().late_dropped == 0);
    }
}

TEST_CASE("property: conservation with losses, dups and timer advances") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 200; ++iter) {
        std::size_t n = 100 + rng() % 500;
        std::size_t window = 8 + rng() % 32;
        double hold = 5.0 + (rng() % 40);

        struct Ev {
            std::uint16_t sn;
            double t;
        };
        std::vector<Ev> events;
        std::set<std::uint16_t> dropped;
        for (std::size_t i = 0; i < n; ++i) {
            auto sn = static_cast<std::uint16_t>(i % kSnModulus);
            if (rng() % 100 < 5) {
                dropped.insert(sn);
                continue;
            }
            double t = static_cast<double>(i) + (rng() % (2 * window));
            events.push_back({sn, t});
            if (rng() % 100 < 3) events.push_back({sn, t + 1.0});  // duplicate
        }
        std::stable_sort(events.begin(), events.end(),
                         [](const Ev& a, const Ev& b) { return a.t < b.t; });

        ReorderBuffer rb({window, hold});
        std::vector<std::uint16_t> released;
        std::uint64_t fed = 0;
        for (const auto& ev : events) {
            for (auto s : sns(rb.feed(pdu(ev.sn), ev.t))) released.push_back(s);
            ++fed;
            for (auto s : sns(rb.flush(ev.t))) released.push_back(s);
        }
        const auto& st = rb.stats();
        CHECK(st.delivered + st.late_dropped + st.duplicates + rb.buffered() == fed);
        for (auto s : sns(rb.drain())) released.push_back(s);
        CHECK(st.delivered + st.late_dropped + st.duplicates == fed);

        // Released sequence strictly modular-increasing, no duplicates.
        for (std::size_t i = 1; i < released.size(); ++i)
            CHECK(sn_after(released[i - 1], released[i]));

        // Every slot between the first SN and the final expected SN is
        // accounted for exactly once as delivered or skipped.
        if (!released.empty()) {
            unsigned span = (*rb.expected_sn() - released.front()) & (kSnModulus - 1);
            CHECK(st.delivered + st.skipped_lost == span);
        }
    }
}
