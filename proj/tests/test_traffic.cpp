#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "lwa/traffic.hpp"

using namespace lwa::traffic;

TEST_CASE("cbr accounting is byte-accurate over a second") {
    SduSource src(CbrProfile{11.2e6}, 1400);
    std::uint64_t n = 0;
    for (long t = 0; t < 1000; ++t) n += src.tick(t).size();
    // 1.4 MB per second at 1400 B per SDU.
    CHECK(std::abs(static_cast<long>(n) - 1000L) <= 1);

    // No drift over a long run: 10 s -> 10000 +- 1.
    std::uint64_t total = n;
    for (long t = 1000; t < 10000; ++t) total += src.tick(t).size();
    CHECK(std::abs(static_cast<long>(total) - 10000L) <= 1);
}

TEST_CASE("zero rate emits nothing") {
    SduSource src(CbrProfile{0.0}, 1400);
    for (long t = 0; t < 1000; ++t) CHECK(src.tick(t).empty());
}

TEST_CASE("schedule changes rate exactly at its step time") {
    ScheduleProfile p{{{0.0, 10e6}, {5.0, 20e6}}};
    CHECK(rate_at(Profile{p}, 0.0) == 10e6);
    CHECK(rate_at(Profile{p}, 4.999) == 10e6);
    CHECK(rate_at(Profile{p}, 5.0) == 20e6);
    CHECK(rate_at(Profile{p}, 9.0) == 20e6);

    SduSource src(Profile{p}, 1000);
    std::uint64_t first_half = 0, second_half = 0;
    for (long t = 0; t < 5000; ++t) first_half += src.tick(t).size();
    for (long t = 5000; t < 10000; ++t) second_half += src.tick(t).size();
    CHECK(std::abs(static_cast<long>(first_half) - 6250L) <= 1);
    CHECK(std::abs(static_cast<long>(second_half) - 12500L) <= 1);
}

TEST_CASE("ramp steps by period") {
    RampProfile r{4e6, 2e6, 2.0};
    CHECK(rate_at(Profile{r}, 0.0) == 4e6);
    CHECK(rate_at(Profile{r}, 1.999) == 4e6);
    CHECK(rate_at(Profile{r}, 2.0) == 6e6);
    CHECK(rate_at(Profile{r}, 8.0) == 12e6);
}

TEST_CASE("schedule before the first point is silent") {
    ScheduleProfile p{{{2.0, 8e6}}};
    CHECK(rate_at(Profile{p}, 0.0) == 0.0);
    CHECK(rate_at(Profile{p}, 1.999) == 0.0);
    CHECK(rate_at(Profile{p}, 2.0) == 8e6);
}

TEST_CASE("sdu payloads verify and carry their id") {
    auto p = sdu_payload(123456789ULL, 1400);
    CHECK(p.size() == 1400);
    CHECK(sdu_id(p) == 123456789ULL);
    CHECK(sdu_intact(p));

    p[700] ^= 0x01;
    CHECK(!sdu_intact(p));

    auto tiny = sdu_payload(7, 8);
    CHECK(sdu_intact(tiny));
    CHECK(sdu_id(tiny) == 7);
}

TEST_CASE("source stamps ids sequentially") {
    SduSource src(CbrProfile{56e6}, 1400);  // 5 per ms
    std::uint64_t expect = 0;
    for (long t = 0; t < 100; ++t)
        for (const auto& s : src.tick(t)) {
            CHECK(s.id == expect++);
            CHECK(sdu_intact(s.payload));
        }
    CHECK(expect == src.emitted());
}
