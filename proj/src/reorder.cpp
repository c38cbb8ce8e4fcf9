#include "lwa/reorder.hpp"

#include <limits>

namespace lwa::reorder {

std::map<std::uint16_t, ReorderBuffer::Held>::iterator ReorderBuffer::modular_first() {
    // Smallest buffered SN in modular order relative to expected_sn_:
    // first key >= expected, wrapping to the lowest key otherwise.
    auto it = buffer_.lower_bound(*expected_sn_);
    if (it == buffer_.end()) it = buffer_.begin();
    return it;
}

double ReorderBuffer::oldest_hold_time() const {
    double oldest = std::numeric_limits<double>::infinity();
    for (const auto& [sn, held] : buffer_)
        if (held.held_since_ms < oldest) oldest = held.held_since_ms;
    return oldest;
}

void ReorderBuffer::release_run(std::vector<pdcp::PdcpPdu>& out) {
    // Pop the maximal consecutive run starting at expected_sn_.
    for (;;) {
        auto it = buffer_.find(*expected_sn_);
        if (it == buffer_.end()) break;
        out.push_back(std::move(it->second.pdu));
        ++stats_.delivered;
        buffer_.erase(it);
        expected_sn_ = static_cast<std::uint16_t>((*expected_sn_ + 1) % kSnModulus);
    }
}

void ReorderBuffer::advance_to_oldest_buffered(std::vector<pdcp::PdcpPdu>& out) {
    std::uint16_t target = modular_first()->first;
    stats_.skipped_lost += (target - *expected_sn_) & (kSnModulus - 1);
    expected_sn_ = target;
    release_run(out);
}

std::vector<pdcp::PdcpPdu> ReorderBuffer::feed(pdcp::PdcpPdu pdu, double now_ms) {
    std::vector<pdcp::PdcpPdu> out;

    if (!expected_sn_) expected_sn_ = pdu.sn;

    if (pdu.sn == *expected_sn_) {
        out.push_back(std::move(pdu));
        ++stats_.delivered;
        expected_sn_ = static_cast<std::uint16_t>((*expected_sn_ + 1) % kSnModulus);
        release_run(out);
        return out;
    }

    if (!sn_after(*expected_sn_, pdu.sn)) {
        // Behind the window (or antipodal): the slot was already passed.
        ++stats_.late_dropped;
        return out;
    }

    if (buffer_.contains(pdu.sn)) {
        ++stats_.duplicates;
        return out;
    }

    buffer_.emplace(pdu.sn, Held{std::move(pdu), now_ms});

    while (!buffer_.empty() &&
           (buffer_.size() > cfg_.window_size ||
            now_ms - oldest_hold_time() >= cfg_.hold_timer_ms))
        advance_to_oldest_buffered(out);
    return out;
}

std::vector<pdcp::PdcpPdu> ReorderBuffer::flush(double now_ms) {
    std::vector<pdcp::PdcpPdu> out;
    while (!buffer_.empty() && now_ms - oldest_hold_time() >= cfg_.hold_timer_ms)
        advance_to_oldest_buffered(out);
    return out;
}

std::vector<pdcp::PdcpPdu> ReorderBuffer::drain() {
    std::vector<pdcp::PdcpPdu> out;
    while (!buffer_.empty()) advance_to_oldest_buffered(out);
    return out;
}

}  // namespace lwa::reorder
