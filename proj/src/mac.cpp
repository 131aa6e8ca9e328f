#include "hccasim/mac.hpp"

#include "hccasim/error.hpp"

namespace hccasim {

void PhyMacParams::validate() const {
    if (sifs_us <= 0 || pifs_us <= 0 || slot_us <= 0) {
        throw ConfigError("interframe spaces and slot time must be positive");
    }
    if (pifs_us <= sifs_us) {
        throw ConfigError("pifs must exceed sifs");
    }
    if (plcp_rate_bps <= 0 || data_rate_bps <= 0 || basic_rate_bps <= 0) {
        throw ConfigError("all rates must be positive");
    }
    if (preamble_bytes < 0 || plcp_header_bytes < 0 || mac_header_bytes < 0 || ack_bytes < 0 ||
        poll_bytes < 0) {
        throw ConfigError("frame component lengths must be non-negative");
    }
}

Micros phy_header_time(const PhyMacParams& p) {
    return airtime_us(8.0 * static_cast<double>(p.preamble_bytes + p.plcp_header_bytes),
                      p.plcp_rate_bps);
}

Micros data_frame_time(Bytes payload_bytes, const PhyMacParams& p) {
    return phy_header_time(p) +
           airtime_us(8.0 * static_cast<double>(p.mac_header_bytes + payload_bytes),
                      p.data_rate_bps);
}

Micros ack_time(const PhyMacParams& p) {
    return phy_header_time(p) + airtime_us(8.0 * static_cast<double>(p.ack_bytes),
                                           p.basic_rate_bps);
}

Micros poll_time(const PhyMacParams& p) {
    return phy_header_time(p) + airtime_us(8.0 * static_cast<double>(p.poll_bytes),
                                           p.basic_rate_bps);
}

Micros txop_overhead(int n_msdus, const PhyMacParams& p) {
    // Poll exchange up front, then per MSDU: headers, SIFS, ACK, and the
    // SIFS separating it from the next exchange; the SIFS after the final
    // ACK is not part of the grant.
    const Micros per_msdu = data_frame_time(0, p) + p.sifs_us + ack_time(p) + p.sifs_us;
    return poll_time(p) + p.sifs_us + static_cast<Micros>(n_msdus) * per_msdu - p.sifs_us;
}

}  // namespace hccasim
