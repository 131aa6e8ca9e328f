// Deterministic PHY/MAC timing model for an 802.11b channel.
//
// Every frame duration derives from the parameter set below. Control frames
// (ACK, QoS CF-Poll) are sent at the basic rate with a full PHY header; data
// frames carry the MAC header and payload at the data rate. All results are
// whole microseconds, rounded up, so composed durations stay integral.
#pragma once

#include "hccasim/units.hpp"

namespace hccasim {

struct PhyMacParams {
    Micros sifs_us = 10;
    Micros pifs_us = 30;
    Micros slot_us = 20;
    Bytes preamble_bytes = 18;
    Bytes plcp_header_bytes = 6;
    double plcp_rate_bps = 1e6;
    Bytes mac_header_bytes = 36;
    double data_rate_bps = 11e6;
    double basic_rate_bps = 1e6;
    Bytes ack_bytes = 14;
    Bytes poll_bytes = 36;

    void validate() const;  // throws ConfigError on nonpositive fields or pifs <= sifs
};

/// Physical preamble + PLCP header airtime. 192 us with the defaults.
Micros phy_header_time(const PhyMacParams& p);

/// Airtime of a data frame carrying `payload_bytes`: PHY header plus MAC
/// header and payload at the data rate.
Micros data_frame_time(Bytes payload_bytes, const PhyMacParams& p);

/// ACK airtime at the basic rate. 304 us with the defaults.
Micros ack_time(const PhyMacParams& p);

/// QoS CF-Poll airtime at the basic rate. 480 us with the defaults.
Micros poll_time(const PhyMacParams& p);

/// Non-payload channel time of a TXOP that carries n_msdus data MSDUs:
///
///     poll + SIFS + n * (headers + SIFS + ACK + SIFS) - trailing SIFS
///
/// i.e. the poll exchange plus per-MSDU header, interframe-space and ACK
/// costs. The PIFS that precedes the poll is charged by the engine timeline,
/// not here. Affine in n_msdus: 480 + 543 * n with the defaults.
Micros txop_overhead(int n_msdus, const PhyMacParams& p);

}  // namespace hccasim
