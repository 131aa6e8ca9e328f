// Negotiated traffic specification for one uplink stream.
#pragma once

#include "hccasim/trace.hpp"
#include "hccasim/units.hpp"

namespace hccasim {

struct Tspec {
    Bytes nominal_msdu_bytes = 0;     // mean MSDU size
    Bytes max_msdu_bytes = 0;         // largest MSDU the stream may carry
    double mean_data_rate_bps = 0.0;
    double delay_bound_s = 0.0;       // max tolerated queueing + transfer delay
    double phy_rate_bps = 0.0;        // assumed physical bit rate
    double max_service_interval_s = 0.0;

    /// Throws ConfigError if any field violates its bounds or if the maximum
    /// service interval exceeds the delay bound.
    void validate() const;
};

/// Derive a Tspec from a trace: nominal size is the mean frame size rounded
/// up, max size the largest frame, mean data rate the trace's mean bit rate.
/// Service interval, delay bound and physical rate are caller policy.
Tspec derive_tspec(const VideoTrace& trace, double max_service_interval_s, double delay_bound_s,
                   double phy_rate_bps);

}  // namespace hccasim
