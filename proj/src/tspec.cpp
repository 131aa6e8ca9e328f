#include "hccasim/tspec.hpp"

#include <cmath>

#include "hccasim/error.hpp"

namespace hccasim {

void Tspec::validate() const {
    if (nominal_msdu_bytes <= 0 || nominal_msdu_bytes > max_msdu_bytes) {
        throw ConfigError("nominal MSDU size must satisfy 0 < nominal <= max");
    }
    if (mean_data_rate_bps <= 0 || phy_rate_bps <= 0) {
        throw ConfigError("data rates must be positive");
    }
    if (delay_bound_s <= 0 || max_service_interval_s <= 0) {
        throw ConfigError("delay bound and max service interval must be positive");
    }
    if (max_service_interval_s > delay_bound_s) {
        throw ConfigError("max service interval exceeds delay bound");
    }
}

Tspec derive_tspec(const VideoTrace& trace, double max_service_interval_s, double delay_bound_s,
                   double phy_rate_bps) {
    const TraceStats stats = compute_stats(trace);
    Tspec tspec;
    // Nominal size is the mean rounded up to whole bytes, never under it.
    tspec.nominal_msdu_bytes = static_cast<Bytes>(std::ceil(stats.mean_size_bytes));
    tspec.max_msdu_bytes = stats.max_size_bytes;
    tspec.mean_data_rate_bps = stats.mean_bit_rate_bps;
    tspec.delay_bound_s = delay_bound_s;
    tspec.phy_rate_bps = phy_rate_bps;
    tspec.max_service_interval_s = max_service_interval_s;
    tspec.validate();
    return tspec;
}

}  // namespace hccasim
