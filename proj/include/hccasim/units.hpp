// Shared scalar types and duration arithmetic.
//
// All channel-time bookkeeping is done in whole microseconds; airtimes round
// up at the point where bits-on-air turn into a duration.
#pragma once

#include <cmath>
#include <cstdint>

namespace hccasim {

using Micros = std::int64_t;  // durations and timestamps, microseconds
using Bytes = std::int64_t;   // payload and header sizes, bytes

/// Time to put `bits` on the air at `rate_bps`, rounded up to whole
/// microseconds. `bits` must be >= 0 and `rate_bps` > 0.
inline Micros airtime_us(double bits, double rate_bps) {
    long double us = static_cast<long double>(bits) * 1e6L / static_cast<long double>(rate_bps);
    return static_cast<Micros>(std::ceil(us));
}

}  // namespace hccasim
