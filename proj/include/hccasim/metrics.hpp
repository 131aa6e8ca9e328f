// Evaluation metrics aggregated from an event log: end-to-end delay,
// aggregate throughput, and granted-TXOP totals and series.
#pragma once

#include <cstdint>
#include <vector>

#include "hccasim/engine.hpp"
#include "hccasim/units.hpp"

namespace hccasim {

struct PerSiGrant {
    std::int64_t si_index;
    int station_id;
    Micros granted_us;
};

struct StationDelay {
    int station_id;
    double mean_delay_s;
    std::int64_t samples;
};

struct MetricsBundle {
    double mean_e2e_delay_s = 0.0;
    std::int64_t delay_samples = 0;
    double aggregate_throughput_bps = 0.0;
    double aggregate_txop_s = 0.0;
    std::vector<PerSiGrant> per_si_txop;        // ordered by (station_id, si_index)
    std::vector<StationDelay> per_station_delay;
};

/// Mean over all delivered frames of (reception time - generation time), in
/// seconds. Throws SimError("no samples") when the log has no deliveries.
double mean_e2e_delay(const EventLog& log);

/// Delivered payload bits divided by the measurement window, bits/second.
double aggregate_throughput(const EventLog& log, double window_s);

/// Sum of granted TXOP durations over all polls, in seconds.
double aggregate_txop(const EventLog& log);

/// Granted-TXOP series for one station, ordered by service interval. Throws
/// SimError when the station was never polled.
std::vector<PerSiGrant> per_si_txop(const EventLog& log, int station_id);

/// Assemble the full bundle for a run. window_s is the post-warmup
/// measurement window. A run with zero deliveries yields zero samples and
/// NaN mean delay rather than an error.
MetricsBundle compute_metrics(const SimResult& result, double window_s);

}  // namespace hccasim
