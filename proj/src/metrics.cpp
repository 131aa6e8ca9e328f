#include "hccasim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hccasim/error.hpp"

namespace hccasim {

double mean_e2e_delay(const EventLog& log) {
    double sum_us = 0.0;
    std::int64_t samples = 0;
    for (const EventRecord& r : log.records) {
        if (r.kind == EventKind::DataRx) {
            sum_us += static_cast<double>(r.time_us - r.frame_gen_us);
            ++samples;
        }
    }
    if (samples == 0) {
        throw SimError("no samples");
    }
    return sum_us / static_cast<double>(samples) * 1e-6;
}

double aggregate_throughput(const EventLog& log, double window_s) {
    if (window_s <= 0.0) {
        throw SimError("measurement window must be positive");
    }
    double bits = 0.0;
    for (const EventRecord& r : log.records) {
        if (r.kind == EventKind::DataRx) {
            bits += 8.0 * static_cast<double>(r.payload_bytes);
        }
    }
    return bits / window_s;
}

double aggregate_txop(const EventLog& log) {
    Micros total_us = 0;
    for (const EventRecord& r : log.records) {
        if (r.kind == EventKind::Poll) {
            total_us += r.granted_us;
        }
    }
    return static_cast<double>(total_us) * 1e-6;
}

std::vector<PerSiGrant> per_si_txop(const EventLog& log, int station_id) {
    std::vector<PerSiGrant> series;
    for (const EventRecord& r : log.records) {
        if (r.kind == EventKind::Poll && r.station_id == station_id) {
            series.push_back({r.si_index, r.station_id, r.granted_us});
        }
    }
    if (series.empty()) {
        throw SimError("unknown station " + std::to_string(station_id));
    }
    return series;
}

MetricsBundle compute_metrics(const SimResult& result, double window_s) {
    MetricsBundle bundle;

    struct Acc {
        double sum_us = 0.0;
        std::int64_t n = 0;
    };
    std::map<int, Acc> per_station;
    for (const EventRecord& r : result.log.records) {
        if (r.kind == EventKind::DataRx) {
            Acc& acc = per_station[r.station_id];
            acc.sum_us += static_cast<double>(r.time_us - r.frame_gen_us);
            acc.n += 1;
            bundle.delay_samples += 1;
        }
    }
    if (bundle.delay_samples > 0) {
        bundle.mean_e2e_delay_s = mean_e2e_delay(result.log);
    } else {
        bundle.mean_e2e_delay_s = std::numeric_limits<double>::quiet_NaN();
    }
    for (const auto& [id, acc] : per_station) {
        bundle.per_station_delay.push_back(
            {id, acc.sum_us / static_cast<double>(acc.n) * 1e-6, acc.n});
    }

    bundle.aggregate_throughput_bps = aggregate_throughput(result.log, window_s);
    bundle.aggregate_txop_s = aggregate_txop(result.log);

    for (int id : result.admitted) {
        const std::vector<PerSiGrant> series = per_si_txop(result.log, id);
        bundle.per_si_txop.insert(bundle.per_si_txop.end(), series.begin(), series.end());
    }
    return bundle;
}

}  // namespace hccasim
