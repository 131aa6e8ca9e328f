// Discrete-event simulation of polled contention-free channel access.
//
// Timeline, per run:
//   * Admission happens once at t = 0: the service interval is computed from
//     all configured streams' maximum service intervals, then streams are
//     admitted in listed order while the admission inequality holds. Rejected
//     stations are never polled and generate no traffic.
//   * Beacons fire every beacon interval; each beacon interval contains a
//     fixed number of service intervals. At each SI boundary the coordinator
//     waits PIFS and polls each admitted station in admission order.
//   * A polled station sends head-of-queue frames while the remaining grant
//     covers a full exchange (data + SIFS + ACK, SIFS-separated). Each data
//     frame piggybacks the size of the station's next trace frame; the
//     coordinator keeps the latest value per station.
//   * Under the reference scheduler the next poll waits until the full grant
//     has elapsed even when the station finished early; under the dynamic
//     scheduler the next poll follows PIFS after the previous exchange ends.
//   * A lost data frame consumes its airtime and ACK timeout, stays at the
//     head of the queue for the next service interval, and clears the
//     coordinator's feedback for that station, so the next grant falls back
//     to the reference TXOP.
//   * Stations begin generating frames at the end of warmup; traces shorter
//     than the run repeat cyclically, shifted by the trace span.
#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "hccasim/mac.hpp"
#include "hccasim/scheduler.hpp"
#include "hccasim/trace.hpp"
#include "hccasim/tspec.hpp"
#include "hccasim/units.hpp"

namespace hccasim {

struct StationConfig {
    VideoTrace trace;
    Tspec tspec;
};

struct SimConfig {
    Micros beacon_interval_us = 160000;
    Micros t_cp_us = 0;  // beacon-interval share reserved for contention access
    PhyMacParams mac;
    SchedulerKind scheduler = SchedulerKind::ReferenceHcca;
    std::vector<StationConfig> stations;
    Micros sim_duration_us = 0;
    Micros warmup_us = 0;
    double loss_probability = 0.0;
    bool qs_quantized = false;  // report next-frame size in 256-byte units,
                                // saturating at the 8-bit field range
    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
};

enum class EventKind { Beacon, SiStart, Poll, DataRx, Ack, Drop, TxopEnd };

/// One timeline record. Fields that do not apply to a kind are left at their
/// defaults (station_id -1, sizes and times 0). used_us is the channel time
/// consumed within the enclosing TXOP as of this record's timestamp.
struct EventRecord {
    Micros time_us = 0;
    EventKind kind = EventKind::Beacon;
    int station_id = -1;
    std::int64_t si_index = -1;
    Micros granted_us = 0;
    Micros used_us = 0;
    Bytes payload_bytes = 0;
    Micros frame_gen_us = 0;

    bool operator==(const EventRecord&) const = default;
};

struct EventLog {
    std::vector<EventRecord> records;
};

/// Per-station frame accounting at the end of a run.
struct StationCounters {
    int station_id = 0;
    std::int64_t generated = 0;  // frames with generation time inside the run
    std::int64_t delivered = 0;
    std::int64_t queued_at_end = 0;
};

struct SimResult {
    EventLog log;
    std::vector<int> admitted;
    std::vector<int> rejected;
    Micros si_us = 0;
    std::vector<StationCounters> counters;
    SimConfig config;  // echo of the run's configuration
};

/// Internal per-station state; exposed for white-box tests.
struct StationState {
    int id = 0;
    VideoTrace trace;
    Tspec tspec;
    struct QueuedFrame {
        std::int64_t global_index;
        Bytes size_bytes;
        Micros gen_us;
    };
    std::deque<QueuedFrame> queue;
    std::int64_t next_global_index = 0;  // next trace frame not yet enqueued
    StreamEntry entry;
};

/// Run one simulation. Deterministic for a fixed (config, seed). Throws
/// ConfigError on an invalid configuration and SimError when admission
/// produces an empty polling list.
SimResult run(const SimConfig& config);

std::string to_string(EventKind kind);
std::string to_string(SchedulerKind kind);

}  // namespace hccasim
