#include "hccasim/engine.hpp"

#include <algorithm>
#include <cmath>

#include "hccasim/error.hpp"
#include "hccasim/metrics.hpp"
#include "hccasim/rng.hpp"

namespace hccasim {

void SimConfig::validate() const {
    if (beacon_interval_us <= 0) throw ConfigError("beacon interval must be positive");
    if (t_cp_us < 0 || t_cp_us >= beacon_interval_us) {
        throw ConfigError("contention-period share must satisfy 0 <= t_cp < beacon interval");
    }
    if (sim_duration_us <= 0) throw ConfigError("simulation duration must be positive");
    if (warmup_us < 0 || warmup_us >= sim_duration_us) {
        throw ConfigError("warmup must satisfy 0 <= warmup < duration");
    }
    if (loss_probability < 0.0 || loss_probability > 1.0) {
        throw ConfigError("loss probability must lie in [0, 1]");
    }
    if (stations.empty()) throw ConfigError("at least one station is required");
    mac.validate();
    for (const StationConfig& s : stations) {
        s.tspec.validate();
        if (s.trace.frames.empty()) throw ConfigError("station trace has no frames");
        if (s.trace.frame_interval_us <= 0) throw ConfigError("trace frame interval must be positive");
    }
}

namespace {

// Traffic generation: admitted stations replay their trace cyclically from
// the end of warmup, arrival times normalized so each station's first frame
// is generated exactly at warmup.
struct TrafficSource {
    std::vector<Micros> offsets;  // arrival offsets within one cycle
    std::vector<Bytes> sizes;
    Micros span_us = 0;
    Micros start_us = 0;

    explicit TrafficSource(const VideoTrace& trace, Micros warmup_us) {
        const Micros base = trace.frames.front().arrival_us;
        offsets.reserve(trace.frames.size());
        sizes.reserve(trace.frames.size());
        for (const VideoFrame& f : trace.frames) {
            offsets.push_back(f.arrival_us - base);
            sizes.push_back(f.size_bytes);
        }
        const auto n = static_cast<Micros>(trace.frames.size());
        // Repeat at the nominal cadence, stretched if the trace's own span
        // is longer, so generation times stay strictly increasing per cycle.
        span_us = std::max(n * trace.frame_interval_us,
                           offsets.back() + trace.frame_interval_us);
        start_us = warmup_us;
    }

    Micros gen_time(std::int64_t global_index) const {
        const auto n = static_cast<std::int64_t>(offsets.size());
        return start_us + (global_index / n) * span_us +
               offsets[static_cast<std::size_t>(global_index % n)];
    }

    Bytes size_of(std::int64_t global_index) const {
        return sizes[static_cast<std::size_t>(global_index % static_cast<std::int64_t>(sizes.size()))];
    }

    /// Size the station reports alongside frame `global_index`: its next
    /// frame in cyclic order.
    Bytes next_size_after(std::int64_t global_index) const {
        return size_of(global_index + 1);
    }
};

Bytes quantize_qs(Bytes size_bytes) {
    // 256-byte units in an 8-bit field: round up, saturate at 255 units.
    const Bytes units = std::min<Bytes>((size_bytes + 255) / 256, 255);
    return units * 256;
}

struct Station {
    StationState state;
    TrafficSource source;
    std::mt19937_64 loss_rng;
    std::int64_t generated = 0;
    std::int64_t delivered = 0;

    Station(int id, const StationConfig& cfg, Micros warmup_us, std::uint64_t seed)
        : source(cfg.trace, warmup_us),
          loss_rng(substream(seed, static_cast<std::uint64_t>(id) + 0x10000)) {
        state.id = id;
        state.trace = cfg.trace;
        state.tspec = cfg.tspec;
        state.entry.station_id = id;
        state.entry.tspec = cfg.tspec;
    }

    /// Move every frame generated by `now` (and inside the run) into the queue.
    void enqueue_arrivals(Micros now, Micros sim_end) {
        while (true) {
            const Micros t = source.gen_time(state.next_global_index);
            if (t > now || t >= sim_end) break;
            state.queue.push_back({state.next_global_index, source.size_of(state.next_global_index), t});
            ++state.next_global_index;
            ++generated;
        }
    }
};

}  // namespace

SimResult run(const SimConfig& config) {
    config.validate();

    SimResult result;
    result.config = config;

    std::vector<Station> stations;
    stations.reserve(config.stations.size());
    for (std::size_t i = 0; i < config.stations.size(); ++i) {
        stations.emplace_back(static_cast<int>(i), config.stations[i], config.warmup_us,
                              config.seed);
    }

    // Service interval from all configured streams, then admission in listed
    // order; a stream's reference TXOP is frozen at admission time.
    std::vector<Micros> msis;
    msis.reserve(stations.size());
    for (const Station& s : stations) {
        msis.push_back(static_cast<Micros>(
            std::llround(s.state.tspec.max_service_interval_s * 1e6)));
    }
    const Micros si = compute_si(config.beacon_interval_us, msis);
    const int slots_per_beacon = compute_si_divisor(config.beacon_interval_us, msis);
    result.si_us = si;

    std::vector<Station*> admitted;
    std::vector<AdmittedStream> admitted_load;
    for (Station& s : stations) {
        const Micros txop = compute_reference_txop(s.state.tspec, si, config.mac);
        if (admit(admitted_load, txop, si, config.beacon_interval_us, config.t_cp_us)) {
            s.state.entry.admitted_txop_us = txop;
            admitted_load.push_back({txop, si});
            admitted.push_back(&s);
            result.admitted.push_back(s.state.id);
        } else {
            result.rejected.push_back(s.state.id);
        }
    }
    if (admitted.empty()) {
        throw SimError("empty polling list: no stream admitted");
    }

    EventLog& log = result.log;
    const Micros sim_end = config.sim_duration_us;
    const PhyMacParams& mac = config.mac;
    const Micros t_poll_frame = poll_time(mac);
    const Micros t_ack = ack_time(mac);

    std::int64_t si_index = 0;
    Micros channel_free_at = 0;  // first instant the medium is idle again

    for (Micros beacon_t = 0; beacon_t < sim_end; beacon_t += config.beacon_interval_us) {
        log.records.push_back({beacon_t, EventKind::Beacon});

        for (int slot = 0; slot < slots_per_beacon; ++slot) {
            const Micros si_start = beacon_t + static_cast<Micros>(slot) * si;
            if (si_start >= sim_end) break;
            log.records.push_back({si_start, EventKind::SiStart, -1, si_index});

            // Exchanges never overrun in admitted configurations, but a
            // saturated boundary case may spill; polling then resumes as
            // soon as the medium frees up.
            Micros cursor = std::max(si_start, channel_free_at);

            for (Station* sp : admitted) {
                Station& st = *sp;
                const Micros granted =
                    next_grant(st.state.entry, config.scheduler, si, mac);
                const Micros poll_at = cursor + mac.pifs_us;
                log.records.push_back({poll_at, EventKind::Poll, st.state.id, si_index, granted});

                st.enqueue_arrivals(poll_at, sim_end);

                // Grant accounting starts at the poll frame; exchanges are
                // data + SIFS + ACK, separated by SIFS.
                Micros avail = granted - t_poll_frame - mac.sifs_us;
                Micros now = poll_at + t_poll_frame + mac.sifs_us;
                bool first_exchange = true;

                while (!st.state.queue.empty()) {
                    const StationState::QueuedFrame& head = st.state.queue.front();
                    const Micros lead = first_exchange ? 0 : mac.sifs_us;
                    const Micros t_data = data_frame_time(head.size_bytes, mac);
                    const Micros need = lead + t_data + mac.sifs_us + t_ack;
                    if (need > avail) break;

                    now += lead;
                    const Micros data_end = now + t_data;
                    const bool lost = config.loss_probability > 0.0 &&
                                      uniform01(st.loss_rng) < config.loss_probability;
                    if (lost) {
                        log.records.push_back({data_end, EventKind::Drop, st.state.id, si_index,
                                               granted, data_end - poll_at, head.size_bytes,
                                               head.gen_us});
                        // Frame stays at the head for the next service
                        // interval; the coordinator saw nothing, so its
                        // next-frame report is gone too.
                        st.state.entry.feedback_bytes.reset();
                        now = data_end + mac.sifs_us + t_ack;  // ACK timeout
                        break;
                    }

                    log.records.push_back({data_end, EventKind::DataRx, st.state.id, si_index,
                                           granted, data_end - poll_at, head.size_bytes,
                                           head.gen_us});
                    const Micros ack_end = data_end + mac.sifs_us + t_ack;
                    log.records.push_back({ack_end, EventKind::Ack, st.state.id, si_index, granted,
                                           ack_end - poll_at, head.size_bytes, head.gen_us});

                    Bytes report = st.source.next_size_after(head.global_index);
                    if (config.qs_quantized) report = quantize_qs(report);
                    st.state.entry.feedback_bytes = report;

                    st.state.queue.pop_front();
                    ++st.delivered;
                    avail -= need;
                    now = ack_end;
                    first_exchange = false;
                }

                const Micros used = now - poll_at;
                const Micros txop_end = config.scheduler == SchedulerKind::ReferenceHcca
                                            ? poll_at + granted
                                            : now;
                log.records.push_back({txop_end, EventKind::TxopEnd, st.state.id, si_index, granted,
                                       used});
                cursor = txop_end;
            }
            channel_free_at = cursor;
            ++si_index;
        }
    }

    // Frames that arrived after the last poll still count as generated.
    for (Station& s : stations) {
        const bool was_admitted =
            std::find(result.admitted.begin(), result.admitted.end(), s.state.id) !=
            result.admitted.end();
        if (was_admitted) {
            s.enqueue_arrivals(sim_end, sim_end);
        }
        result.counters.push_back({s.state.id, s.generated, s.delivered,
                                   static_cast<std::int64_t>(s.state.queue.size())});
    }
    return result;
}

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Beacon: return "Beacon";
        case EventKind::SiStart: return "SiStart";
        case EventKind::Poll: return "Poll";
        case EventKind::DataRx: return "DataRx";
        case EventKind::Ack: return "Ack";
        case EventKind::Drop: return "Drop";
        case EventKind::TxopEnd: return "TxopEnd";
    }
    return "?";
}

std::string to_string(SchedulerKind kind) {
    return kind == SchedulerKind::ReferenceHcca ? "hcca" : "dyn";
}

}  // namespace hccasim
