#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "hccasim/engine.hpp"
#include "hccasim/error.hpp"
#include "hccasim/metrics.hpp"
#include "hccasim/scheduler.hpp"
#include "hccasim/trace.hpp"
#include "hccasim/tspec.hpp"

using namespace hccasim;

namespace {

VideoTrace constant_trace(Bytes size, int count, Micros interval_us = 40000) {
    VideoTrace t;
    t.frame_interval_us = interval_us;
    for (int i = 0; i < count; ++i) {
        t.frames.push_back({i, FrameType::P, i * interval_us, size});
    }
    return t;
}

SimConfig cbr_config(SchedulerKind kind, Micros duration_us = 120000) {
    SimConfig config;
    config.scheduler = kind;
    config.sim_duration_us = duration_us;
    StationConfig station;
    station.trace = constant_trace(1000, 3);
    station.tspec = derive_tspec(station.trace, 0.04, 0.08, 11e6);
    config.stations.push_back(station);
    return config;
}

SimConfig vbr_config(SchedulerKind kind, int stations, Micros duration_us,
                     double mean = 1000.0, double cov = 0.6, std::uint64_t trace_seed = 21) {
    SimConfig config;
    config.scheduler = kind;
    config.sim_duration_us = duration_us;
    for (int i = 0; i < stations; ++i) {
        StationConfig station;
        station.trace = generate_synthetic(mean, cov, 250, 40000, trace_seed + static_cast<std::uint64_t>(i));
        station.tspec = derive_tspec(station.trace, 0.04, 0.08, 11e6);
        config.stations.push_back(station);
    }
    return config;
}

std::vector<EventRecord> events_of(const SimResult& r, EventKind kind, int station_id = -2) {
    std::vector<EventRecord> out;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == kind && (station_id == -2 || e.station_id == station_id)) {
            out.push_back(e);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("constant-rate reference timeline: one exchange per service interval") {
    const SimResult r = run(cbr_config(SchedulerKind::ReferenceHcca));
    CHECK(r.si_us == 40000);
    REQUIRE(r.admitted == std::vector<int>{0});

    const auto polls = events_of(r, EventKind::Poll);
    const auto rx = events_of(r, EventKind::DataRx);
    REQUIRE(polls.size() == 3);
    REQUIRE(rx.size() == 3);

    for (const EventRecord& e : polls) {
        CHECK(e.granted_us == 1751);
    }
    // Each frame arrives at its SI boundary and is delivered 1466 us later:
    // PIFS 30 + poll 480 + SIFS 10 + data frame 946.
    for (std::size_t i = 0; i < rx.size(); ++i) {
        CHECK(rx[i].frame_gen_us == static_cast<Micros>(i) * 40000);
        CHECK(rx[i].time_us - rx[i].frame_gen_us == 1466);
        CHECK(rx[i].used_us <= rx[i].granted_us);
    }
}

TEST_CASE("constant-rate dynamic timeline matches the reference grants") {
    const SimResult ref = run(cbr_config(SchedulerKind::ReferenceHcca));
    const SimResult dyn = run(cbr_config(SchedulerKind::DynamicTxop));

    const auto ref_rx = events_of(ref, EventKind::DataRx);
    const auto dyn_rx = events_of(dyn, EventKind::DataRx);
    REQUIRE(ref_rx.size() == dyn_rx.size());
    for (std::size_t i = 0; i < ref_rx.size(); ++i) {
        CHECK(ref_rx[i].time_us == dyn_rx[i].time_us);
        CHECK(ref_rx[i].payload_bytes == dyn_rx[i].payload_bytes);
    }

    // With nominal == max frame size the dynamic grant equals the fixed one.
    const auto dyn_polls = events_of(dyn, EventKind::Poll);
    for (const EventRecord& e : dyn_polls) {
        CHECK(e.granted_us == compute_dynamic_txop(1000, 11e6, PhyMacParams{}));
        CHECK(e.granted_us == 1751);
    }

    // Same bytes delivered either way.
    CHECK(aggregate_throughput(ref.log, 0.12) ==
          doctest::Approx(aggregate_throughput(dyn.log, 0.12)));
}

TEST_CASE("dynamic TXOPs end with the exchange, reference TXOPs at the grant") {
    const SimResult ref = run(cbr_config(SchedulerKind::ReferenceHcca));
    const SimResult dyn = run(cbr_config(SchedulerKind::DynamicTxop));
    const auto ref_polls = events_of(ref, EventKind::Poll);
    const auto ref_ends = events_of(ref, EventKind::TxopEnd);
    const auto dyn_acks = events_of(dyn, EventKind::Ack);
    const auto dyn_ends = events_of(dyn, EventKind::TxopEnd);
    REQUIRE(ref_ends.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ref_ends[i].time_us == ref_polls[i].time_us + ref_polls[i].granted_us);
        CHECK(dyn_ends[i].time_us == dyn_acks[i].time_us);
        CHECK(dyn_ends[i].used_us == 1750);
    }
}

TEST_CASE("dynamic polls advance to PIFS after the previous exchange") {
    // Two stations, constant frames. Under the fixed scheduler the second
    // poll waits out station 0's whole grant; under the dynamic scheduler it
    // follows right after station 0's exchange.
    auto two_station = [](SchedulerKind kind) {
        SimConfig config;
        config.scheduler = kind;
        config.sim_duration_us = 120000;
        for (int i = 0; i < 2; ++i) {
            StationConfig station;
            station.trace = constant_trace(1000, 3);
            station.tspec = derive_tspec(station.trace, 0.04, 0.08, 11e6);
            station.tspec.max_msdu_bytes = 8000;  // leave slack in the fixed grant
            config.stations.push_back(station);
        }
        return run(config);
    };
    const SimResult ref = two_station(SchedulerKind::ReferenceHcca);
    const SimResult dyn = two_station(SchedulerKind::DynamicTxop);

    auto polls_in_si = [](const SimResult& r, std::int64_t si) {
        std::vector<EventRecord> out;
        for (const EventRecord& e : r.log.records) {
            if (e.kind == EventKind::Poll && e.si_index == si) out.push_back(e);
        }
        return out;
    };
    auto txop_ends_in_si = [](const SimResult& r, std::int64_t si) {
        std::vector<EventRecord> out;
        for (const EventRecord& e : r.log.records) {
            if (e.kind == EventKind::TxopEnd && e.si_index == si) out.push_back(e);
        }
        return out;
    };

    const PhyMacParams mac;
    // Use an interval where both stations have feedback on file (si 1).
    const auto ref_polls = polls_in_si(ref, 1);
    const auto dyn_polls = polls_in_si(dyn, 1);
    const auto ref_ends = txop_ends_in_si(ref, 1);
    const auto dyn_ends = txop_ends_in_si(dyn, 1);
    REQUIRE(ref_polls.size() == 2);
    REQUIRE(dyn_polls.size() == 2);

    // Fixed: second poll at first poll + full grant + PIFS.
    CHECK(ref_polls[1].time_us == ref_polls[0].time_us + ref_polls[0].granted_us + mac.pifs_us);
    // Dynamic: second poll at first exchange end + PIFS, ahead of schedule.
    CHECK(dyn_polls[1].time_us == dyn_ends[0].time_us + mac.pifs_us);
    CHECK(dyn_polls[1].time_us < ref_polls[1].time_us);
    CHECK(dyn_ends[0].used_us == dyn_ends[0].time_us - dyn_polls[0].time_us);
}

TEST_CASE("total loss produces drops and no deliveries") {
    SimConfig config = cbr_config(SchedulerKind::ReferenceHcca);
    config.loss_probability = 1.0;
    const SimResult r = run(config);
    CHECK(events_of(r, EventKind::DataRx).empty());
    CHECK_FALSE(events_of(r, EventKind::Drop).empty());
    // The head frame is retried every service interval.
    for (const EventRecord& e : events_of(r, EventKind::Drop)) {
        CHECK(e.frame_gen_us == 0);
    }
    CHECK(r.counters[0].delivered == 0);
    CHECK(r.counters[0].queued_at_end == r.counters[0].generated);
}

TEST_CASE("determinism: identical configs give identical logs") {
    SimConfig config = vbr_config(SchedulerKind::DynamicTxop, 2, 2'000'000);
    config.loss_probability = 0.3;
    config.seed = 99;
    const SimResult a = run(config);
    const SimResult b = run(config);
    REQUIRE(a.log.records.size() == b.log.records.size());
    CHECK(a.log.records == b.log.records);

    SimConfig other = config;
    other.seed = 100;
    const SimResult c = run(other);
    CHECK(a.log.records != c.log.records);
}

TEST_CASE("adding a station does not perturb another station's loss pattern") {
    SimConfig one = vbr_config(SchedulerKind::ReferenceHcca, 1, 2'000'000);
    one.loss_probability = 0.4;
    SimConfig two = vbr_config(SchedulerKind::ReferenceHcca, 2, 2'000'000);
    two.loss_probability = 0.4;

    const auto drops_one = events_of(run(one), EventKind::Drop, 0);
    const auto drops_two = events_of(run(two), EventKind::Drop, 0);
    REQUIRE(drops_one.size() == drops_two.size());
    for (std::size_t i = 0; i < drops_one.size(); ++i) {
        CHECK(drops_one[i].frame_gen_us == drops_two[i].frame_gen_us);
        CHECK(drops_one[i].si_index == drops_two[i].si_index);
    }
}

TEST_CASE("conservation without loss") {
    for (SchedulerKind kind : {SchedulerKind::ReferenceHcca, SchedulerKind::DynamicTxop}) {
        const SimResult r = run(vbr_config(kind, 3, 3'000'000));
        for (const StationCounters& c : r.counters) {
            CHECK(c.generated == c.delivered + c.queued_at_end);
        }
        // A matched cadence drains every frame as it arrives.
        CHECK(r.counters[0].queued_at_end == 0);
    }
}

TEST_CASE("log times never decrease and TXOPs never overlap") {
    SimConfig config = vbr_config(SchedulerKind::DynamicTxop, 3, 2'000'000);
    config.loss_probability = 0.2;
    const SimResult r = run(config);
    Micros last = 0;
    for (const EventRecord& e : r.log.records) {
        CHECK(e.time_us >= last);
        last = e.time_us;
    }
    // TXOP intervals, in log order, must not overlap, and no exchange may
    // consume more than its grant.
    Micros prev_end = 0;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::Poll) {
            CHECK(e.time_us >= prev_end);
        } else if (e.kind == EventKind::TxopEnd) {
            prev_end = e.time_us;
        } else if (e.kind == EventKind::DataRx || e.kind == EventKind::Ack) {
            CHECK(e.used_us <= e.granted_us);
        }
    }
}

TEST_CASE("channel accounting within each service interval") {
    const SimResult r = run(vbr_config(SchedulerKind::ReferenceHcca, 3, 2'000'000));
    const PhyMacParams mac;
    std::map<std::int64_t, Micros> granted_per_si;
    std::map<std::int64_t, int> polls_per_si;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::Poll) {
            granted_per_si[e.si_index] += e.granted_us;
            polls_per_si[e.si_index] += 1;
        }
    }
    for (const auto& [si_index, granted] : granted_per_si) {
        CHECK(granted + static_cast<Micros>(polls_per_si[si_index]) * mac.pifs_us <= r.si_us);
    }
}

TEST_CASE("FIFO delivery per station") {
    SimConfig config = vbr_config(SchedulerKind::DynamicTxop, 2, 4'000'000);
    config.loss_probability = 0.25;
    const SimResult r = run(config);
    std::map<int, Micros> last_gen;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::DataRx) {
            auto it = last_gen.find(e.station_id);
            if (it != last_gen.end()) {
                CHECK(e.frame_gen_us >= it->second);
            }
            last_gen[e.station_id] = e.frame_gen_us;
        }
    }
}

TEST_CASE("dynamic grants track the reported size and stay within reference") {
    const Micros duration = 4'000'000;
    const SimResult ref = run(vbr_config(SchedulerKind::ReferenceHcca, 2, duration));
    const SimResult dyn = run(vbr_config(SchedulerKind::DynamicTxop, 2, duration));

    std::map<std::pair<int, std::int64_t>, Micros> ref_grants;
    for (const EventRecord& e : ref.log.records) {
        if (e.kind == EventKind::Poll) ref_grants[{e.station_id, e.si_index}] = e.granted_us;
    }
    for (const EventRecord& e : dyn.log.records) {
        if (e.kind == EventKind::Poll) {
            REQUIRE(ref_grants.count({e.station_id, e.si_index}) == 1);
            CHECK(e.granted_us <= ref_grants[{e.station_id, e.si_index}]);
        }
    }
}

TEST_CASE("dynamic grants are consumed almost fully with exact reports and no loss") {
    const SimResult r = run(vbr_config(SchedulerKind::DynamicTxop, 1, 5'000'000));
    std::map<std::int64_t, int> deliveries;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::DataRx) deliveries[e.si_index] += 1;
        if (e.kind == EventKind::TxopEnd && e.si_index > 0) {
            // Grant covers the reported frame with at most the rounding slack.
            CHECK(e.granted_us - e.used_us >= 0);
            CHECK(e.granted_us - e.used_us <= 1);
        }
    }
    // Every poll after the first delivers exactly one frame.
    for (std::int64_t si = 1; si < 125; ++si) {
        CHECK(deliveries[si] == 1);
    }
}

TEST_CASE("after a drop the next grant falls back to the admitted TXOP") {
    SimConfig config = vbr_config(SchedulerKind::DynamicTxop, 2, 5'000'000);
    config.loss_probability = 0.3;
    config.seed = 7;
    const SimResult r = run(config);

    // Reconstruct each station's admitted TXOP from the scheduler.
    std::map<int, Micros> admitted_txop;
    for (int id : r.admitted) {
        admitted_txop[id] = compute_reference_txop(config.stations[static_cast<std::size_t>(id)].tspec,
                                                   r.si_us, config.mac);
    }

    // For every station: if its last data event in SI k was a Drop, the grant
    // at its next poll must be the fallback.
    std::map<int, EventKind> last_data_kind;
    int checked = 0;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::Poll) {
            auto it = last_data_kind.find(e.station_id);
            if (it != last_data_kind.end() && it->second == EventKind::Drop) {
                CHECK(e.granted_us == admitted_txop[e.station_id]);
                ++checked;
            }
        } else if (e.kind == EventKind::DataRx || e.kind == EventKind::Drop) {
            last_data_kind[e.station_id] = e.kind;
        }
    }
    CHECK(checked > 10);  // the predicate actually fired
}

TEST_CASE("stations begin generating at warmup") {
    SimConfig config = cbr_config(SchedulerKind::ReferenceHcca, 400000);
    config.warmup_us = 200000;
    const SimResult r = run(config);
    for (const EventRecord& e : events_of(r, EventKind::DataRx)) {
        CHECK(e.frame_gen_us >= 200000);
        CHECK(e.time_us >= 200000);
    }
    CHECK_FALSE(events_of(r, EventKind::DataRx).empty());
    // Polls still happen before warmup; they simply find empty queues.
    CHECK(events_of(r, EventKind::Poll).size() > events_of(r, EventKind::DataRx).size());
}

TEST_CASE("traces repeat cyclically past their span") {
    // 3-frame trace, 120 ms span, 360 ms run: 9 generated frames.
    const SimResult r = run(cbr_config(SchedulerKind::ReferenceHcca, 360000));
    CHECK(r.counters[0].generated == 9);
    CHECK(r.counters[0].delivered == 9);
    const auto rx = events_of(r, EventKind::DataRx);
    for (std::size_t i = 0; i < rx.size(); ++i) {
        CHECK(rx[i].frame_gen_us == static_cast<Micros>(i) * 40000);
    }
}

TEST_CASE("a frame arriving mid-interval waits for its station's next poll") {
    // 20 ms cadence against a 40 ms service interval: the mid-interval frame
    // is delivered by the next poll, two frames per TXOP.
    SimConfig config;
    config.scheduler = SchedulerKind::ReferenceHcca;
    config.sim_duration_us = 400000;
    StationConfig station;
    station.trace = constant_trace(1000, 10, 20000);
    station.tspec = derive_tspec(station.trace, 0.04, 0.08, 11e6);
    config.stations.push_back(station);

    const SimResult r = run(config);
    CHECK(r.si_us == 40000);
    const auto rx = events_of(r, EventKind::DataRx);
    REQUIRE(rx.size() >= 4);
    for (const EventRecord& e : rx) {
        // Frames are never delivered in the service interval in which they
        // arrive mid-flight: generation at 20 ms offsets waits ~20 ms longer.
        const Micros si_start = (e.si_index) * 40000;
        CHECK(e.frame_gen_us <= si_start + 30);  // arrived by the poll
    }
    // The opening interval sees only the first frame; after that the grant
    // drains two per poll (the on-time frame plus the mid-interval one).
    std::map<std::int64_t, int> per_si;
    for (const EventRecord& e : rx) per_si[e.si_index] += 1;
    for (const auto& [si, count] : per_si) {
        CHECK(count == (si == 0 ? 1 : 2));
    }
}

TEST_CASE("a service interval shorter than the frame cadence leaves empty polls") {
    // MSI 30 ms against a 160 ms beacon gives a 26666 us interval (six slots
    // per beacon with 4 us of slack); frames still arrive every 40 ms, so
    // deliveries land in two of every three intervals and empty polls keep
    // the stale next-frame report, which stays correct.
    SimConfig config;
    config.sim_duration_us = 10'000'000;
    StationConfig station;
    station.trace = generate_synthetic(900, 0.5, 100, 40000, 77);
    station.tspec = derive_tspec(station.trace, 0.03, 0.08, 11e6);
    config.stations.push_back(station);

    for (SchedulerKind kind : {SchedulerKind::ReferenceHcca, SchedulerKind::DynamicTxop}) {
        config.scheduler = kind;
        const SimResult r = run(config);
        CHECK(r.si_us == 26666);
        const StationCounters& c = r.counters[0];
        CHECK(c.generated == 250);
        CHECK(c.delivered == 250);
        CHECK(c.queued_at_end == 0);
        std::map<std::int64_t, int> rx_per_si;
        for (const EventRecord& e : r.log.records) {
            if (e.kind == EventKind::DataRx) rx_per_si[e.si_index] += 1;
        }
        // No interval ever carries two frames, and some intervals are empty.
        for (const auto& [si, count] : rx_per_si) CHECK(count == 1);
        CHECK(rx_per_si.size() == 250);
        const auto polls = events_of(r, EventKind::Poll).size();
        CHECK(polls > 250);
    }
}

TEST_CASE("quantized reports round up to 256-byte units and saturate") {
    SimConfig config = cbr_config(SchedulerKind::DynamicTxop, 120000);
    config.qs_quantized = true;
    const SimResult r = run(config);
    const auto polls = events_of(r, EventKind::Poll);
    REQUIRE(polls.size() == 3);
    // First poll: no report yet, fallback grant. Later polls: grant for a
    // 1024-byte report (1000 rounded up to 4 units).
    CHECK(polls[0].granted_us == 1751);
    CHECK(polls[1].granted_us == compute_dynamic_txop(1024, 11e6, config.mac));
    CHECK(polls[2].granted_us == polls[1].granted_us);

    // Saturation: a 70000-byte frame reports as 255 * 256 = 65280 bytes. A
    // frame that large needs a wider service interval to be admissible at
    // 11 Mb/s (51 ms of air), so the stream negotiates an 80 ms MSI.
    SimConfig big;
    big.scheduler = SchedulerKind::DynamicTxop;
    big.sim_duration_us = 330000;
    big.qs_quantized = true;
    StationConfig station;
    VideoTrace outlier = constant_trace(1000, 4);
    outlier.frames[1].size_bytes = 70000;
    station.trace = outlier;
    station.tspec = derive_tspec(outlier, 0.08, 0.16, 11e6);
    big.stations.push_back(station);
    const SimResult rb = run(big);
    CHECK(rb.si_us == 80000);
    const auto big_polls = events_of(rb, EventKind::Poll);
    REQUIRE(big_polls.size() >= 2);
    // The 1000-byte frame delivered in the first interval announces the
    // 70000-byte follower, clipped to the report field's ceiling.
    CHECK(big_polls[1].granted_us == compute_dynamic_txop(65280, 11e6, big.mac));
}

TEST_CASE("admission rejects the overload tail and polls the rest") {
    // Each movie-profile stream needs 13202/40000 of the schedule; only three
    // fit. The fourth and fifth are rejected and never polled.
    SimConfig config;
    config.scheduler = SchedulerKind::ReferenceHcca;
    config.sim_duration_us = 400000;
    VideoTrace trace = constant_trace(3800, 10);
    trace.frames.back().size_bytes = 16745;  // push the max up
    for (int i = 0; i < 5; ++i) {
        StationConfig station;
        station.trace = trace;
        station.tspec = derive_tspec(trace, 0.04, 0.08, 11e6);
        station.tspec.mean_data_rate_bps = 7.7e5;
        station.tspec.nominal_msdu_bytes = 3800;
        config.stations.push_back(station);
    }
    const SimResult r = run(config);
    CHECK(r.admitted == std::vector<int>{0, 1, 2});
    CHECK(r.rejected == std::vector<int>{3, 4});
    for (const EventRecord& e : events_of(r, EventKind::Poll)) {
        CHECK(e.station_id <= 2);
    }
    // Rejected stations generate no traffic.
    CHECK(r.counters[3].generated == 0);
    CHECK(r.counters[4].generated == 0);
}

TEST_CASE("an unadmittable polling list is an error") {
    SimConfig config;
    config.scheduler = SchedulerKind::ReferenceHcca;
    config.sim_duration_us = 400000;
    StationConfig station;
    station.trace = constant_trace(1000, 4);
    station.tspec = derive_tspec(station.trace, 0.04, 0.08, 11e6);
    station.tspec.max_msdu_bytes = 80000;  // needs more than a whole SI
    config.stations.push_back(station);
    CHECK_THROWS_WITH_AS(run(config), "empty polling list: no stream admitted", SimError);
}

TEST_CASE("configuration validation") {
    SimConfig config = cbr_config(SchedulerKind::ReferenceHcca);
    config.loss_probability = 1.5;
    CHECK_THROWS_AS(run(config), ConfigError);

    config = cbr_config(SchedulerKind::ReferenceHcca);
    config.warmup_us = config.sim_duration_us;
    CHECK_THROWS_AS(run(config), ConfigError);

    config = cbr_config(SchedulerKind::ReferenceHcca);
    config.t_cp_us = config.beacon_interval_us;
    CHECK_THROWS_AS(run(config), ConfigError);

    config = cbr_config(SchedulerKind::ReferenceHcca);
    config.stations.clear();
    CHECK_THROWS_AS(run(config), ConfigError);
}

TEST_CASE("polling order follows admission order every interval") {
    const SimResult r = run(vbr_config(SchedulerKind::DynamicTxop, 3, 1'000'000));
    std::map<std::int64_t, std::vector<int>> order;
    for (const EventRecord& e : r.log.records) {
        if (e.kind == EventKind::Poll) order[e.si_index].push_back(e.station_id);
    }
    for (const auto& [si, ids] : order) {
        CHECK(ids == std::vector<int>{0, 1, 2});
    }
}
