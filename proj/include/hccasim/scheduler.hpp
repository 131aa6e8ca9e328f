// Polling-schedule mathematics: service-interval selection, TXOP sizing for
// both schedulers, and admission control.
//
// The reference scheduler grants every stream a fixed TXOP sized from its
// negotiated Tspec. The dynamic scheduler resizes each grant from the frame
// size the station reported with its previous transmission, falling back to
// the reference grant before the first report and after a loss.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hccasim/mac.hpp"
#include "hccasim/tspec.hpp"
#include "hccasim/units.hpp"

namespace hccasim {

enum class SchedulerKind { ReferenceHcca, DynamicTxop };

/// Per-stream scheduler state held by the hybrid coordinator.
struct StreamEntry {
    int station_id = 0;
    Tspec tspec;
    std::optional<Bytes> feedback_bytes;  // next-frame size from the QS field;
                                          // empty before the first data frame
                                          // and after a loss
    Micros admitted_txop_us = 0;          // reference grant frozen at admission
};

/// One service interval's polling order and grant sizes.
struct PollPlan {
    Micros si_us = 0;
    struct Grant {
        int station_id;
        Micros txop_us;
    };
    std::vector<Grant> grants;  // one per admitted station, in admission order
};

/// Service interval: the largest submultiple of the beacon interval that does
/// not exceed the smallest maximum service interval, floored to whole
/// microseconds. When the beacon interval is already below every MSI the
/// divisor is 1 and the SI equals the beacon interval.
Micros compute_si(Micros beacon_interval_us, std::span<const Micros> msis_us);

/// Smallest positive divisor x with beacon_interval / x <= min(msis); the
/// number of service intervals per beacon interval.
int compute_si_divisor(Micros beacon_interval_us, std::span<const Micros> msis_us);

/// Number of MSDUs expected to arrive at the stream's mean data rate during
/// one service interval: ceil(si * rate / (8 * nominal_size)), at least 1.
int compute_msdu_count(Micros si_us, const Tspec& tspec);

/// Reference TXOP: time for the expected MSDU count at nominal size, or for
/// one maximum-size MSDU, whichever is larger, each including the overhead
/// for that many exchanges.
Micros compute_reference_txop(const Tspec& tspec, Micros si_us, const PhyMacParams& mac);

/// Dynamic TXOP: time for exactly one MSDU of the reported size plus the
/// single-exchange overhead.
Micros compute_dynamic_txop(Bytes size_bytes, double phy_rate_bps, const PhyMacParams& mac);

/// Admission test: accept iff candidate_txop/si plus the sum of txop/si over
/// already-admitted streams stays within the beacon-interval fraction not
/// reserved for contention access. Evaluated in exact rational arithmetic so
/// the boundary case is deterministic: equality accepts. The 128-bit
/// accumulator is exact as long as the streams' service intervals share a
/// small common multiple, which holds for any polling list built around one
/// schedule-wide interval.
struct AdmittedStream {
    Micros txop_us;
    Micros si_us;
};
bool admit(std::span<const AdmittedStream> existing, Micros candidate_txop_us, Micros si_us,
           Micros beacon_interval_us, Micros t_cp_us);

/// Grant for one stream in the next service interval under the given
/// scheduler. Reference: the admitted TXOP, always. Dynamic: sized from the
/// reported next-frame size when one is on file, otherwise the reference
/// grant (first poll of a stream, or the report was lost with the frame).
Micros next_grant(const StreamEntry& entry, SchedulerKind kind, Micros si_us,
                  const PhyMacParams& mac);

/// Grants for all admitted streams for one service interval, in order.
PollPlan make_poll_plan(std::span<const StreamEntry> entries, SchedulerKind kind, Micros si_us,
                        const PhyMacParams& mac);

}  // namespace hccasim
