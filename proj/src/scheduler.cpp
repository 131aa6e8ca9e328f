#include "hccasim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hccasim/error.hpp"

namespace hccasim {

namespace {

// Exact rational arithmetic for the admission inequality; the accept/reject
// boundary must not depend on floating-point rounding.
struct Fraction {
    __int128 num = 0;
    __int128 den = 1;

    static __int128 gcd(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void add(__int128 n, __int128 d) {
        num = num * d + n * den;
        den = den * d;
        const __int128 g = gcd(num, den);
        num /= g;
        den /= g;
    }

    bool less_equal(__int128 n, __int128 d) const { return num * d <= n * den; }
};

Micros min_msi(std::span<const Micros> msis_us) {
    if (msis_us.empty()) {
        throw ConfigError("service-interval computation needs at least one stream");
    }
    Micros m = msis_us[0];
    for (Micros v : msis_us) {
        if (v <= 0) throw ConfigError("max service intervals must be positive");
        m = std::min(m, v);
    }
    return m;
}

}  // namespace

int compute_si_divisor(Micros beacon_interval_us, std::span<const Micros> msis_us) {
    if (beacon_interval_us <= 0) {
        throw ConfigError("beacon interval must be positive");
    }
    const Micros msi = min_msi(msis_us);
    // Smallest x with beacon / x <= msi; x = 1 when the beacon interval is
    // already within every stream's MSI.
    return static_cast<int>((beacon_interval_us + msi - 1) / msi);
}

Micros compute_si(Micros beacon_interval_us, std::span<const Micros> msis_us) {
    const int x = compute_si_divisor(beacon_interval_us, msis_us);
    return beacon_interval_us / x;
}

int compute_msdu_count(Micros si_us, const Tspec& tspec) {
    if (si_us <= 0) {
        throw ConfigError("service interval must be positive");
    }
    // One division of exactly representable products keeps the exact-fit
    // boundary (si * rate == 8 * nominal bits) at ceil(1.0) == 1.
    const long double arrived_bits_x1e6 =
        static_cast<long double>(si_us) * static_cast<long double>(tspec.mean_data_rate_bps);
    const long double per_msdu_bits_x1e6 =
        8e6L * static_cast<long double>(tspec.nominal_msdu_bytes);
    const long double n = std::ceil(arrived_bits_x1e6 / per_msdu_bits_x1e6);
    return std::max(1, static_cast<int>(n));
}

Micros compute_reference_txop(const Tspec& tspec, Micros si_us, const PhyMacParams& mac) {
    const int n = compute_msdu_count(si_us, tspec);
    const Micros nominal_branch =
        airtime_us(static_cast<double>(n) * 8.0 * static_cast<double>(tspec.nominal_msdu_bytes),
                   tspec.phy_rate_bps) +
        txop_overhead(n, mac);
    const Micros max_branch =
        airtime_us(8.0 * static_cast<double>(tspec.max_msdu_bytes), tspec.phy_rate_bps) +
        txop_overhead(1, mac);
    return std::max(nominal_branch, max_branch);
}

Micros compute_dynamic_txop(Bytes size_bytes, double phy_rate_bps, const PhyMacParams& mac) {
    return airtime_us(8.0 * static_cast<double>(size_bytes), phy_rate_bps) +
           txop_overhead(1, mac);
}

bool admit(std::span<const AdmittedStream> existing, Micros candidate_txop_us, Micros si_us,
           Micros beacon_interval_us, Micros t_cp_us) {
    if (si_us <= 0 || beacon_interval_us <= 0 || t_cp_us < 0 || t_cp_us >= beacon_interval_us) {
        throw ConfigError("admission needs 0 < si and 0 <= t_cp < beacon interval");
    }
    Fraction load;
    load.add(candidate_txop_us, si_us);
    for (const AdmittedStream& s : existing) {
        load.add(s.txop_us, s.si_us);
    }
    return load.less_equal(beacon_interval_us - t_cp_us, beacon_interval_us);
}

Micros next_grant(const StreamEntry& entry, SchedulerKind kind, Micros si_us,
                  const PhyMacParams& mac) {
    if (kind == SchedulerKind::ReferenceHcca) {
        return entry.admitted_txop_us;
    }
    if (entry.feedback_bytes.has_value()) {
        return compute_dynamic_txop(*entry.feedback_bytes, entry.tspec.phy_rate_bps, mac);
    }
    return compute_reference_txop(entry.tspec, si_us, mac);
}

PollPlan make_poll_plan(std::span<const StreamEntry> entries, SchedulerKind kind, Micros si_us,
                        const PhyMacParams& mac) {
    PollPlan plan;
    plan.si_us = si_us;
    plan.grants.reserve(entries.size());
    for (const StreamEntry& entry : entries) {
        plan.grants.push_back({entry.station_id, next_grant(entry, kind, si_us, mac)});
    }
    return plan;
}

}  // namespace hccasim
