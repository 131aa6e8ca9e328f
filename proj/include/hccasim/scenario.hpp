// Scenario files: the on-disk description of a simulation campaign.
//
// Flat `key = value` text, one pair per line, full-line '#' comments. Every
// PHY/MAC timing constant is a key with the 802.11b defaults; stations are
// added with repeated `station = <trace-path>[, key=value ...]` lines whose
// optional trailing pairs override the Tspec derived from the trace.
// Relative trace paths resolve against the scenario file's directory.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hccasim/engine.hpp"

namespace hccasim {

struct StationSpec {
    std::string trace_path;
    std::optional<double> max_service_interval_s;
    std::optional<double> delay_bound_s;
    std::optional<double> phy_rate_bps;
    std::optional<double> mean_data_rate_bps;
    std::optional<Bytes> nominal_msdu_bytes;
    std::optional<Bytes> max_msdu_bytes;
};

struct Scenario {
    Micros beacon_interval_us = 160000;
    Micros t_cp_us = 0;
    PhyMacParams mac;
    SchedulerKind scheduler = SchedulerKind::ReferenceHcca;
    Micros sim_duration_us = 100'000'000;
    Micros warmup_us = 0;
    double loss_probability = 0.0;
    bool qs_quantized = false;
    std::uint64_t seed = 1;

    Micros frame_interval_us = 40000;   // capture period assumed for traces
    double max_service_interval_s = 0.04;
    double delay_bound_s = 0.08;
    double phy_rate_bps = 11e6;

    int sweep_min = 1;
    int sweep_max = 12;
    std::string output_dir = "out";

    std::vector<StationSpec> stations;
};

/// Parse a scenario file. Throws InputParseError on malformed lines or
/// unknown keys, SimError if the file cannot be opened.
Scenario load_scenario(const std::string& path);

/// Build the engine configuration for `station_count` stations, cycling
/// through the scenario's station specs (so a one-spec scenario replicates
/// that stream). Empty count uses the specs as listed. Loads and parses the
/// referenced traces; throws on I/O, parse or validation failures.
SimConfig build_sim_config(const Scenario& scenario, std::optional<int> station_count = {});

}  // namespace hccasim
