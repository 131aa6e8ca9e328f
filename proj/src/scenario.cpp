#include "hccasim/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hccasim/error.hpp"
#include "hccasim/tspec.hpp"

namespace hccasim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InputParseError(line, "bad numeric value '" + value + "'");
    }
}

std::int64_t parse_i64(const std::string& value, int line) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InputParseError(line, "bad integer value '" + value + "'");
    }
}

bool parse_bool(const std::string& value, int line) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InputParseError(line, "bad boolean value '" + value + "'");
}

SchedulerKind parse_scheduler(const std::string& value, int line) {
    if (value == "hcca") return SchedulerKind::ReferenceHcca;
    if (value == "dyn") return SchedulerKind::DynamicTxop;
    throw InputParseError(line, "scheduler must be 'hcca' or 'dyn', got '" + value + "'");
}

StationSpec parse_station(const std::string& value, int line) {
    StationSpec spec;
    std::stringstream parts(value);
    std::string part;
    bool first = true;
    while (std::getline(parts, part, ',')) {
        part = trim(part);
        if (part.empty()) throw InputParseError(line, "empty station field");
        if (first) {
            spec.trace_path = part;
            first = false;
            continue;
        }
        const auto eq = part.find('=');
        if (eq == std::string::npos) {
            throw InputParseError(line, "station override must be key=value, got '" + part + "'");
        }
        const std::string key = trim(part.substr(0, eq));
        const std::string val = trim(part.substr(eq + 1));
        if (key == "msi_s") {
            spec.max_service_interval_s = parse_double(val, line);
        } else if (key == "delay_bound_s") {
            spec.delay_bound_s = parse_double(val, line);
        } else if (key == "rate_bps") {
            spec.phy_rate_bps = parse_double(val, line);
        } else if (key == "rho_bps") {
            spec.mean_data_rate_bps = parse_double(val, line);
        } else if (key == "l_bytes") {
            spec.nominal_msdu_bytes = parse_i64(val, line);
        } else if (key == "m_bytes") {
            spec.max_msdu_bytes = parse_i64(val, line);
        } else {
            throw InputParseError(line, "unknown station override '" + key + "'");
        }
    }
    if (spec.trace_path.empty()) throw InputParseError(line, "station needs a trace path");
    return spec;
}

}  // namespace

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SimError("cannot open scenario file '" + path + "'");
    }
    const std::filesystem::path base = std::filesystem::path(path).parent_path();

    Scenario sc;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InputParseError(line_number, "expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw InputParseError(line_number, "expected 'key = value'");
        }

        if (key == "beacon_interval_us") {
            sc.beacon_interval_us = parse_i64(value, line_number);
        } else if (key == "t_cp_us") {
            sc.t_cp_us = parse_i64(value, line_number);
        } else if (key == "scheduler") {
            sc.scheduler = parse_scheduler(value, line_number);
        } else if (key == "sim_duration_us") {
            sc.sim_duration_us = parse_i64(value, line_number);
        } else if (key == "warmup_us") {
            sc.warmup_us = parse_i64(value, line_number);
        } else if (key == "loss_probability") {
            sc.loss_probability = parse_double(value, line_number);
        } else if (key == "qs_quantized") {
            sc.qs_quantized = parse_bool(value, line_number);
        } else if (key == "seed") {
            sc.seed = static_cast<std::uint64_t>(parse_i64(value, line_number));
        } else if (key == "frame_interval_us") {
            sc.frame_interval_us = parse_i64(value, line_number);
        } else if (key == "msi_s") {
            sc.max_service_interval_s = parse_double(value, line_number);
        } else if (key == "delay_bound_s") {
            sc.delay_bound_s = parse_double(value, line_number);
        } else if (key == "phy_rate_bps") {
            sc.phy_rate_bps = parse_double(value, line_number);
        } else if (key == "sweep_min") {
            sc.sweep_min = static_cast<int>(parse_i64(value, line_number));
        } else if (key == "sweep_max") {
            sc.sweep_max = static_cast<int>(parse_i64(value, line_number));
        } else if (key == "output_dir") {
            sc.output_dir = value;
        } else if (key == "sifs_us") {
            sc.mac.sifs_us = parse_i64(value, line_number);
        } else if (key == "pifs_us") {
            sc.mac.pifs_us = parse_i64(value, line_number);
        } else if (key == "slot_us") {
            sc.mac.slot_us = parse_i64(value, line_number);
        } else if (key == "preamble_bytes") {
            sc.mac.preamble_bytes = parse_i64(value, line_number);
        } else if (key == "plcp_header_bytes") {
            sc.mac.plcp_header_bytes = parse_i64(value, line_number);
        } else if (key == "plcp_rate_bps") {
            sc.mac.plcp_rate_bps = parse_double(value, line_number);
        } else if (key == "mac_header_bytes") {
            sc.mac.mac_header_bytes = parse_i64(value, line_number);
        } else if (key == "data_rate_bps") {
            sc.mac.data_rate_bps = parse_double(value, line_number);
        } else if (key == "basic_rate_bps") {
            sc.mac.basic_rate_bps = parse_double(value, line_number);
        } else if (key == "ack_bytes") {
            sc.mac.ack_bytes = parse_i64(value, line_number);
        } else if (key == "poll_bytes") {
            sc.mac.poll_bytes = parse_i64(value, line_number);
        } else if (key == "station") {
            StationSpec spec = parse_station(value, line_number);
            std::filesystem::path p(spec.trace_path);
            if (p.is_relative()) {
                spec.trace_path = (base / p).string();
            }
            sc.stations.push_back(std::move(spec));
        } else {
            throw InputParseError(line_number, "unknown key '" + key + "'");
        }
    }

    if (sc.stations.empty()) {
        throw SimError("scenario lists no stations");
    }
    if (sc.sweep_min < 1 || sc.sweep_max < sc.sweep_min) {
        throw SimError("sweep range is empty");
    }
    return sc;
}

SimConfig build_sim_config(const Scenario& scenario, std::optional<int> station_count) {
    const int n = station_count.value_or(static_cast<int>(scenario.stations.size()));
    if (n < 1) throw ConfigError("station count must be at least 1");

    SimConfig config;
    config.beacon_interval_us = scenario.beacon_interval_us;
    config.t_cp_us = scenario.t_cp_us;
    config.mac = scenario.mac;
    config.scheduler = scenario.scheduler;
    config.sim_duration_us = scenario.sim_duration_us;
    config.warmup_us = scenario.warmup_us;
    config.loss_probability = scenario.loss_probability;
    config.qs_quantized = scenario.qs_quantized;
    config.seed = scenario.seed;

    for (int i = 0; i < n; ++i) {
        const StationSpec& spec =
            scenario.stations[static_cast<std::size_t>(i) % scenario.stations.size()];

        std::ifstream in(spec.trace_path);
        if (!in) {
            throw SimError("cannot open trace file '" + spec.trace_path + "'");
        }
        VideoTrace trace;
        try {
            trace = parse_trace(in, scenario.frame_interval_us);
        } catch (const SimError& e) {
            throw SimError(spec.trace_path + ": " + e.what());
        }
        trace.name = std::filesystem::path(spec.trace_path).filename().string();

        Tspec tspec = derive_tspec(
            trace, spec.max_service_interval_s.value_or(scenario.max_service_interval_s),
            spec.delay_bound_s.value_or(scenario.delay_bound_s),
            spec.phy_rate_bps.value_or(scenario.phy_rate_bps));
        if (spec.mean_data_rate_bps) tspec.mean_data_rate_bps = *spec.mean_data_rate_bps;
        if (spec.nominal_msdu_bytes) tspec.nominal_msdu_bytes = *spec.nominal_msdu_bytes;
        if (spec.max_msdu_bytes) tspec.max_msdu_bytes = *spec.max_msdu_bytes;
        tspec.validate();

        config.stations.push_back({std::move(trace), tspec});
    }
    return config;
}

}  // namespace hccasim
