// CSV emission for simulation runs. Headers and row formats are fixed; the
// same inputs always produce byte-identical files.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hccasim/engine.hpp"
#include "hccasim/metrics.hpp"

namespace hccasim {

/// One scheduler run reduced to its report row(s).
struct RunReport {
    std::string scheduler;  // "hcca" or "dyn"
    int stations = 0;
    std::uint64_t seed = 0;
    Micros si_us = 0;
    int admitted = 0;
    int rejected = 0;
    MetricsBundle metrics;
};

/// Reduce a finished run to a report. window_s is the post-warmup window.
RunReport summarize_run(const std::string& scheduler_name, int stations, const SimResult& result);

/// Write runs.csv, delay.csv, throughput.csv and txop.csv into `dir`
/// (created if needed), one row per report, in the order given. When
/// with_per_si is true, also writes per_si_txop.csv with every (station,
/// service interval) grant of every report.
void write_csv_reports(const std::string& dir, const std::vector<RunReport>& reports,
                       bool with_per_si);

/// Floating-point CSV/console formatting: 6 significant digits.
std::string format_g6(double value);

}  // namespace hccasim
