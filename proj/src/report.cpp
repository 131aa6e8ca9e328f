#include "hccasim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hccasim/error.hpp"

namespace hccasim {

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SimError("cannot write '" + path.string() + "'");
    }
    return out;
}

}  // namespace

std::string format_g6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

RunReport summarize_run(const std::string& scheduler_name, int stations,
                        const SimResult& result) {
    RunReport report;
    report.scheduler = scheduler_name;
    report.stations = stations;
    report.seed = result.config.seed;
    report.si_us = result.si_us;
    report.admitted = static_cast<int>(result.admitted.size());
    report.rejected = static_cast<int>(result.rejected.size());
    const double window_s =
        static_cast<double>(result.config.sim_duration_us - result.config.warmup_us) * 1e-6;
    report.metrics = compute_metrics(result, window_s);
    return report;
}

void write_csv_reports(const std::string& dir, const std::vector<RunReport>& reports,
                       bool with_per_si) {
    const std::filesystem::path out_dir(dir);
    std::filesystem::create_directories(out_dir);

    std::ofstream runs = open_csv(out_dir / "runs.csv");
    runs << "scheduler,stations,seed,si_us,admitted,rejected\n";
    for (const RunReport& r : reports) {
        runs << r.scheduler << ',' << r.stations << ',' << r.seed << ',' << r.si_us << ','
             << r.admitted << ',' << r.rejected << '\n';
    }

    std::ofstream delay = open_csv(out_dir / "delay.csv");
    delay << "scheduler,stations,mean_e2e_delay_s,samples\n";
    for (const RunReport& r : reports) {
        delay << r.scheduler << ',' << r.stations << ',' << format_g6(r.metrics.mean_e2e_delay_s)
              << ',' << r.metrics.delay_samples << '\n';
    }

    std::ofstream thrp = open_csv(out_dir / "throughput.csv");
    thrp << "scheduler,stations,aggregate_throughput_bps\n";
    for (const RunReport& r : reports) {
        thrp << r.scheduler << ',' << r.stations << ','
             << format_g6(r.metrics.aggregate_throughput_bps) << '\n';
    }

    std::ofstream txop = open_csv(out_dir / "txop.csv");
    txop << "scheduler,stations,aggregate_txop_s\n";
    for (const RunReport& r : reports) {
        txop << r.scheduler << ',' << r.stations << ',' << format_g6(r.metrics.aggregate_txop_s)
             << '\n';
    }

    if (with_per_si) {
        std::ofstream per_si = open_csv(out_dir / "per_si_txop.csv");
        per_si << "scheduler,station_id,si_index,granted_us\n";
        for (const RunReport& r : reports) {
            for (const PerSiGrant& g : r.metrics.per_si_txop) {
                per_si << r.scheduler << ',' << g.station_id << ',' << g.si_index << ','
                       << g.granted_us << '\n';
            }
        }
    }
}

}  // namespace hccasim
