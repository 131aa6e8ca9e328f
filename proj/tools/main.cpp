// hccasim: discrete-event simulator of polled contention-free channel access
// with fixed and feedback-driven TXOP scheduling.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hccasim/engine.hpp"
#include "hccasim/error.hpp"
#include "hccasim/metrics.hpp"
#include "hccasim/report.hpp"
#include "hccasim/scenario.hpp"
#include "hccasim/trace.hpp"
#include "hccasim/tspec.hpp"

namespace {

using namespace hccasim;

VideoTrace load_trace_file(const std::string& path, Micros interval_us) {
    std::ifstream in(path);
    if (!in) {
        throw SimError("cannot open trace file '" + path + "'");
    }
    VideoTrace trace;
    try {
        trace = parse_trace(in, interval_us);
    } catch (const SimError& e) {
        throw SimError(path + ": " + e.what());
    }
    trace.name = std::filesystem::path(path).filename().string();
    return trace;
}

int cmd_stats(const std::string& path, Micros interval_us) {
    const VideoTrace trace = load_trace_file(path, interval_us);
    const TraceStats stats = compute_stats(trace);
    std::cout << "Trace                 " << trace.name << '\n'
              << "Frames                " << stats.frame_count << '\n'
              << "Mean size (byte)      " << format_g6(stats.mean_size_bytes) << '\n'
              << "Max size (byte)       " << stats.max_size_bytes << '\n'
              << "Std of frame size     " << format_g6(stats.std_size_bytes) << '\n'
              << "CoV of frame size     " << format_g6(stats.cov) << '\n'
              << "Mean bit rate (bit/s) " << format_g6(stats.mean_bit_rate_bps) << '\n'
              << "Peak bit rate (bit/s) " << format_g6(stats.peak_bit_rate_bps) << '\n'
              << "Peak/Mean of bit rate " << format_g6(stats.peak_mean_ratio) << '\n';
    return 0;
}

int cmd_tspec(const std::string& path, Micros interval_us, double msi_s, double delay_bound_s,
              double rate_bps) {
    const VideoTrace trace = load_trace_file(path, interval_us);
    const Tspec tspec = derive_tspec(trace, msi_s, delay_bound_s, rate_bps);
    std::cout << "Nominal MSDU (byte)   " << tspec.nominal_msdu_bytes << '\n'
              << "Max MSDU (byte)       " << tspec.max_msdu_bytes << '\n'
              << "Mean data rate (bit/s) " << format_g6(tspec.mean_data_rate_bps) << '\n'
              << "Delay bound (s)       " << format_g6(tspec.delay_bound_s) << '\n'
              << "Physical rate (bit/s) " << format_g6(tspec.phy_rate_bps) << '\n'
              << "Max service intvl (s) " << format_g6(tspec.max_service_interval_s) << '\n';
    return 0;
}

int cmd_gen(double mean, double cov, std::int64_t frames, Micros interval_us, std::uint64_t seed,
            const std::string& out_path) {
    const VideoTrace trace = generate_synthetic(mean, cov, frames, interval_us, seed);
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw SimError("cannot write '" + out_path + "'");
    }
    out << emit_trace(trace);
    return 0;
}

int cmd_simulate(const std::string& scenario_path, const std::string& scheduler_flag,
                 const std::string& out_flag) {
    Scenario scenario = load_scenario(scenario_path);
    if (scheduler_flag == "hcca") scenario.scheduler = SchedulerKind::ReferenceHcca;
    if (scheduler_flag == "dyn") scenario.scheduler = SchedulerKind::DynamicTxop;
    if (!out_flag.empty()) scenario.output_dir = out_flag;

    const SimConfig config = build_sim_config(scenario);
    const SimResult result = run(config);
    const RunReport report = summarize_run(to_string(scenario.scheduler),
                                           static_cast<int>(config.stations.size()), result);
    write_csv_reports(scenario.output_dir, {report}, /*with_per_si=*/true);
    std::cout << "wrote " << scenario.output_dir << "/{runs,delay,throughput,txop,per_si_txop}.csv"
              << '\n';
    return 0;
}

int cmd_sweep(const std::string& scenario_path, const std::string& out_flag) {
    const Scenario scenario = load_scenario(scenario_path);
    const std::string out_dir = out_flag.empty() ? scenario.output_dir : out_flag;

    struct Job {
        SchedulerKind kind;
        int stations;
    };
    std::vector<Job> jobs;
    for (SchedulerKind kind : {SchedulerKind::DynamicTxop, SchedulerKind::ReferenceHcca}) {
        for (int n = scenario.sweep_min; n <= scenario.sweep_max; ++n) {
            jobs.push_back({kind, n});
        }
    }

    // Runs share no state; dispatch them concurrently and assemble rows in
    // job order so the CSVs are deterministic regardless of completion order.
    std::vector<std::future<RunReport>> futures;
    futures.reserve(jobs.size());
    for (const Job& job : jobs) {
        futures.push_back(std::async(std::launch::async, [&scenario, job]() {
            Scenario variant = scenario;
            variant.scheduler = job.kind;
            const SimConfig config = build_sim_config(variant, job.stations);
            const SimResult result = run(config);
            return summarize_run(to_string(job.kind), job.stations, result);
        }));
    }
    std::vector<RunReport> reports;
    reports.reserve(jobs.size());
    for (auto& f : futures) {
        reports.push_back(f.get());  // rethrows the first failure, writes nothing
    }
    write_csv_reports(out_dir, reports, /*with_per_si=*/false);
    std::cout << "wrote " << out_dir << "/{runs,delay,throughput,txop}.csv (" << reports.size()
              << " runs)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"802.11e contention-free polling simulator with fixed and dynamic TXOP scheduling"};
    app.require_subcommand(1);

    std::string trace_path;
    Micros interval_us = 40000;
    auto* stats = app.add_subcommand("stats", "Print frame statistics of a trace file");
    stats->add_option("trace", trace_path, "trace file")->required();
    stats->add_option("--interval-us", interval_us, "capture period in microseconds");

    std::string tspec_trace;
    Micros tspec_interval = 40000;
    double msi_s = 0.04, delay_bound_s = 0.08, rate_bps = 11e6;
    auto* tspec = app.add_subcommand("tspec", "Derive a traffic specification from a trace");
    tspec->add_option("trace", tspec_trace, "trace file")->required();
    tspec->add_option("--interval-us", tspec_interval, "capture period in microseconds");
    tspec->add_option("--msi", msi_s, "maximum service interval, seconds");
    tspec->add_option("--delay-bound", delay_bound_s, "delay bound, seconds");
    tspec->add_option("--rate", rate_bps, "physical rate, bits/second");

    std::string sim_scenario, sim_scheduler, sim_out;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write CSV reports");
    simulate->add_option("scenario", sim_scenario, "scenario file")->required();
    simulate->add_option("--scheduler", sim_scheduler, "scheduler: hcca or dyn")
        ->check(CLI::IsMember({"hcca", "dyn"}));
    simulate->add_option("-o,--out", sim_out, "output directory (overrides scenario)");

    std::string sweep_scenario, sweep_out;
    auto* sweep = app.add_subcommand(
        "sweep", "Run both schedulers over the scenario's station-count range");
    sweep->add_option("scenario", sweep_scenario, "scenario file")->required();
    sweep->add_option("-o,--out", sweep_out, "output directory (overrides scenario)");

    double gen_mean = 3800.0, gen_cov = 0.59;
    std::int64_t gen_frames = 2500;
    Micros gen_interval = 40000;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a synthetic trace file");
    gen->add_option("--mean", gen_mean, "mean frame size, bytes");
    gen->add_option("--cov", gen_cov, "coefficient of variation of frame size");
    gen->add_option("--frames", gen_frames, "frame count");
    gen->add_option("--interval", gen_interval, "capture period, microseconds");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*stats) return cmd_stats(trace_path, interval_us);
        if (*tspec) return cmd_tspec(tspec_trace, tspec_interval, msi_s, delay_bound_s, rate_bps);
        if (*simulate) return cmd_simulate(sim_scenario, sim_scheduler, sim_out);
        if (*sweep) return cmd_sweep(sweep_scenario, sweep_out);
        if (*gen) return cmd_gen(gen_mean, gen_cov, gen_frames, gen_interval, gen_seed, gen_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
