// Frame-size video traces: the traffic source for every simulated station.
//
// Trace file format (UTF-8 text, one frame per line):
//
//     seq type time_ms size_bytes
//
// where `type` is one of I, P, B; lines whose first non-blank character is
// '#' are ignored. Files may list frames in decode order; parsing sorts them
// into display-time order, which is the order frames reach the MAC queue.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hccasim/units.hpp"

namespace hccasim {

enum class FrameType : char { I = 'I', P = 'P', B = 'B' };

struct VideoFrame {
    std::int64_t seq = 0;      // frame index as labeled in the source file
    FrameType type = FrameType::I;
    Micros arrival_us = 0;     // display time since stream start
    Bytes size_bytes = 0;      // whole frame carried as a single MSDU
};

struct VideoTrace {
    std::string name;
    std::vector<VideoFrame> frames;   // sorted by arrival_us, non-decreasing
    Micros frame_interval_us = 0;     // nominal capture period
};

/// Frame-size statistics of a trace. std is the population standard
/// deviation; cov = std / mean.
struct TraceStats {
    double mean_size_bytes = 0.0;
    Bytes max_size_bytes = 0;
    double std_size_bytes = 0.0;
    double cov = 0.0;
    double mean_bit_rate_bps = 0.0;
    double peak_bit_rate_bps = 0.0;
    double peak_mean_ratio = 0.0;
    std::int64_t frame_count = 0;
};

/// Parse a trace file. Times are converted from milliseconds to microseconds
/// and frames are sorted by arrival time (stable, so equal timestamps keep
/// file order). Throws InputParseError on a malformed row, SimError when the
/// input contains no frames.
VideoTrace parse_trace(std::istream& text, Micros frame_interval_us);

/// Render a trace in the file format above, one line per frame in arrival
/// order. Arrival times are written in milliseconds (rounded to nearest, so
/// the rendering is lossless exactly when all arrivals sit on millisecond
/// boundaries, as parsed and generated traces do). Throws on an empty trace.
std::string emit_trace(const VideoTrace& trace);

/// Compute frame-size statistics. Throws on an empty trace.
TraceStats compute_stats(const VideoTrace& trace);

/// Generate a synthetic trace of `frame_count` frames at a fixed capture
/// interval. Sizes are i.i.d. lognormal, parameterized to target the given
/// mean and coefficient of variation, rounded to whole bytes and clamped to
/// >= 1; cov == 0 degenerates to constant-size frames. Deterministic for a
/// fixed seed.
VideoTrace generate_synthetic(double mean_size_bytes, double cov, std::int64_t frame_count,
                              Micros frame_interval_us, std::uint64_t seed);

}  // namespace hccasim
