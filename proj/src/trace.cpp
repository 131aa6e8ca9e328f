#include "hccasim/trace.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "hccasim/error.hpp"
#include "hccasim/rng.hpp"

namespace hccasim {

namespace {

// Display-order frame-type pattern used for synthetic traces; one common
// 12-frame group of pictures.
constexpr char kGopPattern[] = "IBBPBBPBBPBB";

bool parse_int(const std::string& token, std::int64_t& out) {
    if (token.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoll(token, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == token.size();
}

}  // namespace

VideoTrace parse_trace(std::istream& text, Micros frame_interval_us) {
    if (frame_interval_us <= 0) {
        throw SimError("frame interval must be positive");
    }
    VideoTrace trace;
    trace.frame_interval_us = frame_interval_us;

    std::string line;
    int line_number = 0;
    while (std::getline(text, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::istringstream row(line);
        std::string seq_tok, type_tok, time_tok, size_tok, extra;
        if (!(row >> seq_tok)) continue;       // blank line
        if (seq_tok.front() == '#') continue;  // comment
        if (!(row >> type_tok >> time_tok >> size_tok)) {
            throw InputParseError(line_number, "expected 4 columns: seq type time_ms size_bytes");
        }
        if (row >> extra) {
            throw InputParseError(line_number, "unexpected extra column '" + extra + "'");
        }

        VideoFrame frame;
        if (!parse_int(seq_tok, frame.seq)) {
            throw InputParseError(line_number, "bad frame sequence '" + seq_tok + "'");
        }
        if (type_tok.size() != 1 ||
            (type_tok[0] != 'I' && type_tok[0] != 'P' && type_tok[0] != 'B')) {
            throw InputParseError(line_number, "unknown frame type '" + type_tok + "'");
        }
        frame.type = static_cast<FrameType>(type_tok[0]);
        std::int64_t time_ms = 0;
        if (!parse_int(time_tok, time_ms) || time_ms < 0) {
            throw InputParseError(line_number, "bad time '" + time_tok + "'");
        }
        frame.arrival_us = time_ms * 1000;
        if (!parse_int(size_tok, frame.size_bytes) || frame.size_bytes <= 0) {
            throw InputParseError(line_number, "bad frame size '" + size_tok + "'");
        }
        trace.frames.push_back(frame);
    }

    if (trace.frames.empty()) {
        throw SimError("no frames");
    }
    // Files may be in decode order; the queue sees frames in display time.
    std::stable_sort(trace.frames.begin(), trace.frames.end(),
                     [](const VideoFrame& a, const VideoFrame& b) {
                         return a.arrival_us < b.arrival_us;
                     });
    return trace;
}

std::string emit_trace(const VideoTrace& trace) {
    if (trace.frames.empty()) {
        throw SimError("cannot emit an empty trace");
    }
    std::ostringstream out;
    for (const VideoFrame& f : trace.frames) {
        const std::int64_t time_ms = (f.arrival_us + 500) / 1000;
        out << f.seq << ' ' << static_cast<char>(f.type) << ' ' << time_ms << ' ' << f.size_bytes
            << '\n';
    }
    return out.str();
}

TraceStats compute_stats(const VideoTrace& trace) {
    if (trace.frames.empty()) {
        throw SimError("no frames");
    }
    TraceStats stats;
    stats.frame_count = static_cast<std::int64_t>(trace.frames.size());

    double sum = 0.0;
    Bytes max_size = 0;
    for (const VideoFrame& f : trace.frames) {
        sum += static_cast<double>(f.size_bytes);
        max_size = std::max(max_size, f.size_bytes);
    }
    stats.mean_size_bytes = sum / static_cast<double>(stats.frame_count);
    stats.max_size_bytes = max_size;

    double sq = 0.0;
    for (const VideoFrame& f : trace.frames) {
        const double d = static_cast<double>(f.size_bytes) - stats.mean_size_bytes;
        sq += d * d;
    }
    stats.std_size_bytes = std::sqrt(sq / static_cast<double>(stats.frame_count));
    stats.cov = stats.std_size_bytes / stats.mean_size_bytes;

    const double interval_s = static_cast<double>(trace.frame_interval_us) * 1e-6;
    stats.mean_bit_rate_bps = 8.0 * stats.mean_size_bytes / interval_s;
    stats.peak_bit_rate_bps = 8.0 * static_cast<double>(max_size) / interval_s;
    stats.peak_mean_ratio = stats.peak_bit_rate_bps / stats.mean_bit_rate_bps;
    return stats;
}

VideoTrace generate_synthetic(double mean_size_bytes, double cov, std::int64_t frame_count,
                              Micros frame_interval_us, std::uint64_t seed) {
    if (mean_size_bytes < 1.0 || cov < 0.0 || frame_count < 1 || frame_interval_us <= 0) {
        throw SimError("invalid synthetic-trace parameters");
    }
    VideoTrace trace;
    trace.name = "synthetic";
    trace.frame_interval_us = frame_interval_us;
    trace.frames.reserve(static_cast<std::size_t>(frame_count));

    // Lognormal with exact mean/CoV: sigma^2 = ln(1 + cov^2), mu = ln(mean) - sigma^2 / 2.
    const double sigma2 = std::log(1.0 + cov * cov);
    const double sigma = std::sqrt(sigma2);
    const double mu = std::log(mean_size_bytes) - sigma2 / 2.0;
    std::mt19937_64 rng = substream(seed, 0);

    const std::size_t gop_len = sizeof(kGopPattern) - 1;
    for (std::int64_t i = 0; i < frame_count; ++i) {
        Bytes size;
        if (cov == 0.0) {
            size = static_cast<Bytes>(std::llround(mean_size_bytes));
        } else {
            const double sample = std::exp(mu + sigma * standard_normal(rng));
            size = static_cast<Bytes>(std::llround(sample));
        }
        VideoFrame frame;
        frame.seq = i;
        frame.type = static_cast<FrameType>(kGopPattern[static_cast<std::size_t>(i) % gop_len]);
        frame.arrival_us = i * frame_interval_us;
        frame.size_bytes = std::max<Bytes>(1, size);
        trace.frames.push_back(frame);
    }
    return trace;
}

}  // namespace hccasim
