// scan.hpp
// Range scans: one exact verdict per grid point, annotated with the
// li-based prediction and the error-term magnitudes at x.
//
// Points are processed in fixed-size chunks. Within a chunk workers fill
// index-addressed slots, so the row sequence is identical for any worker
// count; chunks are handed to `on_chunk` strictly in order, which is what
// checkpointing hooks into.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlprime/analytic.hpp"
#include "hlprime/parallel.hpp"
#include "hlprime/prime_counter.hpp"
#include "hlprime/range_family.hpp"
#include "hlprime/report.hpp"
#include "hlprime/verdict.hpp"

namespace hlprime {

struct ScanOptions {
    unsigned threads = 1;
    double c0 = 0.2018;
    double li_tol = kDefaultQuadTol;
    std::size_t chunk_rows = 64;
    /// Number of leading points already done (resume); they are not recomputed.
    std::size_t start_index = 0;
    /// Called after each completed chunk, in order, with that chunk's rows.
    std::function<void(std::span<const ScanRow>)> on_chunk;
};

/// Row for one point; exposed for tests and single-point tools.
inline ScanRow scan_row(const PrimeCounter& counter, const RangePoint& p, double c0 = 0.2018,
                        double li_tol = kDefaultQuadTol) {
    ScanRow row;
    row.x = p.x;
    row.y = p.y;
    row.y_real = p.y_real;
    row.skipped = p.skipped;
    if (p.x >= 3) {
        row.err_rh = error_term(ErrorModel(ErrorKind::RHPi, c0), static_cast<double>(p.x));
        row.err_uncond = error_term(ErrorModel(ErrorKind::UncondPi, c0), static_cast<double>(p.x));
    }
    if (p.skipped) return row;

    const IntervalVerdict v = evaluate(counter, p.x, p.y);
    row.pi_x = v.pi_x;
    row.pi_y = v.pi_y;
    row.pi_xy = v.pi_xy;
    row.margin = v.margin;
    row.relation = v.relation;
    // li(x+y) - li(x) - li(y), as two integrals to avoid cancellation
    const auto xd = static_cast<double>(p.x);
    const auto yd = static_cast<double>(p.y);
    row.li_pred = log_integral(xd, xd + yd, 1, li_tol) - log_integral(2.0, yd, 1, li_tol);
    return row;
}

/// Rows for points[opts.start_index ..]. Throws before any work if a
/// non-skipped point exceeds the counter limit, or if every point is skipped.
inline std::vector<ScanRow> scan_points(const PrimeCounter& counter, std::span<const RangePoint> points,
                                        const ScanOptions& opts = {}) {
    std::size_t live = 0;
    for (const RangePoint& p : points) {
        if (p.skipped) continue;
        ++live;
        const std::int64_t sum = checked_add(p.x, p.y);
        if (sum > counter.limit()) {
            throw std::out_of_range("scan: point (x=" + std::to_string(p.x) + ", y=" +
                                    std::to_string(p.y) + ") needs pi(" + std::to_string(sum) +
                                    ") beyond counter limit " + std::to_string(counter.limit()));
        }
    }
    if (live == 0) throw std::runtime_error("scan: every grid point was skipped; nothing to report");
    if (opts.start_index > points.size()) throw std::out_of_range("scan: start index past the end");

    std::vector<ScanRow> rows;
    rows.reserve(points.size() - opts.start_index);
    const std::size_t chunk = std::max<std::size_t>(1, opts.chunk_rows);
    std::vector<ScanRow> buf;
    for (std::size_t lo = opts.start_index; lo < points.size(); lo += chunk) {
        const std::size_t n = std::min(chunk, points.size() - lo);
        buf.assign(n, ScanRow{});
        parallel_for(n, opts.threads, [&](std::size_t i) {
            buf[i] = scan_row(counter, points[lo + i], opts.c0, opts.li_tol);
        });
        if (opts.on_chunk) opts.on_chunk(buf);
        rows.insert(rows.end(), buf.begin(), buf.end());
    }
    return rows;
}

inline ScanMeta make_meta(const PrimeCounter& counter, const RangeFamily& family, const GridSpec& grid,
                          const ScanOptions& opts) {
    ScanMeta meta;
    meta.family = family;
    meta.grid = grid;
    meta.counter_limit = counter.limit();
    meta.method = counter.method();
    meta.c0 = opts.c0;
    meta.threads = opts.threads;
    return meta;
}

/// Full scan of a family over a grid.
inline ScanReport scan(const PrimeCounter& counter, const RangeFamily& family, const GridSpec& grid,
                       const ScanOptions& opts = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<RangePoint> points = range_points(family, grid);
    ScanReport report;
    report.meta = make_meta(counter, family, grid, opts);
    report.rows = scan_points(counter, points, opts);
    report.meta.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace hlprime
