// checkpoint.hpp
// Resumable scans.
//
// A checkpointed scan keeps two files next to each other:
//   <path>             small text checkpoint, replaced atomically (tmp + rename)
//   <path>.rows.jsonl  append-only journal of completed rows
//
// Checkpoint format, one "key value" pair per line:
//   hlcheck-checkpoint 1
//   scan_hash <16 hex digits>
//   last_x <integer>
//   rows <integer>
//
// The journal is appended and flushed before the checkpoint is replaced, so
// after a kill the journal holds at least `rows` complete lines. On resume it
// is truncated back to exactly `rows` lines and the scan continues with
// point number `rows`; nothing is emitted twice or skipped.

#pragma once

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "hlprime/errors.hpp"
#include "hlprime/scan.hpp"
#include "hlprime/scan_io.hpp"

namespace hlprime {

struct Checkpoint {
    std::uint64_t scan_hash = 0;
    std::int64_t last_x = 0;
    std::uint64_t rows = 0;

    friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

inline std::string checkpoint_text(const Checkpoint& cp) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "hlcheck-checkpoint 1\nscan_hash %016" PRIx64 "\nlast_x %" PRId64 "\nrows %" PRIu64 "\n",
                  cp.scan_hash, cp.last_x, cp.rows);
    return buf;
}

inline void checkpoint_save(const Checkpoint& cp, const std::string& path) {
    const std::string tmp = path + ".tmp";
    io_detail::write_file(tmp, checkpoint_text(cp));
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot move checkpoint into place at '" + path + "': " + ec.message());
}

inline Checkpoint parse_checkpoint(const std::string& text) {
    std::size_t pos = 0;
    auto expect_line = [&](const std::string& key) -> std::string {
        const std::size_t start = pos;
        const std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) throw ParseError("checkpoint truncated, expected '" + key + "'", start);
        const std::string line = text.substr(pos, end - pos);
        if (line.rfind(key + " ", 0) != 0) throw ParseError("checkpoint expected '" + key + "'", start);
        pos = end + 1;
        return line.substr(key.size() + 1);
    };
    auto number = [&](const std::string& s, int base, std::size_t offset) {
        if (s.empty()) throw ParseError("checkpoint: empty number", offset);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &used, base);
        } catch (const std::exception&) {
            throw ParseError("checkpoint: bad number '" + s + "'", offset);
        }
        if (used != s.size()) throw ParseError("checkpoint: bad number '" + s + "'", offset + used);
        return v;
    };

    if (expect_line("hlcheck-checkpoint") != "1") throw ParseError("unsupported checkpoint version", 0);
    Checkpoint cp;
    std::size_t at = pos;
    cp.scan_hash = number(expect_line("scan_hash"), 16, at + 10);
    at = pos;
    const std::string last = expect_line("last_x");
    const bool neg = !last.empty() && last[0] == '-';
    cp.last_x = static_cast<std::int64_t>(number(neg ? last.substr(1) : last, 10, at + 7 + neg));
    if (neg) cp.last_x = -cp.last_x;
    at = pos;
    cp.rows = number(expect_line("rows"), 10, at + 5);
    if (pos != text.size()) throw ParseError("checkpoint: trailing data", pos);
    return cp;
}

inline Checkpoint checkpoint_load(const std::string& path) {
    return parse_checkpoint(io_detail::read_file(path));
}

inline std::string journal_path(const std::string& checkpoint_path) { return checkpoint_path + ".rows.jsonl"; }

/// Raised when a checkpoint does not belong to the scan being resumed.
class ResumeMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs (or resumes) a scan, persisting progress after each chunk. The
/// returned report is identical to an uninterrupted `scan` apart from
/// wall time. `after_checkpoint` runs once per chunk after its checkpoint is
/// on disk.
inline ScanReport resumable_scan(const PrimeCounter& counter, const RangeFamily& family, const GridSpec& grid,
                                 ScanOptions opts, const std::string& checkpoint_path,
                                 const std::function<void(const Checkpoint&)>& after_checkpoint = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    ScanReport report;
    report.meta = make_meta(counter, family, grid, opts);
    const std::uint64_t hash = scan_hash(report.meta);
    const std::vector<RangePoint> points = range_points(family, grid);
    const std::string journal = journal_path(checkpoint_path);

    Checkpoint cp{hash, 0, 0};
    if (std::filesystem::exists(checkpoint_path)) {
        cp = checkpoint_load(checkpoint_path);
        if (cp.scan_hash != hash) {
            char want[17], got[17];
            std::snprintf(want, sizeof want, "%016" PRIx64, hash);
            std::snprintf(got, sizeof got, "%016" PRIx64, cp.scan_hash);
            throw ResumeMismatch("checkpoint '" + checkpoint_path + "' is for scan " + got +
                                 ", refusing to resume scan " + want + " (parameters changed?)");
        }
        if (cp.rows > points.size()) throw ResumeMismatch("checkpoint claims more rows than the scan has");
        std::string text = std::filesystem::exists(journal) ? io_detail::read_file(journal) : std::string{};
        report.rows = parse_jsonl(text, false, cp.rows).rows;
        if (report.rows.size() != cp.rows) {
            throw ResumeMismatch("journal '" + journal + "' has " + std::to_string(report.rows.size()) +
                                 " rows but the checkpoint records " + std::to_string(cp.rows));
        }
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            if (report.rows[i].x != points[i].x || report.rows[i].y != points[i].y) {
                throw ResumeMismatch("journal row " + std::to_string(i) + " does not match the scan's points");
            }
        }
        if (cp.rows > 0 && report.rows.back().x != cp.last_x) {
            throw ResumeMismatch("journal last x disagrees with checkpoint last_x");
        }
        // drop anything written after the last checkpoint
        std::string kept;
        for (const ScanRow& r : report.rows) kept += row_json(r).dump() + "\n";
        io_detail::write_file(journal, kept);
    } else {
        io_detail::write_file(journal, "");
        checkpoint_save(cp, checkpoint_path);
    }

    if (cp.rows < points.size()) {
        std::ofstream jout(journal, std::ios::binary | std::ios::app);
        if (!jout) throw std::runtime_error("cannot open journal '" + journal + "'");
        opts.start_index = cp.rows;
        opts.on_chunk = [&](std::span<const ScanRow> chunk) {
            std::string lines;
            for (const ScanRow& r : chunk) lines += row_json(r).dump() + "\n";
            jout.write(lines.data(), static_cast<std::streamsize>(lines.size()));
            jout.flush();
            if (!jout) throw std::runtime_error("journal write failed for '" + journal + "'");
            cp.rows += chunk.size();
            cp.last_x = chunk.back().x;
            checkpoint_save(cp, checkpoint_path);
            if (after_checkpoint) after_checkpoint(cp);
        };
        std::vector<ScanRow> fresh = scan_points(counter, points, opts);
        report.rows.insert(report.rows.end(), fresh.begin(), fresh.end());
    }

    report.meta.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace hlprime
