// report.hpp
// ScanReport: metadata plus ordered rows, the unit every writer consumes.

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hlprime/prime_counter.hpp"
#include "hlprime/range_family.hpp"
#include "hlprime/verdict.hpp"

namespace hlprime {

inline constexpr const char* kEngineVersion = "1.0.0";

struct ScanRow {
    std::int64_t x = 0;
    std::int64_t y = 0;
    double y_real = 0.0;
    std::int64_t pi_x = 0;
    std::int64_t pi_y = 0;
    std::int64_t pi_xy = 0;
    std::int64_t margin = 0;
    Relation relation = Relation::Equal;
    std::optional<double> li_pred;
    std::optional<double> err_rh;
    std::optional<double> err_uncond;
    bool skipped = false;

    friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

struct ScanMeta {
    RangeFamily family;
    GridSpec grid;
    std::int64_t counter_limit = 0;
    CountMethod method = CountMethod::SieveTable;
    double c0 = 0.2018;
    std::string engine_version = kEngineVersion;
    double wall_time_s = 0.0;
    unsigned threads = 1;
    /// Command line that produced the report, if any.
    std::string command;
    std::uint64_t seed = 0;
};

struct ScanReport {
    ScanMeta meta;
    std::vector<ScanRow> rows;
};

namespace detail {

inline std::string shortest_double(double v) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

} // namespace detail

/// Canonical text of everything that determines a scan's rows. Worker count,
/// timing, and the command line are deliberately absent.
inline std::string scan_identity(const ScanMeta& m) {
    std::string s = "family=" + std::string(to_string(m.family.kind));
    switch (m.family.kind) {
    case FamilyKind::FixedRatio: s += ";delta=" + detail::shortest_double(m.family.delta); break;
    case FamilyKind::LogPower: s += ";c=" + detail::shortest_double(m.family.c); break;
    case FamilyKind::SqrtLogCube: s += ";band=" + std::to_string(m.family.band_steps); break;
    case FamilyKind::ShortInterval: s += ";r=" + detail::shortest_double(m.family.r); break;
    case FamilyKind::Explicit:
        s += ";pairs=";
        for (const auto& [x, y] : m.family.pairs) s += std::to_string(x) + ":" + std::to_string(y) + ",";
        break;
    }
    if (m.family.kind != FamilyKind::Explicit) {
        s += m.grid.kind == GridSpec::Kind::Geometric ? ";grid=geometric" : ";grid=arithmetic";
        s += ";xmin=" + std::to_string(m.grid.x_min) + ";xmax=" + std::to_string(m.grid.x_max);
        s += m.grid.kind == GridSpec::Kind::Geometric ? ";points=" + std::to_string(m.grid.points)
                                                      : ";step=" + std::to_string(m.grid.step);
    }
    s += ";limit=" + std::to_string(m.counter_limit);
    s += ";method=" + std::string(to_string(m.method));
    s += ";c0=" + detail::shortest_double(m.c0);
    s += ";version=" + m.engine_version;
    return s;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t scan_hash(const ScanMeta& m) { return fnv1a64(scan_identity(m)); }

} // namespace hlprime
