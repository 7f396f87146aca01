// range_family.hpp
// Parameterized (x, y) generators for the ranges under test, and the x grids
// they are sampled on.
//
//   FixedRatio     y = delta * x                 0 < delta <= 1
//   LogPower       y = x / log^c x               c >= 0; valid while y <= x
//   SqrtLogCube    y = sqrt(x) * log^3 x         valid while y <= x
//   ShortInterval  y = log^r x                   r > 0
//   Explicit       caller-supplied pairs
//
// y is floored to an integer and clamped to >= 2. Points outside a family's
// validity region are emitted with skipped = true rather than clamped, since
// clamping would change which inequality is being tested.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hlprime {

enum class FamilyKind { FixedRatio, LogPower, SqrtLogCube, ShortInterval, Explicit };

inline std::string_view to_string(FamilyKind k) {
    switch (k) {
    case FamilyKind::FixedRatio: return "FixedRatio";
    case FamilyKind::LogPower: return "LogPower";
    case FamilyKind::SqrtLogCube: return "SqrtLogCube";
    case FamilyKind::ShortInterval: return "ShortInterval";
    case FamilyKind::Explicit: return "Explicit";
    }
    return "?";
}

struct RangeFamily {
    FamilyKind kind = FamilyKind::LogPower;
    double delta = 1.0;
    double c = 0.0;
    double r = 1.0;
    /// SqrtLogCube only: extra y values spread geometrically from the lower
    /// edge up to y = x. 0 scans the lower edge alone.
    int band_steps = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;

    static RangeFamily fixed_ratio(double delta) {
        if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("FixedRatio: need 0 < delta <= 1");
        RangeFamily f;
        f.kind = FamilyKind::FixedRatio;
        f.delta = delta;
        return f;
    }
    static RangeFamily log_power(double c) {
        if (!(c >= 0.0)) throw std::domain_error("LogPower: need c >= 0");
        RangeFamily f;
        f.kind = FamilyKind::LogPower;
        f.c = c;
        return f;
    }
    static RangeFamily sqrt_log_cube(int band_steps = 0) {
        if (band_steps < 0) throw std::domain_error("SqrtLogCube: band_steps must be >= 0");
        RangeFamily f;
        f.kind = FamilyKind::SqrtLogCube;
        f.band_steps = band_steps;
        return f;
    }
    static RangeFamily short_interval(double r) {
        if (!(r > 0.0)) throw std::domain_error("ShortInterval: need r > 0");
        RangeFamily f;
        f.kind = FamilyKind::ShortInterval;
        f.r = r;
        return f;
    }
    static RangeFamily explicit_pairs(std::vector<std::pair<std::int64_t, std::int64_t>> pairs) {
        RangeFamily f;
        f.kind = FamilyKind::Explicit;
        f.pairs = std::move(pairs);
        return f;
    }

    /// Real-valued y at x (before flooring). Not meaningful for Explicit.
    double y_real(double x) const {
        const double lx = std::log(x);
        switch (kind) {
        case FamilyKind::FixedRatio: return delta * x;
        case FamilyKind::LogPower: return x / std::pow(lx, c);
        case FamilyKind::SqrtLogCube: return std::sqrt(x) * lx * lx * lx;
        case FamilyKind::ShortInterval: return std::pow(lx, r);
        case FamilyKind::Explicit: break;
        }
        throw std::logic_error("y_real: Explicit family has no formula");
    }
};

struct GridSpec {
    enum class Kind { Geometric, Arithmetic };
    Kind kind = Kind::Geometric;
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;
    std::int64_t points = 200; // Geometric
    std::int64_t step = 1;     // Arithmetic

    static GridSpec geometric(std::int64_t x_min, std::int64_t x_max, std::int64_t points = 200) {
        return {Kind::Geometric, x_min, x_max, points, 1};
    }
    static GridSpec arithmetic(std::int64_t x_min, std::int64_t x_max, std::int64_t step) {
        return {Kind::Arithmetic, x_min, x_max, 0, step};
    }
};

/// Grid x values, ascending, duplicates (from rounding) dropped.
inline std::vector<std::int64_t> grid_values(const GridSpec& g) {
    if (!(g.x_min < g.x_max)) throw std::invalid_argument("grid: need x_min < x_max");
    std::vector<std::int64_t> xs;
    if (g.kind == GridSpec::Kind::Arithmetic) {
        if (g.step < 1) throw std::invalid_argument("grid: step must be >= 1");
        for (std::int64_t x = g.x_min; x <= g.x_max; x += g.step) {
            xs.push_back(x);
            if (x > g.x_max - g.step) break;
        }
        return xs;
    }
    if (g.points < 1) throw std::invalid_argument("grid: point count must be >= 1");
    if (g.x_min < 1) throw std::invalid_argument("geometric grid: x_min must be >= 1");
    if (g.points == 1) return {g.x_min};
    const double lo = std::log(static_cast<double>(g.x_min));
    const double span = std::log(static_cast<double>(g.x_max)) - lo;
    xs.reserve(static_cast<std::size_t>(g.points));
    for (std::int64_t i = 0; i < g.points; ++i) {
        std::int64_t x;
        if (i == 0) {
            x = g.x_min;
        } else if (i == g.points - 1) {
            x = g.x_max;
        } else {
            x = std::llround(std::exp(lo + span * static_cast<double>(i) / static_cast<double>(g.points - 1)));
            x = std::clamp(x, g.x_min, g.x_max);
        }
        if (xs.empty() || x > xs.back()) xs.push_back(x);
    }
    return xs;
}

struct RangePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;
    double y_real = 0.0;
    bool skipped = false;

    friend bool operator==(const RangePoint&, const RangePoint&) = default;
};

namespace detail {

inline std::int64_t floor_clamped(double y) {
    if (!(y >= 2.0)) return 2;
    if (y >= 9.2e18) return INT64_MAX;
    return static_cast<std::int64_t>(std::floor(y));
}

} // namespace detail

/// Deterministic point sequence, ascending by x then y.
inline std::vector<RangePoint> range_points(const RangeFamily& family, const GridSpec& grid) {
    std::vector<RangePoint> out;
    if (family.kind == FamilyKind::Explicit) {
        if (family.pairs.empty()) throw std::invalid_argument("range_points: no explicit pairs");
        for (const auto& [x, y] : family.pairs) {
            out.push_back({x, y, static_cast<double>(y), x < 2 || y < 2});
        }
        std::sort(out.begin(), out.end(), [](const RangePoint& a, const RangePoint& b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        out.erase(std::unique(out.begin(), out.end(),
                              [](const RangePoint& a, const RangePoint& b) {
                                  return a.x == b.x && a.y == b.y;
                              }),
                  out.end());
        return out;
    }

    for (const std::int64_t x : grid_values(grid)) {
        if (x < 2) {
            out.push_back({x, 2, 2.0, true});
            continue;
        }
        const double yr = family.y_real(static_cast<double>(x));
        const std::int64_t y = detail::floor_clamped(yr);
        bool valid = true;
        if (family.kind == FamilyKind::LogPower || family.kind == FamilyKind::SqrtLogCube) {
            valid = y <= x;
        }
        out.push_back({x, y, yr, !valid});

        if (valid && family.kind == FamilyKind::SqrtLogCube && family.band_steps > 0) {
            // sweep the band from the lower edge toward y = x
            const double ly = std::log(static_cast<double>(y));
            const double lx = std::log(static_cast<double>(x));
            std::int64_t prev = y;
            for (int j = 1; j <= family.band_steps; ++j) {
                const double yj_real = std::exp(ly + (lx - ly) * j / family.band_steps);
                std::int64_t yj = j == family.band_steps ? x : detail::floor_clamped(yj_real);
                yj = std::min(yj, x);
                if (yj <= prev) continue;
                out.push_back({x, yj, yj_real, false});
                prev = yj;
            }
        }
    }
    return out;
}

} // namespace hlprime
