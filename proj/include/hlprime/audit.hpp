// audit.hpp
// Numeric audits of the two final inequalities used in the range proofs.
//
// Unconditional range y >= x / log^c x:
//   lhs = 1 - 2 log^c x / x
//   rhs = 1 - c log log x / log x + K log^(c+1) x / e^sqrt(log x)
// RH-conditional range y >= sqrt(x) log^3 x:
//   lhs = 1 - 2 / (sqrt(x) log^3 x)
//   rhs = 1/2 + log(log^3 x) / log x + K / log x
//
// Each record stores both sides and holds = (lhs <= rhs). The proofs argue
// the inequality must fail for large x; K stands in for the unstated
// implied constant, and the crossing search reports where failure begins.

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hlprime {

struct AuditRecord {
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    std::optional<double> c; // unconditional audit only
    double K = 1.0;
};

namespace detail {

inline void check_audit_args(double x, double K) {
    if (!(x >= 16.0)) throw std::domain_error("audit: x must be >= 16");
    if (!(K > 0.0)) throw std::domain_error("audit: K must be > 0");
}

} // namespace detail

inline AuditRecord audit_unconditional(double x, double c, double K = 1.0) {
    detail::check_audit_args(x, K);
    if (!(c >= 0.0)) throw std::domain_error("audit_unconditional: c must be >= 0");
    const double lx = std::log(x);
    const double llx = std::log(lx);
    const double lhs = 1.0 - 2.0 * std::pow(lx, c) / x;
    const double rhs = 1.0 - c * llx / lx + K * std::pow(lx, c + 1.0) / std::exp(std::sqrt(lx));
    return {x, lhs, rhs, lhs <= rhs, c, K};
}

inline AuditRecord audit_rh(double x, double K = 1.0) {
    detail::check_audit_args(x, K);
    const double lx = std::log(x);
    const double l3 = lx * lx * lx;
    const double lhs = 1.0 - 2.0 / (std::sqrt(x) * l3);
    const double rhs = 0.5 + std::log(l3) / lx + K / lx;
    return {x, lhs, rhs, lhs <= rhs, std::nullopt, K};
}

struct CrossingResult {
    /// Smallest grid x with holds = false, refined by bisection; empty if the
    /// audit held on the whole grid.
    std::optional<double> crossing;
    std::optional<double> first_failing_grid_x;
    std::vector<AuditRecord> grid;
};

/// Tabulates `audit(x)` on a geometric grid over [x_min, x_max] and bisects
/// (in log x) between the last holding point and the first failing one.
template <typename Audit>
CrossingResult find_crossing(Audit&& audit, double x_min, double x_max, int points = 200,
                             int bisect_iters = 200) {
    if (!(x_min < x_max)) throw std::invalid_argument("find_crossing: need x_min < x_max");
    if (points < 2) throw std::invalid_argument("find_crossing: need >= 2 grid points");
    CrossingResult out;
    const double llo = std::log(x_min);
    const double lhi = std::log(x_max);
    double prev_log = llo;
    bool prev_holds = false;
    for (int i = 0; i < points; ++i) {
        const double lx = i == points - 1 ? lhi : llo + (lhi - llo) * i / (points - 1);
        const double x = i == 0 ? x_min : (i == points - 1 ? x_max : std::exp(lx));
        const AuditRecord rec = audit(x);
        out.grid.push_back(rec);
        if (!rec.holds && !out.first_failing_grid_x) {
            out.first_failing_grid_x = x;
            if (i == 0 || !prev_holds) {
                out.crossing = x;
            } else {
                double a = prev_log, b = lx; // holds at a, fails at b
                for (int it = 0; it < bisect_iters && b - a > 1e-13 * std::fabs(b); ++it) {
                    const double m = 0.5 * (a + b);
                    (audit(std::exp(m)).holds ? a : b) = m;
                }
                out.crossing = std::exp(b);
            }
        }
        prev_log = lx;
        prev_holds = rec.holds;
    }
    return out;
}

} // namespace hlprime
