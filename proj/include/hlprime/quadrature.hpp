// quadrature.hpp
// Adaptive Simpson quadrature with Richardson extrapolation.
//
// A panel [a, b] is accepted when the two-half Simpson estimate S2 and the
// whole-panel estimate S1 satisfy |S2 - S1| <= 15 * tol_panel; the accepted
// value is S2 + (S2 - S1) / 15 and the error estimate is |S2 - S1| / 15.
// Tolerance is split evenly between halves on bisection.
//
// Absolute tolerances below the round-off level of the result cannot be met
// in double precision, so each panel's tolerance is floored at a few ulps of
// its own magnitude. The returned `tol_used` reports the effective bound.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hlprime {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    double tol_used = 0.0;
    std::size_t evaluations = 0;
};

template <typename F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
    if (!(tol > 0.0)) throw std::domain_error("adaptive_simpson: tol must be > 0");
    QuadratureResult out;
    if (a == b) {
        out.tol_used = tol;
        return out;
    }

    struct Panel {
        double a, b, fa, fm, fb, whole, tol;
        int depth;
    };

    constexpr double kUlpFloor = 32.0 * std::numeric_limits<double>::epsilon();

    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    out.evaluations = 3;

    std::vector<Panel> stack;
    stack.push_back({a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 0});

    double sum = 0.0, sum_c = 0.0; // Neumaier accumulation of accepted panels
    double err = 0.0;
    double tol_sum = 0.0;
    auto accumulate = [&](double v) {
        const double t = sum + v;
        sum_c += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };

    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.a + p.b);
        const double lm = 0.5 * (p.a + mid);
        const double rm = 0.5 * (mid + p.b);
        const double flm = f(lm);
        const double frm = f(rm);
        out.evaluations += 2;
        const double left = (mid - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
        const double right = (p.b - mid) / 6.0 * (p.fm + 4.0 * frm + p.fb);
        const double halves = left + right;
        const double diff = halves - p.whole;
        const double panel_tol = std::max(p.tol, kUlpFloor * std::fabs(halves));

        if (std::fabs(diff) <= 15.0 * panel_tol || p.depth >= max_depth) {
            accumulate(halves + diff / 15.0);
            err += std::fabs(diff) / 15.0;
            tol_sum += panel_tol;
            continue;
        }
        // right pushed first so the left half is integrated first
        stack.push_back({mid, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
        stack.push_back({p.a, mid, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
    }

    out.value = sum + sum_c;
    out.error_estimate = err;
    out.tol_used = tol_sum;
    return out;
}

} // namespace hlprime
