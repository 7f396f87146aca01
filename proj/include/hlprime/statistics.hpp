// statistics.hpp
// Short-interval statistics: the Montgomery-Vaughan window bound, Maier's
// ratio, the sign census over y = log^r x, and the normalized psi deviation.
//
// h denotes a window length throughout; theta is reserved for the
// Chebyshev sum.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hlprime/parallel.hpp"
#include "hlprime/prime_counter.hpp"
#include "hlprime/verdict.hpp"

namespace hlprime {

inline constexpr double kEulerGamma = 0.57721566490153286;

struct MvBoundRecord {
    std::int64_t x = 0;
    std::int64_t h = 0;
    std::int64_t lhs = 0; // primes in (x, x+h]
    double rhs = 0.0;     // 2h / log h
    bool holds = false;
};

/// pi(x+h) - pi(x) <= 2h / log h.
inline MvBoundRecord mv_bound_check(const PrimeCounter& counter, std::int64_t x, std::int64_t h) {
    if (h < 2) throw std::domain_error("mv_bound_check: h must be >= 2");
    if (x < 2) throw std::domain_error("mv_bound_check: x must be >= 2");
    const std::int64_t end = checked_add(x, h);
    if (end > counter.limit()) {
        throw std::out_of_range("mv_bound_check: x + h = " + std::to_string(end) +
                                " exceeds counter limit " + std::to_string(counter.limit()));
    }
    MvBoundRecord rec{x, h, counter.count_window(x, end), 0.0, false};
    rec.rhs = 2.0 * static_cast<double>(h) / std::log(static_cast<double>(h));
    rec.holds = static_cast<double>(rec.lhs) <= rec.rhs;
    return rec;
}

struct MaierRecord {
    std::int64_t x = 0;
    double r = 0.0;
    std::int64_t h = 0;     // floor(log^r x)
    std::int64_t count = 0; // primes in (x, x+h]
    double ratio = 0.0;     // count * log x / log^r x
    double reference = 0.0; // e^gamma / r
};

/// (pi(x+h) - pi(x)) / (h / log x) with h = log^r x; the denominator uses
/// the unfloored h.
inline MaierRecord maier_ratio(const PrimeCounter& counter, std::int64_t x, double r) {
    if (x < 3) throw std::domain_error("maier_ratio: x must be >= 3");
    if (!(r > 0.0)) throw std::domain_error("maier_ratio: r must be > 0");
    const double lx = std::log(static_cast<double>(x));
    const double h_real = std::pow(lx, r);
    const auto h = static_cast<std::int64_t>(std::floor(h_real));
    if (h < 1) throw std::domain_error("maier_ratio: floor(log^r x) < 1");
    const std::int64_t end = checked_add(x, h);
    if (end > counter.limit()) {
        throw std::out_of_range("maier_ratio: x + h = " + std::to_string(end) +
                                " exceeds counter limit " + std::to_string(counter.limit()));
    }
    MaierRecord rec;
    rec.x = x;
    rec.r = r;
    rec.h = h;
    rec.count = counter.count_window(x, end);
    rec.ratio = static_cast<double>(rec.count) * lx / h_real;
    rec.reference = std::exp(kEulerGamma) / r;
    return rec;
}

struct MarginAt {
    std::int64_t x = 0;
    std::int64_t margin = 0;
    friend bool operator==(const MarginAt&, const MarginAt&) = default;
};

struct CensusReport {
    double r = 0.0;
    std::int64_t x_min = 0;
    std::int64_t x_max = 0;
    std::int64_t step = 1;
    std::int64_t n_less = 0;
    std::int64_t n_equal = 0;
    std::int64_t n_greater = 0;
    std::int64_t n_skipped = 0;
    std::vector<MarginAt> most_negative; // ascending margin, then x
    std::vector<MarginAt> most_positive; // descending margin, then x
    std::vector<IntervalVerdict> verdicts; // filled when requested

    std::int64_t total() const { return n_less + n_equal + n_greater + n_skipped; }
};

struct CensusOptions {
    unsigned threads = 1;
    bool keep_verdicts = false;
    std::size_t extremes = 10;
};

/// Sign census of pi(x+y) vs pi(x)+pi(y) for y = floor(log^r x) (>= 2) at
/// x = x_min, x_min+step, ..., <= x_max.
inline CensusReport oscillation_census(const PrimeCounter& counter, double r, std::int64_t x_min,
                                       std::int64_t x_max, std::int64_t step,
                                       const CensusOptions& opts = {}) {
    if (!(r > 0.0)) throw std::domain_error("oscillation_census: r must be > 0");
    if (x_min < 2 || !(x_min < x_max)) throw std::domain_error("oscillation_census: need 2 <= x_min < x_max");
    if (step < 1) throw std::domain_error("oscillation_census: step must be >= 1");

    const std::int64_t n = (x_max - x_min) / step + 1;
    auto y_at = [r](std::int64_t x) {
        const double y = std::pow(std::log(static_cast<double>(x)), r);
        return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::floor(y)));
    };
    const std::int64_t last = x_min + (n - 1) * step;
    const std::int64_t need = checked_add(last, y_at(last));
    if (need > counter.limit()) {
        throw std::out_of_range("oscillation_census: x + y = " + std::to_string(need) +
                                " at x = " + std::to_string(last) + " exceeds counter limit " +
                                std::to_string(counter.limit()));
    }

    std::vector<IntervalVerdict> verdicts(static_cast<std::size_t>(n));
    parallel_for(verdicts.size(), opts.threads, [&](std::size_t i) {
        const std::int64_t x = x_min + static_cast<std::int64_t>(i) * step;
        verdicts[i] = evaluate(counter, x, y_at(x));
    });

    CensusReport rep;
    rep.r = r;
    rep.x_min = x_min;
    rep.x_max = x_max;
    rep.step = step;
    std::vector<MarginAt> margins;
    margins.reserve(verdicts.size());
    for (const auto& v : verdicts) {
        switch (v.relation) {
        case Relation::StrictLess: ++rep.n_less; break;
        case Relation::Equal: ++rep.n_equal; break;
        case Relation::Greater: ++rep.n_greater; break;
        }
        margins.push_back({v.x, v.margin});
    }

    const std::size_t k = std::min(opts.extremes, margins.size());
    auto neg = margins;
    std::partial_sort(neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(k), neg.end(),
                      [](const MarginAt& a, const MarginAt& b) {
                          return a.margin != b.margin ? a.margin < b.margin : a.x < b.x;
                      });
    rep.most_negative.assign(neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(k));
    std::partial_sort(margins.begin(), margins.begin() + static_cast<std::ptrdiff_t>(k), margins.end(),
                      [](const MarginAt& a, const MarginAt& b) {
                          return a.margin != b.margin ? a.margin > b.margin : a.x < b.x;
                      });
    rep.most_positive.assign(margins.begin(), margins.begin() + static_cast<std::ptrdiff_t>(k));
    if (opts.keep_verdicts) rep.verdicts = std::move(verdicts);
    return rep;
}

/// (psi(x) - x) / (sqrt(x) (log log x)^2), x >= 16.
inline double normalized_psi_deviation(const PrimeCounter& counter, std::int64_t x) {
    if (x < 16) throw std::domain_error("normalized_psi_deviation: x must be >= 16");
    const double psi = counter.chebyshev(x).psi;
    const auto xd = static_cast<double>(x);
    const double ll = std::log(std::log(xd));
    return (psi - xd) / (std::sqrt(xd) * ll * ll);
}

struct PsiRecord {
    std::int64_t x = 0;
    double theta = 0.0;
    double psi = 0.0;
    double deviation = 0.0; // normalized_psi_deviation at x
};

/// normalized_psi_deviation at every x (ascending, each >= 16) from a single
/// pass over the primes up to max x.
inline std::vector<PsiRecord> psi_deviation_series(const PrimeCounter& counter, std::span<const std::int64_t> xs) {
    std::vector<PsiRecord> out;
    if (xs.empty()) return out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 16) throw std::domain_error("psi_deviation_series: x must be >= 16");
        if (i && xs[i] <= xs[i - 1]) throw std::invalid_argument("psi_deviation_series: xs must be ascending");
    }
    if (xs.back() > counter.limit()) {
        throw std::out_of_range("psi_deviation_series: x " + std::to_string(xs.back()) +
                                " exceeds counter limit " + std::to_string(counter.limit()));
    }
    out.resize(xs.size());
    CompensatedSum theta;
    std::size_t next = 0;
    counter.for_each_prime(2, xs.back(), [&](std::uint64_t p) {
        while (next < xs.size() && static_cast<std::uint64_t>(xs[next]) < p) {
            out[next].theta = theta.value();
            ++next;
        }
        theta += std::log(static_cast<double>(p));
    });
    for (; next < xs.size(); ++next) out[next].theta = theta.value();

    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto ux = static_cast<std::uint64_t>(xs[i]);
        CompensatedSum psi;
        psi += out[i].theta;
        for (const std::uint64_t p : counter.base_primes()) {
            if (p * p > ux) break;
            const double lp = std::log(static_cast<double>(p));
            for (std::uint64_t q = p * p;; q *= p) {
                psi += lp;
                if (q > ux / p) break;
            }
        }
        const auto xd = static_cast<double>(xs[i]);
        const double ll = std::log(std::log(xd));
        out[i].x = xs[i];
        out[i].psi = psi.value();
        out[i].deviation = (out[i].psi - xd) / (std::sqrt(xd) * ll * ll);
    }
    return out;
}

} // namespace hlprime
