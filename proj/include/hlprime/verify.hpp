// verify.hpp
// Exhaustive check of pi(x+y) vs pi(x)+pi(y) over every pair
// 2 <= x <= y with x + y <= max_sum.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hlprime/prime_counter.hpp"
#include "hlprime/verdict.hpp"

namespace hlprime {

struct VerifyCensus {
    std::int64_t max_sum = 0;
    std::int64_t pairs = 0;
    std::int64_t n_less = 0;
    std::int64_t n_equal = 0;
    std::int64_t n_greater = 0;
    std::vector<IntervalVerdict> greater; // every Greater verdict found
};

/// Number of pairs 2 <= x <= y with x + y <= max_sum.
constexpr std::int64_t verify_pair_count(std::int64_t max_sum) {
    std::int64_t n = 0;
    for (std::int64_t x = 2; 2 * x <= max_sum; ++x) n += max_sum - 2 * x + 1;
    return n;
}

/// Visits pairs in (x ascending, y ascending) order. `visit`, if given, sees
/// every verdict.
inline VerifyCensus verify_exhaustive(const PrimeCounter& counter, std::int64_t max_sum,
                                      const std::function<void(const IntervalVerdict&)>& visit = {}) {
    if (max_sum < 4) throw std::domain_error("verify: max_sum must be >= 4");
    if (max_sum > counter.limit()) {
        throw std::out_of_range("verify: max_sum " + std::to_string(max_sum) + " exceeds counter limit " +
                                std::to_string(counter.limit()));
    }
    if (max_sum > (std::int64_t{1} << 31)) throw std::domain_error("verify: max_sum too large for a dense table");

    // dense pi table; there are O(max_sum^2) lookups
    std::vector<std::int32_t> pi(static_cast<std::size_t>(max_sum) + 1, 0);
    {
        std::int32_t running = 0;
        std::int64_t next = 2;
        counter.for_each_prime(2, max_sum, [&](std::uint64_t p) {
            for (; next < static_cast<std::int64_t>(p); ++next) pi[next] = running;
            pi[p] = ++running;
            next = static_cast<std::int64_t>(p) + 1;
        });
        for (; next <= max_sum; ++next) pi[next] = running;
    }

    VerifyCensus census;
    census.max_sum = max_sum;
    for (std::int64_t x = 2; 2 * x <= max_sum; ++x) {
        const std::int64_t px = pi[x];
        for (std::int64_t y = x; x + y <= max_sum; ++y) {
            const IntervalVerdict v = make_verdict(x, y, px, pi[y], pi[x + y]);
            ++census.pairs;
            switch (v.relation) {
            case Relation::StrictLess: ++census.n_less; break;
            case Relation::Equal: ++census.n_equal; break;
            case Relation::Greater:
                ++census.n_greater;
                census.greater.push_back(v);
                break;
            }
            if (visit) visit(v);
        }
    }
    return census;
}

} // namespace hlprime
