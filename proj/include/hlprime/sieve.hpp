// sieve.hpp
// Sieve of Eratosthenes primitives: a plain sieve for base primes and a
// segmented odd-only sieve that streams primes of [lo, hi] in order.
//
// Segments hold odd numbers only, one byte each:
//   index i  ->  odd number seg_lo + 2*i

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hlprime {

/// All primes <= n, ascending.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    if (n > 0xFFFFFFFFull) throw std::domain_error("primes_up_to: n must fit in 32 bits");
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::uint64_t i = 2; i * i <= n; ++i) {
        if (composite[i]) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
    }
    out.reserve(n < 100 ? 25 : static_cast<std::size_t>(1.26 * n / std::log(double(n))));
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

inline constexpr std::uint64_t kSegmentOdds = 1u << 18;

/// Calls fn(p) for every prime p in [lo, hi], ascending.
/// `base` must contain every prime <= sqrt(hi); this is not re-checked.
template <typename Fn>
void for_each_prime_segmented(std::uint64_t lo, std::uint64_t hi,
                              std::span<const std::uint32_t> base, Fn&& fn) {
    if (hi < 2 || lo > hi) return;
    lo = std::max<std::uint64_t>(lo, 2);
    if (lo == 2) {
        fn(std::uint64_t{2});
        lo = 3;
    }
    if (lo > hi) return;
    if (lo % 2 == 0) ++lo;
    if (lo > hi) return;

    std::vector<std::uint8_t> seg(std::min(kSegmentOdds, (hi - lo) / 2 + 1));
    for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += 2 * seg.size()) {
        const std::uint64_t seg_hi = std::min(hi, seg_lo + 2 * (seg.size() - 1));
        const std::uint64_t count = (seg_hi - seg_lo) / 2 + 1;
        std::fill_n(seg.begin(), count, std::uint8_t{1});
        for (const std::uint64_t p : base) {
            if (p == 2) continue;
            const std::uint64_t pp = p * p;
            if (pp > seg_hi) break;
            std::uint64_t start = pp;
            if (start < seg_lo) {
                start = (seg_lo + p - 1) / p * p;
                if (start % 2 == 0) start += p;
            }
            for (std::uint64_t m = (start - seg_lo) / 2; m < count; m += p) seg[m] = 0;
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            if (seg[i]) fn(seg_lo + 2 * i);
        }
        if (seg_hi == hi) break;
    }
}

/// Number of primes in [lo, hi] by segmented sieve.
inline std::int64_t count_primes_segmented(std::uint64_t lo, std::uint64_t hi,
                                           std::span<const std::uint32_t> base) {
    std::int64_t n = 0;
    for_each_prime_segmented(lo, hi, base, [&](std::uint64_t) { ++n; });
    return n;
}

} // namespace hlprime
