// int_math.hpp
// Exact 64-bit integer helpers: checked addition and integer k-th roots.
//
// Roots are computed with integer Newton iteration seeded from a floating
// estimate and then corrected, so perfect powers near 2^53 and above come
// out exact.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hlprime {

/// a + b, throwing std::overflow_error instead of wrapping.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in " + std::to_string(a) + " + " +
                                  std::to_string(b));
    }
    return out;
}

namespace detail {

// base^k, saturating at UINT64_MAX.
constexpr std::uint64_t pow_saturating(std::uint64_t base, unsigned k) {
    std::uint64_t out = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        out *= base;
    }
    return out;
}

// base^k > n, without overflow.
constexpr bool pow_exceeds(std::uint64_t base, unsigned k, std::uint64_t n) {
    unsigned __int128 out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= base;
        if (out > n) return true;
    }
    return false;
}

} // namespace detail

/// floor(n^(1/k)) for k >= 1.
inline std::uint64_t iroot(std::uint64_t n, unsigned k) {
    if (k == 0) throw std::domain_error("iroot: k must be >= 1");
    if (k == 1 || n < 2) return n;
    if (k >= 64) return 1;

    // Newton on f(r) = r^k - n, starting above the root so iterates decrease.
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k)) + 1;
    while (!detail::pow_exceeds(r, k, n)) ++r;
    for (;;) {
        // next = ((k-1) r + n / r^(k-1)) / k
        const std::uint64_t rk1 = detail::pow_saturating(r, k - 1);
        const unsigned __int128 next =
            (static_cast<unsigned __int128>(k - 1) * r + n / rk1) / k;
        if (next >= r) break;
        r = static_cast<std::uint64_t>(next);
    }
    // correction: make r the largest value with r^k <= n
    while (detail::pow_exceeds(r, k, n)) --r;
    while (!detail::pow_exceeds(r + 1, k, n)) ++r;
    return r;
}

inline std::uint64_t isqrt(std::uint64_t n) { return iroot(n, 2); }

} // namespace hlprime
