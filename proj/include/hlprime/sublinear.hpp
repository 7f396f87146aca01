// sublinear.hpp
// Exact pi(n) in O(n^(3/4)) time and O(sqrt n) memory.
//
// Partial-sieve recursion over the O(sqrt n) distinct values floor(n/i).
// S(v) starts as the count of integers in [2, v]; sieving by prime p removes
// the numbers whose least prime factor is p:
//
//   S(v) -= S(v/p) - S(p-1)     for every v >= p^2
//
// After all p <= sqrt(n) are processed S(n) = pi(n). Values v <= sqrt(n) live
// in `small` (indexed by v), values n/i for i <= sqrt(n) live in `large`
// (indexed by i).

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "hlprime/int_math.hpp"

namespace hlprime {

inline std::int64_t prime_pi_sublinear(std::int64_t n) {
    if (n < 2) return 0;
    const auto un = static_cast<std::uint64_t>(n);
    const std::int64_t root = static_cast<std::int64_t>(isqrt(un));

    std::vector<std::int64_t> small(root + 1);
    std::vector<std::int64_t> large(root + 1);
    for (std::int64_t v = 0; v <= root; ++v) small[v] = v - 1;
    for (std::int64_t i = 1; i <= root; ++i) large[i] = n / i - 1;
    small[0] = 0;

    for (std::int64_t p = 2; p <= root; ++p) {
        if (small[p] == small[p - 1]) continue; // p composite
        const std::int64_t below = small[p - 1];
        const std::int64_t p2 = p * p;

        const std::int64_t lim = std::min(root, n / p2);
        const std::int64_t direct = std::min(lim, root / p);
        for (std::int64_t i = 1; i <= direct; ++i) large[i] -= large[i * p] - below;
        for (std::int64_t i = direct + 1; i <= lim; ++i) large[i] -= small[n / (i * p)] - below;

        for (std::int64_t v = root; v >= p2; --v) small[v] -= small[v / p] - below;
    }
    return large[1];
}

} // namespace hlprime
