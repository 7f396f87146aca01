// oracle.hpp
// Slow reference prime counting by trial division. Shares no code with the
// sieve or sublinear paths; its only job is to check them.

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hlprime {

inline constexpr std::int64_t kOracleCap = 100'000'000;

namespace oracle_detail {

// Odd primes up to 10^4 found by trial division with odd divisors; enough
// to decide every n <= 10^8.
inline const std::vector<std::uint32_t>& odd_divisors() {
    static const std::vector<std::uint32_t> divisors = [] {
        std::vector<std::uint32_t> out;
        for (std::uint32_t n = 3; n <= 10'000; n += 2) {
            bool prime = true;
            for (std::uint32_t d = 3; d * d <= n; d += 2) {
                if (n % d == 0) {
                    prime = false;
                    break;
                }
            }
            if (prime) out.push_back(n);
        }
        return out;
    }();
    return divisors;
}

inline bool is_odd_prime(std::uint32_t n, const std::vector<std::uint32_t>& divisors) {
    for (const std::uint32_t d : divisors) {
        if (d * d > n) return true;
        if (n % d == 0) return false;
    }
    return true;
}

} // namespace oracle_detail

/// Primality by trial division, n <= 10^8.
inline bool is_prime_trial(std::int64_t n) {
    if (n > kOracleCap) throw std::domain_error("is_prime_trial: n above 10^8");
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    return oracle_detail::is_odd_prime(static_cast<std::uint32_t>(n), oracle_detail::odd_divisors());
}

/// pi(x) by trial division of every integer <= x. x <= 10^8.
inline std::int64_t pi_oracle(std::int64_t x) {
    if (x > kOracleCap) throw std::domain_error("pi_oracle: x above the 10^8 cap");
    if (x < 2) return 0;
    const auto& divisors = oracle_detail::odd_divisors();
    std::int64_t count = 1;
    for (std::int64_t n = 3; n <= x; n += 2) {
        count += oracle_detail::is_odd_prime(static_cast<std::uint32_t>(n), divisors);
    }
    return count;
}

/// pi_oracle at many points with one trial-division pass up to max(points).
/// Output order matches input order.
inline std::vector<std::int64_t> pi_oracle_many(std::span<const std::int64_t> points) {
    std::vector<std::int64_t> out(points.size(), 0);
    if (points.empty()) return out;
    std::vector<std::size_t> order(points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
    if (points[order.back()] > kOracleCap) {
        throw std::domain_error("pi_oracle_many: point above the 10^8 cap");
    }

    const auto& divisors = oracle_detail::odd_divisors();
    std::int64_t n = 1;     // all integers <= n have been tested
    std::int64_t count = 0; // primes <= n
    for (const std::size_t idx : order) {
        const std::int64_t target = points[idx];
        while (n < target) {
            ++n;
            if (n == 2) {
                ++count;
            } else if (n % 2 == 1 && oracle_detail::is_odd_prime(static_cast<std::uint32_t>(n), divisors)) {
                ++count;
            }
        }
        out[idx] = target < 2 ? 0 : count;
    }
    return out;
}

} // namespace hlprime
