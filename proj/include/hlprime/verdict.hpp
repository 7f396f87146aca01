// verdict.hpp
// One exact test of pi(x+y) < pi(x) + pi(y).

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hlprime/int_math.hpp"
#include "hlprime/prime_counter.hpp"

namespace hlprime {

/// Sign of the margin pi(x) + pi(y) - pi(x+y).
enum class Relation { StrictLess, Equal, Greater };

/// CSV/JSONL token: LESS, EQUAL, GREATER.
inline std::string_view to_token(Relation r) {
    switch (r) {
    case Relation::StrictLess: return "LESS";
    case Relation::Equal: return "EQUAL";
    case Relation::Greater: return "GREATER";
    }
    return "?";
}

inline Relation parse_relation(std::string_view token) {
    if (token == "LESS") return Relation::StrictLess;
    if (token == "EQUAL") return Relation::Equal;
    if (token == "GREATER") return Relation::Greater;
    throw std::invalid_argument("unknown relation token '" + std::string(token) + "'");
}

inline Relation classify(std::int64_t pi_x, std::int64_t pi_y, std::int64_t pi_xy) {
    const std::int64_t margin = pi_x + pi_y - pi_xy;
    if (margin > 0) return Relation::StrictLess;
    if (margin == 0) return Relation::Equal;
    return Relation::Greater;
}

struct IntervalVerdict {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t pi_x = 0;
    std::int64_t pi_y = 0;
    std::int64_t pi_xy = 0;
    std::int64_t margin = 0;
    Relation relation = Relation::Equal;

    friend bool operator==(const IntervalVerdict&, const IntervalVerdict&) = default;
};

inline IntervalVerdict make_verdict(std::int64_t x, std::int64_t y, std::int64_t pi_x,
                                    std::int64_t pi_y, std::int64_t pi_xy) {
    return {x, y, pi_x, pi_y, pi_xy, pi_x + pi_y - pi_xy, classify(pi_x, pi_y, pi_xy)};
}

/// Exact verdict for (x, y); x, y >= 2 and x + y <= counter.limit().
inline IntervalVerdict evaluate(const PrimeCounter& counter, std::int64_t x, std::int64_t y) {
    if (x < 2 || y < 2) {
        throw std::domain_error("evaluate: need x >= 2 and y >= 2, got (" + std::to_string(x) +
                                ", " + std::to_string(y) + ")");
    }
    const std::int64_t sum = checked_add(x, y);
    if (sum > counter.limit()) {
        throw std::out_of_range("evaluate: x + y = " + std::to_string(sum) +
                                " exceeds counter limit " + std::to_string(counter.limit()) +
                                " at (x=" + std::to_string(x) + ", y=" + std::to_string(y) + ")");
    }
    return make_verdict(x, y, counter.pi(x), counter.pi(y), counter.pi(sum));
}

} // namespace hlprime
