// prime_counter.hpp
// PrimeCounter: immutable exact prime-counting oracle built to a fixed limit.
//
// Two ways to answer pi(x) for x <= limit:
//   SieveTable  one bit per odd number up to limit plus a running popcount
//               per 512-bit block; queries are O(1). Memory ~ limit/14 bytes.
//   Sublinear   stores only the base primes <= sqrt(limit) and runs the
//               O(x^(3/4)) recursion of sublinear.hpp per query.
//
// Both keep the base primes, which also drive window sieving and the
// Chebyshev sums. A built counter is never mutated, so one instance can be
// queried concurrently from any number of threads.

#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hlprime/compensated_sum.hpp"
#include "hlprime/errors.hpp"
#include "hlprime/int_math.hpp"
#include "hlprime/sieve.hpp"
#include "hlprime/sublinear.hpp"

namespace hlprime {

enum class CountMethod { SieveTable, Sublinear };

inline std::string_view to_string(CountMethod m) {
    return m == CountMethod::SieveTable ? "sieve" : "sublinear";
}

inline CountMethod parse_count_method(std::string_view s) {
    if (s == "sieve" || s == "SieveTable") return CountMethod::SieveTable;
    if (s == "sublinear" || s == "Sublinear") return CountMethod::Sublinear;
    throw std::invalid_argument("unknown counting method '" + std::string(s) +
                                "' (expected sieve or sublinear)");
}

/// Upper bound on memory a counter may allocate.
struct MemoryBudget {
    std::uint64_t bytes = 4096ull << 20;

    static MemoryBudget megabytes(std::uint64_t mb) { return {mb << 20}; }

    /// HL_MEM_BUDGET_MB if set, otherwise 4096 MB.
    static MemoryBudget from_env() {
        if (const char* env = std::getenv("HL_MEM_BUDGET_MB"); env && *env) {
            char* end = nullptr;
            const unsigned long long mb = std::strtoull(env, &end, 10);
            if (end == env || *end != '\0') {
                throw std::invalid_argument(std::string("HL_MEM_BUDGET_MB is not an integer: ") +
                                            env);
            }
            return megabytes(mb);
        }
        return {};
    }
};

struct ChebyshevValues {
    std::int64_t x = 0;
    double theta = 0.0;
    double psi = 0.0;
};

class PrimeCounter {
public:
    static constexpr std::uint64_t kBlockBits = 512;
    static constexpr std::uint64_t kWordsPerBlock = kBlockBits / 64;

    /// Bytes a counter of this limit/method would need.
    static std::uint64_t memory_estimate(std::int64_t limit, CountMethod method) {
        const auto root = static_cast<double>(isqrt(static_cast<std::uint64_t>(limit)));
        // base primes (~ root/log root of uint32) plus one Sublinear query's scratch
        std::uint64_t bytes = static_cast<std::uint64_t>(4.0 * root + 16.0 * root) + 4096;
        if (method == CountMethod::SieveTable) {
            const std::uint64_t odds = static_cast<std::uint64_t>(limit) / 2 + 1;
            const std::uint64_t words = (odds + 63) / 64;
            const std::uint64_t blocks = (words + kWordsPerBlock - 1) / kWordsPerBlock;
            bytes += 8 * words + 8 * blocks;
        }
        return bytes;
    }

    PrimeCounter(std::int64_t limit, CountMethod method, MemoryBudget budget = MemoryBudget::from_env())
        : limit_(limit), method_(method) {
        if (limit < 4) throw std::domain_error("build_counter: limit must be >= 4");
        const std::uint64_t need = memory_estimate(limit, method);
        if (need > budget.bytes) {
            throw ResourceError("counter with limit " + std::to_string(limit) + " (" +
                                std::string(to_string(method)) + ") needs " +
                                std::to_string(need >> 20) + " MB, over the memory budget of " +
                                std::to_string(budget.bytes >> 20) +
                                " MB (HL_MEM_BUDGET_MB)");
        }
        base_primes_ = primes_up_to(isqrt(static_cast<std::uint64_t>(limit)));
        if (method == CountMethod::SieveTable) build_table();
    }

    std::int64_t limit() const noexcept { return limit_; }
    CountMethod method() const noexcept { return method_; }
    std::span<const std::uint32_t> base_primes() const noexcept { return base_primes_; }

    /// Number of primes <= x, exact. 1 <= x <= limit.
    std::int64_t pi(std::int64_t x) const {
        check_arg(x, 1, "pi");
        if (method_ == CountMethod::Sublinear) return prime_pi_sublinear(x);
        return table_pi(x);
    }

    /// Number of primes in (a, b]. 1 <= a <= b <= limit.
    std::int64_t count_window(std::int64_t a, std::int64_t b) const {
        check_arg(a, 1, "count_window");
        check_arg(b, 1, "count_window");
        if (a > b) throw std::domain_error("count_window: need a <= b");
        if (a == b) return 0;
        if (method_ == CountMethod::SieveTable) return table_pi(b) - table_pi(a);
        if (b - a <= kDirectWindow) {
            return count_primes_segmented(static_cast<std::uint64_t>(a) + 1,
                                          static_cast<std::uint64_t>(b), base_primes_);
        }
        return prime_pi_sublinear(b) - prime_pi_sublinear(a);
    }

    /// Calls fn(p) for each prime p in [lo, hi] ascending; hi <= limit.
    template <typename Fn>
    void for_each_prime(std::int64_t lo, std::int64_t hi, Fn&& fn) const {
        check_arg(hi, 1, "for_each_prime");
        if (lo < 2) lo = 2;
        if (lo > hi) return;
        if (method_ == CountMethod::Sublinear) {
            for_each_prime_segmented(static_cast<std::uint64_t>(lo),
                                     static_cast<std::uint64_t>(hi), base_primes_, fn);
            return;
        }
        if (lo == 2) fn(std::uint64_t{2});
        const std::uint64_t first = (std::max<std::int64_t>(lo, 3) - 3 + 1) / 2; // odd >= lo
        if (hi < 3) return;
        const std::uint64_t last = (static_cast<std::uint64_t>(hi) - 3) / 2;
        for (std::uint64_t w = first / 64; w <= last / 64; ++w) {
            std::uint64_t word = bits_[w];
            if (w == first / 64) word &= ~std::uint64_t{0} << (first % 64);
            if (w == last / 64 && last % 64 != 63) word &= (std::uint64_t{1} << (last % 64 + 1)) - 1;
            while (word) {
                const int b = std::countr_zero(word);
                fn(2 * (w * 64 + static_cast<std::uint64_t>(b)) + 3);
                word &= word - 1;
            }
        }
    }

    /// theta(x) = sum_{p<=x} log p, psi(x) = sum_{p^k<=x} log p. 2 <= x <= limit.
    ChebyshevValues chebyshev(std::int64_t x) const {
        check_arg(x, 2, "chebyshev");
        CompensatedSum theta;
        for_each_prime(2, x, [&](std::uint64_t p) { theta += std::log(static_cast<double>(p)); });

        // psi - theta: log p once for each power p^k <= x with k >= 2
        CompensatedSum powers;
        const auto ux = static_cast<std::uint64_t>(x);
        for (const std::uint64_t p : base_primes_) {
            if (p * p > ux) break;
            const double lp = std::log(static_cast<double>(p));
            for (std::uint64_t q = p * p;; q *= p) {
                powers += lp;
                if (q > ux / p) break;
            }
        }
        CompensatedSum psi = theta;
        psi += powers;
        return {x, theta.value(), psi.value()};
    }

private:
    // Windows no longer than this are sieved directly on the Sublinear path.
    static constexpr std::int64_t kDirectWindow = std::int64_t{1} << 22;

    void check_arg(std::int64_t x, std::int64_t min, const char* op) const {
        if (x > limit_) {
            throw std::out_of_range(std::string(op) + ": argument " + std::to_string(x) +
                                    " exceeds counter limit " + std::to_string(limit_));
        }
        if (x < min) {
            throw std::domain_error(std::string(op) + ": argument " + std::to_string(x) +
                                    " below minimum " + std::to_string(min));
        }
    }

    // bit i <-> odd number 2i+3
    void build_table() {
        const std::uint64_t odds = (static_cast<std::uint64_t>(limit_) - 3) / 2 + 1;
        const std::uint64_t words = (odds + 63) / 64;
        bits_.assign(words, ~std::uint64_t{0});
        if (odds % 64) bits_.back() &= (std::uint64_t{1} << (odds % 64)) - 1;

        constexpr std::uint64_t kSegBits = std::uint64_t{1} << 21;
        for (std::uint64_t seg_lo = 0; seg_lo < odds; seg_lo += kSegBits) {
            const std::uint64_t seg_hi = std::min(odds, seg_lo + kSegBits); // exclusive
            for (const std::uint64_t p : base_primes_) {
                if (p == 2) continue;
                // first bit >= seg_lo that is an odd multiple of p, starting at p^2
                std::uint64_t i = (p * p - 3) / 2;
                if (i < seg_lo) {
                    const std::uint64_t n_lo = 2 * seg_lo + 3;
                    std::uint64_t m = (n_lo + p - 1) / p * p;
                    if (m % 2 == 0) m += p;
                    i = (m - 3) / 2;
                }
                for (; i < seg_hi; i += p) bits_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
            }
        }

        const std::uint64_t blocks = (words + kWordsPerBlock - 1) / kWordsPerBlock;
        block_prefix_.resize(blocks);
        std::uint64_t running = 0;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            block_prefix_[b] = running;
            for (std::uint64_t w = b * kWordsPerBlock; w < std::min(words, (b + 1) * kWordsPerBlock); ++w) {
                running += static_cast<std::uint64_t>(std::popcount(bits_[w]));
            }
        }
    }

    std::int64_t table_pi(std::int64_t x) const {
        if (x < 2) return 0;
        if (x < 3) return 1;
        const std::uint64_t i = (static_cast<std::uint64_t>(x) - 3) / 2; // last odd <= x
        const std::uint64_t w = i / 64;
        std::uint64_t n = block_prefix_[w / kWordsPerBlock];
        for (std::uint64_t k = (w / kWordsPerBlock) * kWordsPerBlock; k < w; ++k) {
            n += static_cast<std::uint64_t>(std::popcount(bits_[k]));
        }
        const unsigned r = static_cast<unsigned>(i % 64);
        const std::uint64_t mask = r == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (r + 1)) - 1;
        n += static_cast<std::uint64_t>(std::popcount(bits_[w] & mask));
        return static_cast<std::int64_t>(n) + 1; // + the prime 2
    }

    std::int64_t limit_;
    CountMethod method_;
    std::vector<std::uint32_t> base_primes_;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> block_prefix_;
};

/// Builds a counter answering exact pi(x) for 2 <= x <= limit.
inline PrimeCounter build_counter(std::int64_t limit, CountMethod method,
                                  MemoryBudget budget = MemoryBudget::from_env()) {
    return PrimeCounter(limit, method, budget);
}

} // namespace hlprime
