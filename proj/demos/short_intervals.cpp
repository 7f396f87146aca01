// Window statistics near 10^6: the 2h/log h bound and the log^r x ratio.

#include <cstdio>

#include "hlprime/hlprime.hpp"

int main() {
    using namespace hlprime;
    const PrimeCounter counter = build_counter(2'000'000, CountMethod::SieveTable);

    for (const std::int64_t h : {2, 10, 100, 1000}) {
        const MvBoundRecord rec = mv_bound_check(counter, 1'000'000, h);
        std::printf("h=%-5lld primes=%-4lld bound=%9.4f %s\n", static_cast<long long>(h),
                    static_cast<long long>(rec.lhs), rec.rhs, rec.holds ? "holds" : "FAILS");
    }
    for (const double r : {1.5, 2.0, 3.0}) {
        const MaierRecord m = maier_ratio(counter, 1'000'000, r);
        std::printf("r=%.1f h=%-5lld count=%-4lld ratio=%.4f e^gamma/r=%.4f\n", r, static_cast<long long>(m.h),
                    static_cast<long long>(m.count), m.ratio, m.reference);
    }

    const CensusReport census = oscillation_census(counter, 2.0, 1'000, 100'000, 1);
    std::printf("census r=2 on [1e3, 1e5]: less=%lld equal=%lld greater=%lld\n",
                static_cast<long long>(census.n_less), static_cast<long long>(census.n_equal),
                static_cast<long long>(census.n_greater));
}
