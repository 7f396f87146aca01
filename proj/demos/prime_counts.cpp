// Prints pi, theta, psi and li at powers of ten, with both counting methods.

#include <cmath>
#include <cstdio>

#include "hlprime/hlprime.hpp"

int main() {
    using namespace hlprime;
    const std::int64_t limit = 100'000'000;
    const PrimeCounter table = build_counter(limit, CountMethod::SieveTable);
    const PrimeCounter sublinear = build_counter(limit, CountMethod::Sublinear);

    std::printf("%10s %10s %10s %16s %16s %16s\n", "x", "pi", "pi(sub)", "theta", "psi", "li");
    for (std::int64_t x = 10; x <= limit; x *= 10) {
        const ChebyshevValues cv = table.chebyshev(x);
        std::printf("%10lld %10lld %10lld %16.6f %16.6f %16.6f\n", static_cast<long long>(x),
                    static_cast<long long>(table.pi(x)), static_cast<long long>(sublinear.pi(x)), cv.theta,
                    cv.psi, li(static_cast<double>(x)));
    }
}
