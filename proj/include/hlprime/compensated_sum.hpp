// compensated_sum.hpp
// Neumaier's variant of Kahan summation. Long log-sums (10^8 terms) keep
// close to full double precision instead of drifting by ~1e-8 relative.

#pragma once

#include <cmath>

namespace hlprime {

class CompensatedSum {
public:
    CompensatedSum& operator+=(double v) {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    CompensatedSum& operator+=(const CompensatedSum& other) {
        *this += other.sum_;
        *this += other.comp_;
        return *this;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace hlprime
