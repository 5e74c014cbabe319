#pragma once

#include <cmath>

namespace fcraney {

// Neumaier variant of Kahan summation: tracks a running compensation term so
// long alternating series keep close to full double precision.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double term) {
        double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            compensation += (sum - t) + term;
        else
            compensation += (term - t) + sum;
        sum = t;
    }

    double value() const { return sum + compensation; }
};

}  // namespace fcraney
