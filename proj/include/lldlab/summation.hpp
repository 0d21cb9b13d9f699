#pragma once

#include <cmath>
#include <complex>

namespace lldlab {

// Neumaier variant of compensated summation: the correction also catches the
// case where the incoming term is larger than the running sum.
template <class T>
struct CompensatedSum;

template <>
struct CompensatedSum<double> {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

template <>
struct CompensatedSum<std::complex<double>> {
    CompensatedSum<double> re;
    CompensatedSum<double> im;

    void add(std::complex<double> z) {
        re.add(z.real());
        im.add(z.imag());
    }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace lldlab
