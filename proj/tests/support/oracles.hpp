#pragma once

// Slow, independent reference computations used only by tests.

#include <functional>

#include "pcc/common.hpp"

namespace oracle {

using pcc::Complex;

// P(u) by the symmetric double lattice sum over |m|,|n| <= R, with Richardson
// extrapolation between R/2 and R (the symmetric box kills odd tail terms, the
// remainder goes like R^-2).
inline Complex wp_lattice_sum(Complex u, Complex tau, int R = 200) {
    auto box = [&](int r) {
        Complex s = 1.0 / (u * u);
        for (int m = -r; m <= r; ++m)
            for (int n = -r; n <= r; ++n) {
                if (m == 0 && n == 0)
                    continue;
                Complex w = double(m) + double(n) * tau;
                Complex d = u - w;
                s += 1.0 / (d * d) - 1.0 / (w * w);
            }
        return s;
    };
    Complex half = box(R / 2);
    Complex full = box(R);
    return (4.0 * full - half) / 3.0;
}

// Jacobi triple product for sum_n exp(pi i tau n^2 + 2 pi i n u)
inline Complex theta_product(Complex u, Complex tau, int terms = 60) {
    Complex q = std::exp(pcc::kPi * pcc::kI * tau);
    Complex z = std::exp(2.0 * pcc::kPi * pcc::kI * u);
    Complex out = 1.0;
    Complex q2m = 1.0;
    Complex qodd = q;
    for (int m = 1; m <= terms; ++m) {
        q2m *= q * q;
        out *= (1.0 - q2m) * (1.0 + qodd * z) * (1.0 + qodd / z);
        qodd *= q * q;
    }
    return out;
}

// five-point first derivative
inline Complex d1(const std::function<Complex(Complex)>& f, Complex x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h);
}

inline Complex central(const std::function<Complex(Complex)>& f, Complex x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline Complex second_central(const std::function<Complex(Complex)>& f, Complex x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

} // namespace oracle
