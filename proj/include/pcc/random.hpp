#pragma once

#include <cstdint>
#include <random>

#include "pcc/common.hpp"

namespace pcc {

// mt19937_64 bits turned into doubles by hand so that sampled points (and
// therefore report JSON) do not depend on the standard library's distributions.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    Complex box(double re_lo, double re_hi, double im_lo, double im_hi) {
        double re = uniform(re_lo, re_hi);
        double im = uniform(im_lo, im_hi);
        return {re, im};
    }

private:
    std::mt19937_64 gen_;
};

} // namespace pcc
