#pragma once

#include <algorithm>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcc {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
    PoleAt,
    BadContext,
    HalfPeriodSingularity,
    UnsupportedEquation,
    CoordinateSingularity,
    NoConvergence,
    MapSingularity,
    BranchCut,
    TwoBodyCollision,
    TooSparse,
    ScheduleMismatch,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Relative distance with a floor of one on the scale, used by every check.
inline double rel_err(Complex a, Complex b) {
    double scale = std::max(1.0, std::abs(b));
    return std::abs(a - b) / scale;
}

} // namespace pcc
