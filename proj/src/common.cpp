#include "pcc/common.hpp"

namespace pcc {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::BadContext: return "BadContext";
    case ErrorKind::HalfPeriodSingularity: return "HalfPeriodSingularity";
    case ErrorKind::UnsupportedEquation: return "UnsupportedEquation";
    case ErrorKind::CoordinateSingularity: return "CoordinateSingularity";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::MapSingularity: return "MapSingularity";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::TwoBodyCollision: return "TwoBodyCollision";
    case ErrorKind::TooSparse: return "TooSparse";
    case ErrorKind::ScheduleMismatch: return "ScheduleMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace pcc
