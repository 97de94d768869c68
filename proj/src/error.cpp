#include "bincs/error.hpp"

namespace bincs {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPrimePower: return "NotPrimePower";
        case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::LogOfZero: return "LogOfZero";
        case ErrorKind::PowerOutOfRange: return "PowerOutOfRange";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::TargetTooLarge: return "TargetTooLarge";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::MalformedAlist: return "MalformedAlist";
        case ErrorKind::NotOddPrime: return "NotOddPrime";
        case ErrorKind::ZeroBeta: return "ZeroBeta";
        case ErrorKind::NotRegular: return "NotRegular";
        case ErrorKind::GirthViolation: return "GirthViolation";
        case ErrorKind::ZeroColumn: return "ZeroColumn";
        case ErrorKind::TooFewColumns: return "TooFewColumns";
        case ErrorKind::BadShape: return "BadShape";
        case ErrorKind::BadParams: return "BadParams";
        case ErrorKind::DegenerateWeight: return "DegenerateWeight";
        case ErrorKind::BadMu: return "BadMu";
        case ErrorKind::NoFeasibleBase: return "NoFeasibleBase";
        case ErrorKind::BadK: return "BadK";
        case ErrorKind::SingularSupport: return "SingularSupport";
    }
    return "Unknown";
}

}  // namespace bincs
