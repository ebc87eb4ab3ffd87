#include "iqy/errors.hpp"

namespace iqy {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
        case ErrorCode::NegativeRadicand: return "NegativeRadicand";
        case ErrorCode::DegenerateP: return "DegenerateP";
        case ErrorCode::ZeroKappa: return "ZeroKappa";
        case ErrorCode::EmptyWindow: return "EmptyWindow";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::ExponentNotReal: return "ExponentNotReal";
        case ErrorCode::EnergyAtThreshold: return "EnergyAtThreshold";
        case ErrorCode::NonpositiveR: return "NonpositiveR";
        case ErrorCode::SeedUndefined: return "SeedUndefined";
        case ErrorCode::NoRootInWindow: return "NoRootInWindow";
        case ErrorCode::NodeMismatch: return "NodeMismatch";
        case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace iqy
