#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace iqy {

enum class ErrorCode {
    DegreeCapExceeded,
    DomainError,
    NegativeDiscriminant,
    NegativeRadicand,
    DegenerateP,
    ZeroKappa,
    EmptyWindow,
    NoRoot,
    ExponentNotReal,
    EnergyAtThreshold,
    NonpositiveR,
    SeedUndefined,
    NoRootInWindow,
    NodeMismatch,
    DegenerateDenominator,
    InvalidParameter,
    ConfigError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so callers
/// (the CLI in particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace iqy
