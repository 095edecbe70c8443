#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legendre {

enum class ErrorKind {
    ConvexityViolation,
    PositivityViolation,
    BadParameter,
    ZeroVector,
    NotUnit,
    NoConvergence,
    OutOfDomain,
    SingularPoint,
    LimitsDisagree,
    LegendreViolation,
    DegenerateFrame,
    NotAFront,
    NotClosed,
    MethodsDisagree,
    PreconditionViolated,
    KappaVanishes,
    RhoDegenerate,
    NotAnIsometry,
    DegenerateLine,
    ParseError,
    EvalError,
    ConfigError,
    IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConvexityViolation: return "ConvexityViolation";
        case ErrorKind::PositivityViolation: return "PositivityViolation";
        case ErrorKind::BadParameter: return "BadParameter";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NotUnit: return "NotUnit";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::SingularPoint: return "SingularPoint";
        case ErrorKind::LimitsDisagree: return "LimitsDisagree";
        case ErrorKind::LegendreViolation: return "LegendreViolation";
        case ErrorKind::DegenerateFrame: return "DegenerateFrame";
        case ErrorKind::NotAFront: return "NotAFront";
        case ErrorKind::NotClosed: return "NotClosed";
        case ErrorKind::MethodsDisagree: return "MethodsDisagree";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::KappaVanishes: return "KappaVanishes";
        case ErrorKind::RhoDegenerate: return "RhoDegenerate";
        case ErrorKind::NotAnIsometry: return "NotAnIsometry";
        case ErrorKind::DegenerateLine: return "DegenerateLine";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::EvalError: return "EvalError";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

/// All library failures are reported through this type; kind() selects the
/// CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace legendre
