#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistfuse {

enum class ErrorCode {
    InvalidArgument,
    UnsupportedType,
    MixedDatum,
    NotAffine,
    NotSublattice,
    RankTooLarge,
    NonTermination,
    DimensionCap,
    NegativeMultiplicity,
    NoBuiltinAutomorphism,
    InvalidAutomorphism,
    UnrecognizedFoldedType,
    NotInteger,
    NegativeCoefficient,
    UnsupportedSectorPattern,
    SectorRuleViolation,
    UnsupportedOrder,
    MethodMismatch,
};

inline constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedType: return "UnsupportedType";
    case ErrorCode::MixedDatum: return "MixedDatum";
    case ErrorCode::NotAffine: return "NotAffine";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::NegativeMultiplicity: return "NegativeMultiplicity";
    case ErrorCode::NoBuiltinAutomorphism: return "NoBuiltinAutomorphism";
    case ErrorCode::InvalidAutomorphism: return "InvalidAutomorphism";
    case ErrorCode::UnrecognizedFoldedType: return "UnrecognizedFoldedType";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorCode::UnsupportedSectorPattern: return "UnsupportedSectorPattern";
    case ErrorCode::SectorRuleViolation: return "SectorRuleViolation";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::MethodMismatch: return "MethodMismatch";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// Errors that indicate a failed numerical or cross-method check rather than bad input.
    bool is_check_failure() const noexcept {
        return code_ == ErrorCode::NotInteger || code_ == ErrorCode::NegativeCoefficient ||
               code_ == ErrorCode::MethodMismatch || code_ == ErrorCode::NegativeMultiplicity ||
               code_ == ErrorCode::NotSublattice || code_ == ErrorCode::NonTermination ||
               code_ == ErrorCode::UnrecognizedFoldedType;
    }

private:
    ErrorCode code_;
};

} // namespace twistfuse
