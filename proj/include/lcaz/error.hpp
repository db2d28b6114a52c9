#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcaz {

enum class ErrorCode {
    NotPrime,
    OutOfRange,
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    UnknownName,
    NotAFrameCell,
    TooSmall,
    SingularX,
    ShapeMismatch,
    EvenCharacteristic,
    CaseNotCovered,
    Singular,
    NotReversible,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NotAFrameCell: return "NotAFrameCell";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::SingularX: return "SingularX";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::CaseNotCovered: return "CaseNotCovered";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; what()
/// starts with the code name so command-line callers can report it verbatim.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + (detail.empty() ? "" : ": " + detail)),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace lcaz
