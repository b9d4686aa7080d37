#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ahp {

/// Engine error codes. Shared by validation diagnostics, thrown errors and the HTTP layer.
enum class ErrorCode {
    // structural / validation
    MissingPair,
    DuplicatePair,
    ConflictingPair,
    SelfPair,
    UnknownName,
    NonPositiveValue,
    ValueOutOfScale,
    OffScaleValue,
    TooFewAlternatives,
    DuplicateAlternative,
    DuplicateChild,
    EmptyName,
    EmptyChildren,
    BadVersion,
    PlaceholderJudgment,
    // priority math
    UnknownElement,
    BadOrder,
    NoConvergence,
    // navigation / what-if
    UnknownPath,
    UnknownPair,
    BadValue,
    InvalidModel,
    // catalog
    EmptySelection,
    UnknownCategory,
    UnknownAttribute,
    UnknownAlternative,
    BadMetric,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingPair: return "MISSING_PAIR";
        case ErrorCode::DuplicatePair: return "DUPLICATE_PAIR";
        case ErrorCode::ConflictingPair: return "CONFLICTING_PAIR";
        case ErrorCode::SelfPair: return "SELF_PAIR";
        case ErrorCode::UnknownName: return "UNKNOWN_NAME";
        case ErrorCode::NonPositiveValue: return "NON_POSITIVE_VALUE";
        case ErrorCode::ValueOutOfScale: return "VALUE_OUT_OF_SCALE";
        case ErrorCode::OffScaleValue: return "OFF_SCALE_VALUE";
        case ErrorCode::TooFewAlternatives: return "TOO_FEW_ALTERNATIVES";
        case ErrorCode::DuplicateAlternative: return "DUPLICATE_ALTERNATIVE";
        case ErrorCode::DuplicateChild: return "DUPLICATE_CHILD";
        case ErrorCode::EmptyName: return "EMPTY_NAME";
        case ErrorCode::EmptyChildren: return "EMPTY_CHILDREN";
        case ErrorCode::BadVersion: return "BAD_VERSION";
        case ErrorCode::PlaceholderJudgment: return "PLACEHOLDER_JUDGMENT";
        case ErrorCode::UnknownElement: return "UNKNOWN_ELEMENT";
        case ErrorCode::BadOrder: return "BAD_ORDER";
        case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
        case ErrorCode::UnknownPath: return "UNKNOWN_PATH";
        case ErrorCode::UnknownPair: return "UNKNOWN_PAIR";
        case ErrorCode::BadValue: return "BAD_VALUE";
        case ErrorCode::InvalidModel: return "INVALID_MODEL";
        case ErrorCode::EmptySelection: return "EMPTY_SELECTION";
        case ErrorCode::UnknownCategory: return "UNKNOWN_CATEGORY";
        case ErrorCode::UnknownAttribute: return "UNKNOWN_ATTRIBUTE";
        case ErrorCode::UnknownAlternative: return "UNKNOWN_ALTERNATIVE";
        case ErrorCode::BadMetric: return "BAD_METRIC";
    }
    return "UNKNOWN";
}

/// Base exception for everything the engine throws. `path()` is the slash-joined node path
/// the failure refers to, empty when not node-specific.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string path = {})
        : std::runtime_error(std::move(message)), code_(code), path_(std::move(path)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }

private:
    ErrorCode code_;
    std::string path_;
};

} // namespace ahp
