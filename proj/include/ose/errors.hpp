#pragma once

#include <stdexcept>
#include <string>

namespace ose {

enum class ErrorKind {
    kZeroVector,
    kDimMismatch,
    kSingularGram,
    kInfeasible,
    kAntipodalPair,
    kDependentRows,
    kInconsistentSystem,
    kDegenerateDirection,
    kUnsupportedCase,
    kNullspaceEmpty,
    kParseError,
    kEmptyFile,
    kInconsistentDim,
    kEmptyTable,
    kEmptyInput,
    kEmptyAfterFiltering,
    kOovToken,
    kClassTooSmall,
    kExhaustedSubsets,
    kSynthesisFailed,
    kEmptyTrainSet,
    kInvalidArgument,
    kIoError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library-wide exception. kind() distinguishes file/environment failures
/// from data and math failures so callers can map them to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures caused by files or the environment rather than
    /// by the data or the math.
    bool is_io() const noexcept {
        switch (kind_) {
        case ErrorKind::kParseError:
        case ErrorKind::kEmptyFile:
        case ErrorKind::kInconsistentDim:
        case ErrorKind::kIoError:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

} // namespace ose
