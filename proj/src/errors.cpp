#include "ose/errors.hpp"

namespace ose {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kSingularGram: return "SingularGram";
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kAntipodalPair: return "AntipodalPair";
    case ErrorKind::kDependentRows: return "DependentRows";
    case ErrorKind::kInconsistentSystem: return "InconsistentSystem";
    case ErrorKind::kDegenerateDirection: return "DegenerateDirection";
    case ErrorKind::kUnsupportedCase: return "UnsupportedCase";
    case ErrorKind::kNullspaceEmpty: return "NullspaceEmpty";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kEmptyFile: return "EmptyFile";
    case ErrorKind::kInconsistentDim: return "InconsistentDim";
    case ErrorKind::kEmptyTable: return "EmptyTable";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kEmptyAfterFiltering: return "EmptyAfterFiltering";
    case ErrorKind::kOovToken: return "OOVToken";
    case ErrorKind::kClassTooSmall: return "ClassTooSmall";
    case ErrorKind::kExhaustedSubsets: return "ExhaustedSubsets";
    case ErrorKind::kSynthesisFailed: return "SynthesisFailed";
    case ErrorKind::kEmptyTrainSet: return "EmptyTrainSet";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kIoError: return "IoError";
    }
    return "UnknownError";
}

} // namespace ose
