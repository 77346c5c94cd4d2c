#include "shapesig/error.hpp"

namespace shapesig {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::EmptyShape: return "EmptyShape";
    case ErrorCode::DegenerateShape: return "DegenerateShape";
    case ErrorCode::InvalidSampleCount: return "InvalidSampleCount";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::DegenerateDescriptor: return "DegenerateDescriptor";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::MissingRelevant: return "MissingRelevant";
    case ErrorCode::UnbalancedClasses: return "UnbalancedClasses";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace shapesig
