#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shapesig {

enum class ErrorCode {
    EmptyImage,
    EmptyShape,
    DegenerateShape,
    InvalidSampleCount,
    InvalidStep,
    DegenerateDescriptor,
    EmptyDataset,
    KindMismatch,
    DimensionMismatch,
    FormatError,
    IoError,
    InvalidCounts,
    MissingRelevant,
    UnbalancedClasses,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// All recoverable failures of the library surface as this type; the code is
// what callers branch on, the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace shapesig
