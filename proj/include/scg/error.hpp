#pragma once

#include <stdexcept>
#include <string>

namespace scg {

enum class ErrorCode {
    UnknownVertex,
    NotSurjective,
    NotBornologous,
    NotACover,
    NoBridge,
    UnsupportedCover,
    UnsupportedRegion,
    IllegalTailKind,
    SpaceMismatch,
    LengthMismatch,
    GuardUnproved,
    NotOpposite,
    EmptyMergeWindow,
    TailsNotEqual,
    JunctionUnverified,
    ObjectsNotComposable,
    TailsNotControlled,
    NoAtlasMember,
    CertificateInvalid,
    MoveInapplicable,
    CoverMismatch,
    ResourceCap,
    ParseError,
    ValidationError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace scg
