#include "scg/error.hpp"

namespace scg {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownVertex: return "UnknownVertex";
        case ErrorCode::NotSurjective: return "NotSurjective";
        case ErrorCode::NotBornologous: return "NotBornologous";
        case ErrorCode::NotACover: return "NotACover";
        case ErrorCode::NoBridge: return "NoBridge";
        case ErrorCode::UnsupportedCover: return "UnsupportedCover";
        case ErrorCode::UnsupportedRegion: return "UnsupportedRegion";
        case ErrorCode::IllegalTailKind: return "IllegalTailKind";
        case ErrorCode::SpaceMismatch: return "SpaceMismatch";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::GuardUnproved: return "GuardUnproved";
        case ErrorCode::NotOpposite: return "NotOpposite";
        case ErrorCode::EmptyMergeWindow: return "EmptyMergeWindow";
        case ErrorCode::TailsNotEqual: return "TailsNotEqual";
        case ErrorCode::JunctionUnverified: return "JunctionUnverified";
        case ErrorCode::ObjectsNotComposable: return "ObjectsNotComposable";
        case ErrorCode::TailsNotControlled: return "TailsNotControlled";
        case ErrorCode::NoAtlasMember: return "NoAtlasMember";
        case ErrorCode::CertificateInvalid: return "CertificateInvalid";
        case ErrorCode::MoveInapplicable: return "MoveInapplicable";
        case ErrorCode::CoverMismatch: return "CoverMismatch";
        case ErrorCode::ResourceCap: return "ResourceCap";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

} // namespace scg
