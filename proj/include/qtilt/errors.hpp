#pragma once

#include <stdexcept>
#include <string>

namespace qtilt {

enum class ErrorKind {
    NotAdmissible,
    NotAssociative,
    NoIdentity,
    RadicalNotNilpotent,
    NotBasic,
    NotProjective,
    NotIdempotent,
    InternalDisagreement,
    NotRadical,
    DSquaredNonzero,
    PreconditionFailed,
    NotSelfOrthogonal,
    NotTilting,
    NotConcentrated,
    DecompositionFailed,
    InvalidInput,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::NotAssociative: return "NotAssociative";
        case ErrorKind::NoIdentity: return "NoIdentity";
        case ErrorKind::RadicalNotNilpotent: return "RadicalNotNilpotent";
        case ErrorKind::NotBasic: return "NotBasic";
        case ErrorKind::NotProjective: return "NotProjective";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::InternalDisagreement: return "InternalDisagreement";
        case ErrorKind::NotRadical: return "NotRadical";
        case ErrorKind::DSquaredNonzero: return "DSquaredNonzero";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::NotSelfOrthogonal: return "NotSelfOrthogonal";
        case ErrorKind::NotTilting: return "NotTilting";
        case ErrorKind::NotConcentrated: return "NotConcentrated";
        case ErrorKind::DecompositionFailed: return "DecompositionFailed";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qtilt
