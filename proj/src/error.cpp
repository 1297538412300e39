#include "fbga/error.hpp"

namespace fbga {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::UnknownHalfEdge: return "UnknownHalfEdge";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::SIViolation: return "SIViolation";
    case ErrorKind::NotAnOrbit: return "NotAnOrbit";
    case ErrorKind::NotSkewBG: return "NotSkewBG";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorKind::UnsupportedAction: return "UnsupportedAction";
    case ErrorKind::UnsupportedCase: return "UnsupportedCase";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NoEvenCycle: return "NoEvenCycle";
    case ErrorKind::CapMismatch: return "CapMismatch";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, std::string what, std::vector<std::string> violations)
    : std::runtime_error(std::move(what)), kind_(kind), violations_(std::move(violations)) {}

}  // namespace fbga
