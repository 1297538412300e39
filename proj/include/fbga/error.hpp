#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fbga {

enum class ErrorKind {
    MalformedInput,
    StructureViolation,
    UnknownHalfEdge,
    UnknownEdge,
    SIViolation,
    NotAnOrbit,
    NotSkewBG,
    NotStable,
    SizeLimitExceeded,
    UnsupportedAction,
    UnsupportedCase,
    PreconditionFailed,
    NoEvenCycle,
    CapMismatch,
};

const char* kind_name(ErrorKind k);

// Domain error. Carries every violation found, not just the first one.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string what, std::vector<std::string> violations = {});

    ErrorKind kind() const { return kind_; }
    const std::vector<std::string>& violations() const { return violations_; }

private:
    ErrorKind kind_;
    std::vector<std::string> violations_;
};

}  // namespace fbga
