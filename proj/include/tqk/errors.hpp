#pragma once

#include <stdexcept>
#include <string>

namespace tqk {

enum class ErrorKind {
    NotCoprime,
    ParameterTooSmall,
    NotDivisible,
    NotLatticeCompatible,
    BasisMismatch,
    WindowTooNarrow,
    OutOfInterval,
    ProbeOnCharacteristicSet,
    ProbeOnLatticePoint,
    PhaseFitAmbiguous,
    DegenerateEigenvalue,
    InvalidArgument,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tqk
