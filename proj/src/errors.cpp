#include "tqk/errors.hpp"

namespace tqk {

const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ParameterTooSmall: return "ParameterTooSmall";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NotLatticeCompatible: return "NotLatticeCompatible";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorKind::OutOfInterval: return "OutOfInterval";
    case ErrorKind::ProbeOnCharacteristicSet: return "ProbeOnCharacteristicSet";
    case ErrorKind::ProbeOnLatticePoint: return "ProbeOnLatticePoint";
    case ErrorKind::PhaseFitAmbiguous: return "PhaseFitAmbiguous";
    case ErrorKind::DegenerateEigenvalue: return "DegenerateEigenvalue";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace tqk
