#include "deflab/error.hpp"

namespace deflab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::UndefinedOperatingPoint: return "undefined operating point";
        case ErrorKind::ResonanceSingularity: return "resonance singularity";
        case ErrorKind::InfeasibleDispatch: return "infeasible dispatch";
        case ErrorKind::NonHermitian: return "non-Hermitian matrix";
        case ErrorKind::VoltageCollapse: return "voltage collapse";
        case ErrorKind::NonFiniteState: return "non-finite state";
        case ErrorKind::Schema: return "schema error";
        case ErrorKind::Config: return "config error";
    }
    return "unknown";
}

}  // namespace deflab
