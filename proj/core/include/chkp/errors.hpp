#pragma once

#include <stdexcept>
#include <string>

namespace chkp {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define CHKP_DEFINE_ERROR(NAME)            \
    class NAME : public Error {            \
      public:                              \
        using Error::Error;                \
    };

CHKP_DEFINE_ERROR(ParameterError)        // invalid physical parameters (e.g. c <= 2*kappa)
CHKP_DEFINE_ERROR(ResolutionError)       // grid cannot resolve the requested object
CHKP_DEFINE_ERROR(NonzeroMeanError)      // d_x^{-2} applied to data with a nonzero x-mean
CHKP_DEFINE_ERROR(ZeroFrequencyError)    // k = 0 passed where the transverse term needs k != 0
CHKP_DEFINE_ERROR(ConvergenceError)      // dense eigensolve or iteration failed to converge
CHKP_DEFINE_ERROR(NoUnstableModeError)   // no integer multiple of k0 lies in the unstable band
CHKP_DEFINE_ERROR(TruncationError)       // mode-stack support does not fit the requested range
CHKP_DEFINE_ERROR(StabilityError)        // time step outside the integrator stability bound
CHKP_DEFINE_ERROR(BlowupError)           // solution left the bounded-amplitude regime
CHKP_DEFINE_ERROR(ConstraintError)       // zero-x-mean constraint violated on a transverse mode
CHKP_DEFINE_ERROR(InsufficientDataError) // not enough successful runs for a fit
CHKP_DEFINE_ERROR(IoError)               // file input/output failure

#undef CHKP_DEFINE_ERROR

} // namespace chkp
