#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hfc {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Denominator polynomial is identically zero.
struct ZeroDenominatorError : Error {
    using Error::Error;
};

/// Frequency response requested at (or numerically on top of) a pole.
struct PoleOnGridError : Error {
    using Error::Error;
};

/// Operation requires a proper rational function (deg num <= deg den).
struct ImproperSystemError : Error {
    using Error::Error;
};

/// Bilinear map is singular: continuous pole at s = 2/dt.
struct TustinSingularityError : Error {
    using Error::Error;
};

/// A filter or model was fed NaN/Inf.
struct NonFiniteInputError : Error {
    using Error::Error;
};

/// Filter degree outside the supported range.
struct DegreeOutOfRangeError : Error {
    using Error::Error;
};

/// Degree/cutoff search found no filter meeting both band targets.
struct NoFeasibleFilterError : Error {
    using Error::Error;
};

/// Gain search found no stabilizing controller.
struct UnstableResultError : Error {
    using Error::Error;
};

/// Composed model has right-half-plane poles.
struct UnstableCompositionError : Error {
    using Error::Error;
};

/// Uncertainty weight could not be fitted above the sampled envelope.
struct WeightFitError : Error {
    using Error::Error;
};

/// Delay-line read before the earliest buffered sample.
struct BufferUnderrunError : Error {
    using Error::Error;
};

/// Event schedule not sorted by time.
struct UnsortedScheduleError : Error {
    using Error::Error;
};

/// Simulation state left the finite range.
struct NumericalDivergenceError : Error {
    using Error::Error;
};

/// Requested output channel does not exist.
struct ChannelMissingError : Error {
    using Error::Error;
};

/// Tail of a response never settled; steady-state metrics undefined.
struct NoSteadyStateError : Error {
    using Error::Error;
};

/// Channel shows no post-event change; rise/settle metrics undefined.
struct NoResponseError : Error {
    using Error::Error;
};

/// Scenario config failed validation; carries every violation found.
struct ValidationError : Error {
    explicit ValidationError(std::vector<std::string> issues_)
        : Error(join(issues_)), issues(std::move(issues_)) {}
    std::vector<std::string> issues;

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "config validation failed:";
        for (const auto& i : v) s += "\n  - " + i;
        return s;
    }
};

}  // namespace hfc
