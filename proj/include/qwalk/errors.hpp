#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for runtime numerical failures (exit code 3 in the CLI).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GaplessError : NumericalError {
    using NumericalError::NumericalError;
};

struct NoChiralAxisError : NumericalError {
    using NumericalError::NumericalError;
};

struct UnwrapFailureError : NumericalError {
    using NumericalError::NumericalError;
};

struct AdiabaticFailureError : NumericalError {
    double worst_k = 0.0;
    double fidelity = 0.0;
    AdiabaticFailureError(const std::string& msg, double k, double fid)
        : NumericalError(msg), worst_k(k), fidelity(fid) {}
};

struct PathCrossesBoundaryError : NumericalError {
    using NumericalError::NumericalError;
};

struct ZeroWeightError : NumericalError {
    double k = 0.0;
    ZeroWeightError(const std::string& msg, double k_) : NumericalError(msg), k(k_) {}
};

struct NonConvergenceError : NumericalError {
    double objective = 0.0;
    double floor = 0.0;
    NonConvergenceError(const std::string& msg, double obj, double flr)
        : NumericalError(msg), objective(obj), floor(flr) {}
};

}  // namespace qwalk
