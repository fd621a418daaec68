#pragma once

#include <stdexcept>
#include <string>

namespace symplab {

/// Failure categories, aligned with the CLI exit codes: configuration
/// problems exit 1, numerical failures exit 2, failed verification
/// checks exit 3.
enum class ErrorKind { config = 1, numerical = 2, check_failure = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::config, w) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

/// Metric coefficient matrix fails positive-definiteness at some node.
struct MetricNotSPD : NumericalError {
    explicit MetricNotSPD(const std::string& w) : NumericalError(w) {}
};

/// Poisson right-hand side has a nonzero (volume-weighted) mean.
struct IncompatibleRHS : NumericalError {
    explicit IncompatibleRHS(const std::string& w) : NumericalError(w) {}
};

/// An iterative solver hit its iteration cap before reaching tolerance.
struct NoConvergence : NumericalError {
    explicit NoConvergence(const std::string& w) : NumericalError(w) {}
};

/// A 1-form expected to be closed has a curl above tolerance.
struct NotClosed : NumericalError {
    explicit NotClosed(const std::string& w) : NumericalError(w) {}
};

/// Candidate harmonic basis has a (numerically) singular period matrix.
struct DegenerateBasis : NumericalError {
    explicit DegenerateBasis(const std::string& w) : NumericalError(w) {}
};

/// A vector field expected to be symplectic fails the closedness test.
struct NotSymplectic : NumericalError {
    explicit NotSymplectic(const std::string& w) : NumericalError(w) {}
};

/// A map's Jacobian determinant dropped below the safety floor, or a
/// map inversion failed to converge.
struct JacobianDegenerate : NumericalError {
    explicit JacobianDegenerate(const std::string& w) : NumericalError(w) {}
};

/// The path optimizer never produced an endpoint within tolerance.
struct NoFeasiblePath : NumericalError {
    explicit NoFeasiblePath(const std::string& w) : NumericalError(w) {}
};

/// A requested spatial frequency exceeds what the grid can resolve.
struct NyquistExceeded : NumericalError {
    explicit NyquistExceeded(const std::string& w) : NumericalError(w) {}
};

} // namespace symplab
