#pragma once

#include <stdexcept>
#include <string>

namespace warpgeo {

// Base class for everything thrown by the library. The CLI maps these to
// exit codes, so new error kinds should derive from one of the groups below.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- input / construction problems ---------------------------------------
struct InvalidArgument : Error {
    using Error::Error;
};
struct DimensionError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct KindMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct NotOrthonormal : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct AmbientNotWarped : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct AmbientMismatch : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct DomainError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};
struct IterateDomainError : DomainError {
    using DomainError::DomainError;
};
struct ParseError : InvalidArgument {
    int line = 1;
    int column = 1;
    ParseError(const std::string& msg, int line_, int col_)
        : InvalidArgument(msg + " (line " + std::to_string(line_) + ", column " +
                          std::to_string(col_) + ")"),
          line(line_),
          column(col_) {}
};
struct IOError : Error {
    using Error::Error;
};

// --- numerical / geometric failures --------------------------------------
struct NumericalError : Error {
    using Error::Error;
};
struct SingularMetric : NumericalError {
    using NumericalError::NumericalError;
};
struct OutOfChart : NumericalError {
    using NumericalError::NumericalError;
};
struct LeftChart : NumericalError {
    using NumericalError::NumericalError;
};
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct OutsideDeclaredInjRadius : NumericalError {
    using NumericalError::NumericalError;
};
struct DegeneratePlane : NumericalError {
    using NumericalError::NumericalError;
};
struct NonpositiveWarp : NumericalError {
    using NumericalError::NumericalError;
};
struct RankDeficient : NumericalError {
    using NumericalError::NumericalError;
};
struct SearchFailed : NumericalError {
    using NumericalError::NumericalError;
};
struct NotFound : NumericalError {
    using NumericalError::NumericalError;
};
struct ExtensionFailure : NumericalError {
    using NumericalError::NumericalError;
};
struct NotASubmersion : NumericalError {
    using NumericalError::NumericalError;
};
struct EmptyRegion : NumericalError {
    using NumericalError::NumericalError;
};
struct NoDivergentRays : NumericalError {
    using NumericalError::NumericalError;
};

// --- hypothesis failures (theorem verifiers) ------------------------------
struct HypothesisFailed : Error {
    std::string item;
    HypothesisFailed(const std::string& item_, const std::string& msg)
        : Error("hypothesis '" + item_ + "' failed: " + msg), item(item_) {}
};
struct DimensionHypothesisFailed : HypothesisFailed {
    using HypothesisFailed::HypothesisFailed;
};
struct ContainmentViolated : HypothesisFailed {
    using HypothesisFailed::HypothesisFailed;
};

}  // namespace warpgeo
