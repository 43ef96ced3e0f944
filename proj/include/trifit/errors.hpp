#pragma once

#include <stdexcept>
#include <string>

namespace trifit {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Caller supplied angles that do not form a triangle shape.
struct ShapeInvalid : Error {
    using Error::Error;
};

// Caller supplied line angles violating the realizability inequalities.
struct ConfigInvalid : Error {
    using Error::Error;
};

// Config passed the strict inequalities but is numerically coplanar.
struct DegenerateConfig : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct DegenerateTriangle : Error {
    using Error::Error;
};

// Bad solver request parameters (scan_n, tolerances).
struct RequestInvalid : Error {
    using Error::Error;
};

// Root refinement failed on a detected sign change; carries the bracket.
struct NumericalFailure : Error {
    double theta_lo, theta_hi;
    NumericalFailure(const std::string& what, double lo, double hi)
        : Error(what), theta_lo(lo), theta_hi(hi) {}
};

// Zero-area triangle handed to the spherical bridge.
struct DegenerateSolution : Error {
    using Error::Error;
};

// No relabeling of the six intersection points yields the required cyclic
// order. Not expected for scenes derived from genuine solutions.
struct OrderUnachievable : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

// No orthogonal map matches the elliptic point classes.
struct AlignmentFailed : Error {
    using Error::Error;
};

// Malformed input file.
struct FileFormatError : Error {
    using Error::Error;
};

}  // namespace trifit
