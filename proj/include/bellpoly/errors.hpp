#pragma once

#include <stdexcept>
#include <string>

namespace bellpoly {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

/// A configured size limit (subset count, row count, 2^n) would be exceeded.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The inequality system does not describe a bounded polytope.
struct UnboundedPolyhedron : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vertex enumeration met a basic solution that is not a 0/1 point.
struct NonBinaryVertex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFullDimensional : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidMeasure : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace bellpoly
