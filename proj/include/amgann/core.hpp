#ifndef AMGANN_CORE_HPP
#define AMGANN_CORE_HPP

/// @file core.hpp
/// @brief Common scalar/index types and the error hierarchy shared by all modules.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace amgann {

using index_t = std::int64_t;
using real_t  = double;

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural problems: out-of-range indices, mismatched dimensions, bad shapes.
class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

/// A dense factorization hit a pivot below the singularity threshold.
class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};

/// An F-point could not be interpolated (no usable coarse neighbors).
class InterpolationError : public Error {
public:
    explicit InterpolationError(const std::string& msg) : Error(msg) {}
};

/// Input is degenerate for the requested operation (e.g. zero variance).
class DegenerateInputError : public Error {
public:
    explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

/// A scalar parameter lies outside its documented range.
class InvalidParameterError : public Error {
public:
    explicit InvalidParameterError(const std::string& msg) : Error(msg) {}
};

/// File I/O and format problems.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace amgann

#endif // AMGANN_CORE_HPP
