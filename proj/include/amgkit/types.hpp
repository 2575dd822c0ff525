#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace amgkit {

/// Global and local indices are 64-bit everywhere.
using index_t = std::int64_t;
using Vector = std::vector<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad triple at assembly time.
class AssemblyError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Coefficient update touched a position outside the stored pattern.
class PatternError : public Error {
public:
    using Error::Error;
};

/// Zero (or nonpositive, where positivity is required) diagonal entry.
class SingularDiagonalError : public Error {
public:
    using Error::Error;
};

/// Malformed Matrix Market input.
class FormatError : public Error {
public:
    using Error::Error;
};

class PartitionError : public Error {
public:
    using Error::Error;
};

class CoarseningError : public Error {
public:
    using Error::Error;
};

/// Krylov or factorization breakdown (nonpositive curvature or pivot).
class BreakdownError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace amgkit
