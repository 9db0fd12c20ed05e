#pragma once

#include <stdexcept>
#include <string>

namespace santalo {

// Precondition violations and non-recoverable numeric failures are exceptions.
// Recoverable outcomes (empty region, overflowing dual mass) are values.

struct UnboundedError : std::runtime_error {
    explicit UnboundedError(const std::string& m) : std::runtime_error(m) {}
};

struct CenterOutsideError : std::runtime_error {
    explicit CenterOutsideError(const std::string& m) : std::runtime_error(m) {}
};

struct NoConvergenceError : std::runtime_error {
    explicit NoConvergenceError(const std::string& m) : std::runtime_error(m) {}
};

struct AllInfiniteError : std::runtime_error {
    explicit AllInfiniteError(const std::string& m) : std::runtime_error(m) {}
};

struct ZeroAtOriginError : std::runtime_error {
    explicit ZeroAtOriginError(const std::string& m) : std::runtime_error(m) {}
};

struct NotIntegrableError : std::runtime_error {
    explicit NotIntegrableError(const std::string& m) : std::runtime_error(m) {}
};

struct EmptyLevelError : std::runtime_error {
    explicit EmptyLevelError(const std::string& m) : std::runtime_error(m) {}
};

struct LineMissesBodyError : std::runtime_error {
    explicit LineMissesBodyError(const std::string& m) : std::runtime_error(m) {}
};

struct UnsupportedDimensionError : std::runtime_error {
    explicit UnsupportedDimensionError(const std::string& m) : std::runtime_error(m) {}
};

struct InvalidPolygonError : std::runtime_error {
    explicit InvalidPolygonError(const std::string& m) : std::runtime_error(m) {}
};

struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace santalo
