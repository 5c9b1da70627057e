// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace corridor {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user-supplied parameters (config files, CLI values, specs).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Coincident points, zero distances and similar geometric degeneracies.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// More UAVs than BS-beam pairs, or no free beam left for a UAV.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Shape disagreement between tensors/tables that must line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Failure while reading a channel tensor file.
class LoadError : public Error {
public:
    enum class Kind { MissingFile, MalformedHeader, DimensionMismatch, NonFinite, Io };

    LoadError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace corridor
