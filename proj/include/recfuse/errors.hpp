// Copyright (c) 2026 The recfuse authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace recfuse {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration / input file. CLI exit code 2.
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// A required checkpoint or artifact from an earlier stage is missing or
// incompatible. CLI exit code 3.
struct PrerequisiteError : Error {
    explicit PrerequisiteError(const std::string& what) : Error(what) {}
};

// Training produced non-finite values. CLI exit code 4.
struct DivergenceError : Error {
    explicit DivergenceError(const std::string& what) : Error(what) {}
};

}  // namespace recfuse
