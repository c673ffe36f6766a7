#pragma once

#include <stdexcept>
#include <string>

namespace xcav {

/// Bad or inconsistent configuration input (CLI exit code 1).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical or validity-domain failure (CLI exit code 2).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem / serialization failure (CLI exit code 3).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace xcav
