#pragma once

#include <stdexcept>
#include <string>

namespace navtime {

/// Caller misuse: bad arguments, violated preconditions, infeasible configs.
/// The CLI maps this to exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad or structurally unusable input data (parse failures, unreachable
/// targets, numerically singular systems). The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace navtime
