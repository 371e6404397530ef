#pragma once

#include <stdexcept>
#include <string>

namespace qrl {

/// The tilted washboard has lost its metastable well (flux pushed past washout).
class NoBarrierError : public std::runtime_error {
public:
    explicit NoBarrierError(const std::string& what) : std::runtime_error(what) {}
};

/// Fewer quasi-bound well states exist than the operation requires.
class TooFewLevelsError : public std::runtime_error {
public:
    explicit TooFewLevelsError(const std::string& what) : std::runtime_error(what) {}
};

/// The truncated eigensolve window contains too few grid nodes to be meaningful.
class DegenerateWindowError : public std::runtime_error {
public:
    explicit DegenerateWindowError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite pivot in a tridiagonal sweep; inputs were not finite.
class SolverBreakdownError : public std::runtime_error {
public:
    explicit SolverBreakdownError(const std::string& what) : std::runtime_error(what) {}
};

/// Bracket endpoints/midpoint do not show the interior-minimum pattern.
class NoInteriorMinimumError : public std::runtime_error {
public:
    explicit NoInteriorMinimumError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration rejection; carries the offending key and 1-based line number
/// (line 0 when the value came from a command-line override).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, int line, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

} // namespace qrl
